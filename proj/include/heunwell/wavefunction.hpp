#pragma once

// Closed-form solutions of  psi'' + (2m/hbar^2)(E - V(x)) psi = 0.
//
// With w = (a - z)/(a - 1) and its complement 1 - w = (z - 1)/(a - 1):
//
//   fundamental:  psi = P [F(al, be; ga; w) + 2 al1/(a al2 - al1) F(al, be; ga - 1; w)]
//   general:      psi = P [F + (z - a)/(al1 + a al2) dF/dz],
//                 F = c1 F(al, be; ga; w) + c2 F(al, be; 1 + al + be - ga; 1 - w)
//
// where P = |z - a|^al1 |z - 1|^al2. The moduli drop constant phases, which
// only rescale the solution.

#include <functional>
#include <optional>
#include <vector>

#include "heunwell/heun.hpp"
#include "heunwell/potential.hpp"

namespace heunwell {

struct WaveSolution {
  PotentialParams params;
  double E = 0.0;
  ExponentSigns signs;
  cplx c1 = 0.0;
  cplx c2 = 1.0;
};

/// Value and x-derivative.
struct PsiValue {
  cplx psi;
  cplx dpsi_dx;
};

/// Fundamental two-term solution at a branch point. Throws
/// DegenerateParameters when a al2 - al1 vanishes (relative 1e-12).
cplx psi_fundamental(const BranchPoint& pt, double E, const PotentialParams& p, ExponentSigns signs = {});
cplx psi_fundamental(double z, double E, const PotentialParams& p, ExponentSigns signs = {});
PsiValue psi_fundamental_with_derivative(const BranchPoint& pt, double E, const PotentialParams& p,
                                         ExponentSigns signs = {});

/// General solution at x. Throws DegenerateParameters when al1 + a al2
/// vanishes or when the second-kind lower parameter 2 al2 is a non-positive
/// integer with c2 != 0 (the zero-energy case of a vanishing-tail well).
cplx psi_general(double x, const WaveSolution& ws);
cplx psi_general(const BranchPoint& pt, const WaveSolution& ws);
PsiValue psi_general_with_derivative(const BranchPoint& pt, const WaveSolution& ws);

/// Zero-energy solution of the well with V0 + V1 = 0 and a < 0, built from
/// two Clausen 3F2 terms; c2 is fixed so that psi vanishes at x0.
class ZeroEnergySolution {
 public:
  ZeroEnergySolution(const PotentialParams& p, cplx c1 = 1.0);

  [[nodiscard]] cplx operator()(double x) const;
  [[nodiscard]] cplx at(const BranchPoint& pt) const;
  [[nodiscard]] cplx alpha1() const { return alpha1_; }
  [[nodiscard]] cplx c1() const { return c1_; }
  [[nodiscard]] cplx c2() const { return c2_; }
  [[nodiscard]] const PotentialParams& params() const { return p_; }

  /// First and second term separately (without the c1, c2 weights).
  [[nodiscard]] std::pair<cplx, cplx> terms(const BranchPoint& pt) const;

 private:
  PotentialParams p_;
  cplx alpha1_;
  double r_;
  cplx c1_;
  cplx c2_;
};

cplx psi_zero_energy(double x, const PotentialParams& p, cplx c1 = 1.0);

/// Least-squares fit Re psi ~ A + B ln(1 - z) on n points of [x_lo, x_hi].
struct LogTailFit {
  double A;
  double B;
  /// max |psi - fit| / max |psi| over the fit points.
  double residual;
};
LogTailFit fit_log_tail(const ZeroEnergySolution& sol, double x_lo, double x_hi, std::size_t n = 400);

struct GridDomain {
  double x_start;
  double x_step;
  std::size_t n;
};

/// max_i |d2psi_i/h^2 + k(E - V_i) psi_i| / max_i |d2psi_i/h^2| over interior
/// nodes, with d2 the central second difference and k = 2m/hbar^2.
double ode_residual(const std::function<cplx(double)>& psi, double E, const PotentialParams& p,
                    const GridDomain& grid);
double ode_residual(const WaveSolution& ws, const GridDomain& grid);

/// psi_1 psi_2' - psi_1' psi_2 at x (derivatives through dz/dx).
cplx wronskian(const WaveSolution& first, const WaveSolution& second, double x);

}  // namespace heunwell
