#pragma once

// Reduction of the Schroedinger equation with V = V0 + V1/z + ... + V4/z^4 to
// the general Heun equation with singularities (a, 1, 0).
//
// Two length scales appear. The physical sigma of PotentialParams is the one
// in x(z) = x0 + sigma (a ln(z - a) - ln(z - 1)); the Heun frame uses
// sigma_h = sigma (a - 1), for which (x - x0)(a - 1)/sigma_h has the same
// logarithmic form. The conversion happens once, in heun_frame_scale().

#include <complex>
#include <utility>

#include "heunwell/potential.hpp"

namespace heunwell {

using cplx = std::complex<double>;

/// +1 or -1 for each exponent (default: principal roots).
struct ExponentSigns {
  int s0 = 1;
  int s1 = 1;
  int s2 = 1;
};

struct Exponents {
  cplx alpha0;
  cplx alpha1;
  cplx alpha2;
};

struct HeunData {
  double a1 = 0.0;  // = a
  double a2 = 1.0;
  double a3 = 0.0;
  int m1 = 1;
  int m2 = 1;
  int m3 = -1;
  cplx alpha0, alpha1, alpha2, alpha3;
  cplx alpha, beta, gamma, delta, epsilon;
  cplx q;
  double E = 0.0;
};

struct GeneralPotentialCoeffs {
  double V0 = 0.0;
  double V1 = 0.0;
  double V2 = 0.0;
  double V3 = 0.0;
  double V4 = 0.0;
};

/// Squares of alpha1, alpha2 and both roots of alpha3 (alpha3 - 2) = k V4 / a^2.
struct ExponentEquations {
  cplx alpha1_sq;
  cplx alpha2_sq;
  std::pair<cplx, cplx> alpha3_roots;  // (1 - sqrt(1 + kV4/a^2), 1 + sqrt(...))
};

/// 2 m sigma_h^2 / hbar^2 with sigma_h = sigma (a - 1).
double heun_frame_scale(const PotentialParams& p);

/// Principal complex roots
///   alpha0 = sqrt(2 m sigma^2 (a-1)^2 (V0 - E)) / hbar
///   alpha1 = sqrt(2 m sigma^2 a^2 (V0 - E + V1/a)) / hbar
///   alpha2 = sqrt(2 m sigma^2 (V0 - E + V1)) / hbar
/// multiplied by the requested signs.
Exponents exponents(double E, const PotentialParams& p, ExponentSigns signs = {});

/// Heun parameters of the exactly solvable family (V2 = V3 = V4 = 0): alpha3 = 0,
/// epsilon = -1, q from the accessory-parameter formula.
HeunData heun_params(double E, const PotentialParams& p, ExponentSigns signs = {});

ExponentEquations exponent_equations_general(double E, const GeneralPotentialCoeffs& c,
                                              const PotentialParams& p);

/// Heun parameters for the five-coefficient potential. alpha3 takes the root
/// that vanishes with V4; alpha0 is fixed by the product relation for alpha*beta.
HeunData heun_params_general(double E, const GeneralPotentialCoeffs& c, const PotentialParams& p,
                             ExponentSigns signs = {});

/// |q^2 + q(gamma - 1 + a(delta - 1)) + a alpha beta| for epsilon = -1, or
/// |q - a alpha beta| for epsilon = 0. Throws DomainError for other epsilon.
double termination_check(const HeunData& h);

/// V2 + V3 ((1 + a)/a - k V3 / a^2) with k the Heun-frame scale. Vanishes on
/// the conditionally integrable surface (and identically for V2 = V3 = 0).
double conditional_family_check(const GeneralPotentialCoeffs& c, const PotentialParams& p);

}  // namespace heunwell
