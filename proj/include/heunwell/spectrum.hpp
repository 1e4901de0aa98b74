#pragma once

// Bound states of the singular well with a vanishing tail (V0 + V1 = 0):
// the exact spectrum equation, the zero-energy node count and three analytic
// estimates of the number of bound states.

#include <optional>
#include <string>
#include <vector>

#include "heunwell/grid.hpp"
#include "heunwell/heun.hpp"
#include "heunwell/potential.hpp"

namespace heunwell {

/// Pieces of the spectrum function with plus-sign exponents:
///   S(E) = 1 + coef F1 / F0,
///   F0 = F(al, be; 2 al2; 1/(1 - a)),  F1 = F(al + 1, be + 1; 1 + 2 al2; 1/(1 - a)),
///   coef = (al1 + a al2) / (2 (1 - a) al2).
struct SpectrumTerms {
  cplx F0;
  cplx F1;
  cplx coef;
};

SpectrumTerms spectrum_terms(double E, const PotentialParams& p);

/// S(E); throws PoleError where F0 vanishes. Requires the well variant,
/// V0 + V1 = 0 and E < 0.
double spectrum_function(double E, const PotentialParams& p);

/// F0 S(E) = F0 + coef F1: pole-free, proportional to psi(x0) of the solution
/// that decays at infinity. Its zeros are the bound-state energies.
double spectrum_boundary(double E, const PotentialParams& p);

/// 1.5 times the minimum of the potential sampled at x0 + i L/N (i = 1..N,
/// L = 40 |sigma|, N = 2000), signed along the image.
double default_energy_floor(const PotentialParams& p);

struct BoundStateSearch {
  std::vector<double> energies;  // increasing
  std::size_t poles_crossed = 0;
  std::vector<std::string> warnings;
};

/// Sign-change scan of spectrum_boundary on n_scan cells uniform in
/// sqrt(-E) over (E_min, -1e-9), then bracketed refinement to 1e-10.
BoundStateSearch find_bound_states(const PotentialParams& p, std::optional<double> E_min = std::nullopt,
                                   std::size_t n_scan = 2000);

struct NodeCount {
  int count = 0;
  std::vector<double> zeros;  // interpolated x positions
  std::vector<std::string> warnings;
};

/// Sign changes of the zero-energy solution on n points of (x0, x0 + x_max]
/// along the image (default x_max = 40 |sigma|), plus one zero beyond x_max
/// when the logarithmic tail fitted on the outer half still has to cross.
/// Requires a < 0.
NodeCount count_nodes_zero_energy(const PotentialParams& p, std::optional<double> x_max = std::nullopt,
                                  std::size_t n = 4000);

/// (1 - a)(Li2(1/(1 - a)) + 2a arccoth(1 - 2a)^2) 2 m sigma^2 V0 / hbar^2,
/// the closed form of the integral of r |V| over the half-line in units
/// where r = x sqrt(2m)/hbar. The square applies to the arccoth value.
double bargmann_bound(const PotentialParams& p);

struct CalogeroBounds {
  double calogero;  // I_C
  double chadan;    // I_C / 2
};

/// I_C = (1 + (sqrt(1 - a) - sqrt(-a))^2) sqrt(2 m sigma^2 V0) / hbar for
/// a < 0; for a > 1 the real continuation 1 - (sqrt(a) - sqrt(a - 1))^2 of
/// the same coefficient. Throws DomainError for a in [0, 1] or V0 < 0.
CalogeroBounds calogero_chadan_bounds(const PotentialParams& p);

/// sqrt(2 m sigma^2 V0) / hbar, the a -> 0 limit of the Chadan estimate's cap.
double small_a_cap(const PotentialParams& p);

/// n_c(a) for n values of a uniform on [a_start, a_end]; every sample must
/// avoid [0, 1].
GridFunction chadan_curve(const PotentialParams& p, double a_start, double a_end, std::size_t n);

struct SpectrumResult {
  std::vector<double> energies;
  std::optional<int> node_count;  // empty for a > 1
  double bargmann = 0.0;
  double calogero = 0.0;
  double chadan = 0.0;
  double small_a_cap = 0.0;
  std::vector<std::string> warnings;
};

struct AnalyzeOptions {
  std::optional<double> E_min;
  std::size_t n_scan = 2000;
  std::optional<double> x_max;
  std::size_t n_nodes = 4000;
};

SpectrumResult analyze(const PotentialParams& p, const AnalyzeOptions& options = {});

}  // namespace heunwell
