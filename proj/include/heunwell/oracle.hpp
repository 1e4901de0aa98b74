#pragma once

// Independent finite-difference reference: Numerov integration of
// psi'' = (2m/hbar^2)(V - E) psi on a uniform grid in r = x - x0, with
// two-sided shooting for the bound states of the well variant.

#include <optional>
#include <string>
#include <vector>

#include "heunwell/grid.hpp"
#include "heunwell/potential.hpp"

namespace heunwell {

struct ShootingConfig {
  /// Standoff from x0 and tail cutoff, measured in r = x - x0.
  /// Defaults: 1e-6 sigma and 40 sigma.
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::size_t n = 200001;
  /// Energy search window; defaults to (default_energy_floor, -1e-6).
  std::optional<double> E_lo;
  std::optional<double> E_hi;
  /// Scan cells, uniform in sqrt(-E).
  std::size_t n_scan = 600;
  /// Bracket width at which refinement stops.
  double tol = 1e-11;
};

struct ShootingResult {
  std::vector<double> energies;
  std::vector<int> node_counts;
  std::size_t renormalizations = 0;
  std::vector<std::string> warnings;
};

/// Outward Numerov solution from x0 + x_min with the regular small-r seed
/// psi ~ r + c r^{5/2} + d r^3. Values are rescaled (and the event counted)
/// whenever they exceed 1e100.
GridFunction numerov_integrate(double E, const PotentialParams& p, const ShootingConfig& cfg = {},
                               std::size_t* renormalizations = nullptr);

/// Normalized Casoratian of the outward and inward solutions at the turning
/// point; changes sign exactly at the discrete eigenvalues.
double shooting_mismatch(double E, const PotentialParams& p, const ShootingConfig& cfg = {});

ShootingResult shooting_eigenvalues(const PotentialParams& p, const ShootingConfig& cfg = {});

/// Matched eigenfunction at E, positive near x0, scaled to max |psi| = 1.
GridFunction reference_wavefunction(double E, const PotentialParams& p, const ShootingConfig& cfg = {});

/// Sign changes of a sampled function, ignoring samples below
/// threshold * max |values|.
int count_sign_changes(const std::vector<double>& values, double threshold = 1e-7);

}  // namespace heunwell
