#include "heunwell/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "heunwell/errors.hpp"
#include "heunwell/parallel.hpp"
#include "heunwell/specfun.hpp"
#include "heunwell/wavefunction.hpp"

namespace heunwell {

namespace {

constexpr double kScanTop = -1e-9;
constexpr double kEnergyTol = 1e-10;

void require_bound_state_setting(const PotentialParams& p) {
  p.validate();
  if (p.variant != Variant::well) throw DomainError("bound states are computed for the well variant only");
  if (std::abs(p.V0 + p.V1) > 1e-12 * std::max({1.0, std::abs(p.V0), std::abs(p.V1)})) {
    throw DomainError("bound-state analysis requires a vanishing tail, V0 + V1 = 0");
  }
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

SpectrumTerms spectrum_terms(double E, const PotentialParams& p) {
  require_bound_state_setting(p);
  if (!(E < 0.0)) throw DomainError("spectrum function needs E < 0 (got E = " + format_number(E) + ")");
  const HeunData h = heun_params(E, p);
  const double arg = 1.0 / (1.0 - p.a);
  const cplx F0 = specfun::gauss_2f1({h.alpha, h.beta, 2.0 * h.alpha2, arg});
  const cplx F1 = specfun::gauss_2f1({h.alpha + 1.0, h.beta + 1.0, 1.0 + 2.0 * h.alpha2, arg});
  const cplx coef = (h.alpha1 + p.a * h.alpha2) / (2.0 * (1.0 - p.a) * h.alpha2);
  return {F0, F1, coef};
}

double spectrum_function(double E, const PotentialParams& p) {
  const SpectrumTerms t = spectrum_terms(E, p);
  if (t.F0 == 0.0) throw PoleError("spectrum function has a pole at E = " + format_number(E));
  return (1.0 + t.coef * t.F1 / t.F0).real();
}

double spectrum_boundary(double E, const PotentialParams& p) {
  const SpectrumTerms t = spectrum_terms(E, p);
  return (t.F0 + t.coef * t.F1).real();
}

double default_energy_floor(const PotentialParams& p) {
  constexpr int kSamples = 2000;
  const double length = 40.0 * std::abs(p.sigma);
  const double dir = p.sigma > 0.0 ? 1.0 : -1.0;
  std::vector<double> xs(kSamples);
  for (int i = 0; i < kSamples; ++i) xs[static_cast<std::size_t>(i)] = p.x0 + dir * length * (i + 1) / kSamples;
  const auto points = locate_sorted(xs, p);
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& pt : points) lowest = std::min(lowest, p.V0 + p.V1 / pt.z);
  return 1.5 * lowest;
}

BoundStateSearch find_bound_states(const PotentialParams& p, std::optional<double> E_min, std::size_t n_scan) {
  require_bound_state_setting(p);
  if (n_scan < 2) throw InvalidParameter("n_scan must be at least 2");
  BoundStateSearch result;
  if (p.V1 >= 0.0) return result;  // V = V1 (1/z - 1) >= 0: nothing binds
  const double floor = E_min.value_or(default_energy_floor(p));
  if (!(floor < kScanTop)) return result;

  // Uniform in kappa = sqrt(-E): bound-state energies crowd towards E = 0.
  const double k_lo = std::sqrt(-floor);
  const double k_hi = std::sqrt(-kScanTop);
  std::vector<double> energies(n_scan + 1);
  for (std::size_t i = 0; i <= n_scan; ++i) {
    const double kappa = k_lo + (k_hi - k_lo) * static_cast<double>(i) / static_cast<double>(n_scan);
    energies[i] = -kappa * kappa;
  }
  energies.back() = kScanTop;
  std::vector<double> boundary(n_scan + 1), denominator(n_scan + 1);
  parallel_for(n_scan + 1, [&](std::size_t i) {
    const SpectrumTerms t = spectrum_terms(energies[i], p);
    boundary[i] = (t.F0 + t.coef * t.F1).real();
    denominator[i] = t.F0.real();
  });

  auto f = [&](double E) { return spectrum_boundary(E, p); };
  auto close_enough = [](double lo, double hi) { return std::abs(hi - lo) <= 0.5 * kEnergyTol; };
  for (std::size_t i = 0; i < n_scan; ++i) {
    const bool pole = sign_of(denominator[i]) * sign_of(denominator[i + 1]) < 0;
    if (pole) ++result.poles_crossed;
    const int s0 = sign_of(boundary[i]);
    const int s1 = sign_of(boundary[i + 1]);
    if (s0 == 0) {
      result.energies.push_back(energies[i]);
      continue;
    }
    if (s0 * s1 >= 0) continue;
    if (pole) {
      result.warnings.push_back("root and pole share the scan cell [" + format_number(energies[i]) + ", " +
                                format_number(energies[i + 1]) + "]; consider a finer scan");
    }
    std::uintmax_t iterations = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, energies[i], energies[i + 1], boundary[i],
                                                           boundary[i + 1], close_enough, iterations);
    result.energies.push_back(0.5 * (lo + hi));
  }
  if (sign_of(boundary[n_scan]) == 0) result.energies.push_back(energies[n_scan]);
  std::sort(result.energies.begin(), result.energies.end());
  return result;
}

NodeCount count_nodes_zero_energy(const PotentialParams& p, std::optional<double> x_max, std::size_t n) {
  const ZeroEnergySolution sol(p);
  const double reach = x_max.value_or(40.0 * std::abs(p.sigma));
  if (!(reach > 0.0)) throw InvalidParameter("x_max must be positive");
  if (n < 2) throw InvalidParameter("node grid needs at least 2 points");
  const double dir = p.sigma > 0.0 ? 1.0 : -1.0;
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = p.x0 + dir * reach * static_cast<double>(i + 1) / static_cast<double>(n);
  const auto points = locate_sorted(xs, p);
  std::vector<double> values(n);
  parallel_for(n, [&](std::size_t i) { values[i] = sol.at(points[i]).real(); });

  NodeCount out;
  std::size_t last = n;  // index of last nonzero sample
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] == 0.0) continue;
    if (last < n && sign_of(values[last]) != sign_of(values[i])) {
      const double t = values[last] / (values[last] - values[i]);
      out.zeros.push_back(xs[last] + t * (xs[i] - xs[last]));
    }
    last = i;
  }
  // Past the window psi follows A + B ln(1 - z), which crosses zero at most
  // once more; a near-threshold level pushes that crossing far out.
  const LogTailFit fit = fit_log_tail(sol, p.x0 + 0.5 * dir * reach, p.x0 + dir * reach);
  const double log_end = std::log(points.back().one_minus_z);
  if (fit.residual > 1e-2) {
    out.warnings.push_back("tail is not yet logarithmic at x_max; the count may miss distant zeros");
  } else if (fit.B != 0.0 && -fit.A / fit.B < log_end && sign_of(values[last < n ? last : n - 1]) != sign_of(-fit.B)) {
    const double L = -fit.A / fit.B;
    const double z = -std::expm1(L);
    out.zeros.push_back(p.x0 + p.sigma * (p.a * std::log1p(-z / p.a) - L));
    out.warnings.push_back("last zero lies beyond x_max; placed from the logarithmic tail fit");
  }
  out.count = static_cast<int>(out.zeros.size());
  if (!out.zeros.empty() && std::abs(out.zeros.back() - p.x0) > 0.9 * reach &&
      std::abs(out.zeros.back() - p.x0) <= reach) {
    out.warnings.push_back("last zero lies within 10% of x_max; extend x_max to resolve the tail");
  }
  return out;
}

double bargmann_bound(const PotentialParams& p) {
  p.validate();
  if (p.variant != Variant::well) throw DomainError("the Bargmann estimate is defined for the well variant");
  const double a = p.a;
  const double k = 2.0 * p.m * p.sigma * p.sigma / (p.hbar * p.hbar);
  const double ac = specfun::arccoth(1.0 - 2.0 * a);
  return (1.0 - a) * (specfun::dilog(1.0 / (1.0 - a)) + 2.0 * a * ac * ac) * k * p.V0;
}

namespace {

double calogero_coefficient(double a) {
  if (a < 0.0) {
    const double d = std::sqrt(1.0 - a) - std::sqrt(-a);
    return 1.0 + d * d;
  }
  if (a > 1.0) {
    // sqrt(1 - a) = i sqrt(a - 1), sqrt(-a) = i sqrt(a)
    const double d = std::sqrt(a) - std::sqrt(a - 1.0);
    return 1.0 - d * d;
  }
  throw DomainError("the Calogero coefficient is real only for a < 0 or a > 1 (got a = " + format_number(a) + ")");
}

}  // namespace

double small_a_cap(const PotentialParams& p) {
  const double radicand = 2.0 * p.m * p.sigma * p.sigma * p.V0 / (p.hbar * p.hbar);
  if (radicand < 0.0) throw DomainError("the Calogero estimate needs V0 >= 0");
  return std::sqrt(radicand);
}

CalogeroBounds calogero_chadan_bounds(const PotentialParams& p) {
  const double ic = calogero_coefficient(p.a) * small_a_cap(p);
  return {ic, 0.5 * ic};
}

GridFunction chadan_curve(const PotentialParams& p, double a_start, double a_end, std::size_t n) {
  if (n < 2) throw InvalidParameter("chadan curve needs at least 2 samples");
  if (!(a_end > a_start)) throw InvalidParameter("a_end must exceed a_start");
  GridFunction grid{a_start, (a_end - a_start) / static_cast<double>(n - 1), {}};
  const double cap = small_a_cap(p);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i + 1 == n ? a_end : grid.x(i);
    grid.values.push_back(0.5 * calogero_coefficient(a) * cap);
  }
  return grid;
}

SpectrumResult analyze(const PotentialParams& p, const AnalyzeOptions& options) {
  require_bound_state_setting(p);
  SpectrumResult r;
  BoundStateSearch search = find_bound_states(p, options.E_min, options.n_scan);
  r.energies = std::move(search.energies);
  r.warnings = std::move(search.warnings);
  if (p.a < 0.0 && p.V0 > 0.0) {
    NodeCount nodes = count_nodes_zero_energy(p, options.x_max, options.n_nodes);
    r.node_count = nodes.count;
    r.warnings.insert(r.warnings.end(), nodes.warnings.begin(), nodes.warnings.end());
    if (nodes.count != static_cast<int>(r.energies.size())) {
      r.warnings.push_back("spectrum roots (" + std::to_string(r.energies.size()) +
                           ") differ from zero-energy nodes (" + std::to_string(nodes.count) + ")");
    }
  } else if (p.a < 0.0) {
    r.node_count = 0;
  }
  r.bargmann = bargmann_bound(p);
  if (p.V0 >= 0.0) {
    const CalogeroBounds cb = calogero_chadan_bounds(p);
    r.calogero = cb.calogero;
    r.chadan = cb.chadan;
    r.small_a_cap = small_a_cap(p);
  }
  return r;
}

}  // namespace heunwell
