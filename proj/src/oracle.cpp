#include "heunwell/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>

#include "heunwell/errors.hpp"
#include "heunwell/spectrum.hpp"

namespace heunwell {

namespace {

constexpr double kOverflow = 1e100;
constexpr double kDefaultEnergyTop = -1e-6;

class Workspace {
 public:
  Workspace(const PotentialParams& p, const ShootingConfig& cfg) : p_(p) {
    p.validate();
    if (p.variant != Variant::well) throw DomainError("the shooting oracle handles the well variant only");
    if (!(p.sigma > 0.0)) throw InvalidParameter("the shooting oracle expects sigma > 0 (image to the right of x0)");
    r0_ = cfg.x_min.value_or(1e-6 * p.sigma);
    const double r_end = cfg.x_max.value_or(40.0 * p.sigma);
    n_ = cfg.n;
    if (!(r0_ > 0.0) || !(r_end > r0_)) throw InvalidParameter("shooting grid needs 0 < x_min < x_max");
    if (n_ < 16) throw InvalidParameter("shooting grid needs at least 16 points");
    h_ = (r_end - r0_) / static_cast<double>(n_ - 1);
    k_ = 2.0 * p.m / (p.hbar * p.hbar);

    std::vector<double> xs(n_);
    for (std::size_t i = 0; i < n_; ++i) xs[i] = p.x0 + r(i);
    const auto points = locate_sorted(xs, p);
    V_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) V_[i] = p.V0 + p.V1 / points[i].z;

    // Small-r structure: V ~ C r^{-1/2} + Vc with z^2 ~ 2a r / (sigma (a - 1)).
    const double A = (p.a - 1.0) / (2.0 * p.a);
    C_ = p.V1 * std::sqrt(p.sigma * A);
    Vc_ = p.V0 + p.V1 * (p.a + 1.0) / (3.0 * p.a);
  }

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] double r(std::size_t i) const { return r0_ + static_cast<double>(i) * h_; }
  [[nodiscard]] double step() const { return h_; }
  [[nodiscard]] const std::vector<double>& potential() const { return V_; }

  // Regular solution psi = r + c r^{5/2} + d r^3.
  [[nodiscard]] double seed(double rr, double E) const {
    const double c = 4.0 * k_ * C_ / 15.0;
    const double d = k_ * (Vc_ - E) / 6.0;
    return rr + c * rr * rr * std::sqrt(rr) + d * rr * rr * rr;
  }

  [[nodiscard]] double f(std::size_t i, double E) const { return k_ * (V_[i] - E); }

  // Last index on the classically allowed side (V < E), clamped to the interior.
  [[nodiscard]] std::size_t match_index(double E) const {
    const auto it = std::lower_bound(V_.begin(), V_.end(), E);
    std::size_t m = static_cast<std::size_t>(it - V_.begin());
    m = m == 0 ? 0 : m - 1;
    return std::clamp<std::size_t>(m, 2, n_ - 4);
  }

  // Outward Numerov over [0, last]; psi must have size n.
  void outward(double E, std::size_t last, std::vector<double>& psi, std::size_t& renorm) const {
    const double w = h_ * h_ / 12.0;
    psi[0] = seed(r(0), E);
    psi[1] = seed(r(1), E);
    double f_prev = f(0, E), f_cur = f(1, E);
    for (std::size_t i = 1; i < last; ++i) {
      const double f_next = f(i + 1, E);
      psi[i + 1] = (2.0 * (1.0 + 5.0 * w * f_cur) * psi[i] - (1.0 - w * f_prev) * psi[i - 1]) / (1.0 - w * f_next);
      if (std::abs(psi[i + 1]) > kOverflow) {
        for (std::size_t j = 0; j <= i + 1; ++j) psi[j] /= kOverflow;
        ++renorm;
      }
      f_prev = f_cur;
      f_cur = f_next;
    }
  }

  // Inward Numerov over [first, n-1] from a decaying tail; psi must have size n.
  void inward(double E, std::size_t first, std::vector<double>& psi, std::size_t& renorm) const {
    const double w = h_ * h_ / 12.0;
    const std::size_t top = n_ - 1;
    const double f_tail = f(top, E);
    psi[top] = 1e-300 * kOverflow;
    psi[top - 1] = psi[top] * (f_tail > 0.0 ? std::exp(std::sqrt(f_tail) * h_) : 1.0);
    double f_prev = f(top, E), f_cur = f(top - 1, E);
    for (std::size_t i = top - 1; i > first; --i) {
      const double f_next = f(i - 1, E);
      psi[i - 1] = (2.0 * (1.0 + 5.0 * w * f_cur) * psi[i] - (1.0 - w * f_prev) * psi[i + 1]) / (1.0 - w * f_next);
      if (std::abs(psi[i - 1]) > kOverflow) {
        for (std::size_t j = i - 1; j <= top; ++j) psi[j] /= kOverflow;
        ++renorm;
      }
      f_prev = f_cur;
      f_cur = f_next;
    }
  }

  [[nodiscard]] double mismatch(double E, std::vector<double>& out, std::vector<double>& in) const {
    std::size_t renorm = 0;
    const std::size_t m = match_index(E);
    outward(E, m + 1, out, renorm);
    inward(E, m, in, renorm);
    const double w = h_ * h_ / 12.0;
    // Numerov conserves the Casoratian of Y = (1 - h^2 f/12) psi exactly.
    const double yo0 = (1.0 - w * f(m, E)) * out[m];
    const double yo1 = (1.0 - w * f(m + 1, E)) * out[m + 1];
    const double yi0 = (1.0 - w * f(m, E)) * in[m];
    const double yi1 = (1.0 - w * f(m + 1, E)) * in[m + 1];
    const double norm = std::hypot(yo0, yo1) * std::hypot(yi0, yi1);
    return (yo0 * yi1 - yo1 * yi0) / norm;
  }

  [[nodiscard]] std::vector<double> eigenfunction(double E) const {
    std::vector<double> out(n_), in(n_);
    std::size_t renorm = 0;
    const std::size_t m = match_index(E);
    outward(E, m + 1, out, renorm);
    inward(E, m, in, renorm);
    const std::size_t j = std::abs(in[m]) >= std::abs(in[m + 1]) ? m : m + 1;
    const double scale = out[j] / in[j];
    std::vector<double> psi(n_);
    for (std::size_t i = 0; i <= m; ++i) psi[i] = out[i];
    for (std::size_t i = m + 1; i < n_; ++i) psi[i] = scale * in[i];
    double peak = 0.0;
    for (double v : psi) peak = std::max(peak, std::abs(v));
    // Regular solution starts with positive slope; keep that orientation.
    const double sign = psi[1] >= 0.0 ? 1.0 : -1.0;
    for (double& v : psi) v *= sign / peak;
    return psi;
  }

 private:
  PotentialParams p_;
  double r0_ = 0.0;
  double h_ = 0.0;
  double k_ = 0.0;
  std::size_t n_ = 0;
  std::vector<double> V_;
  double C_ = 0.0;
  double Vc_ = 0.0;
};

}  // namespace

GridFunction numerov_integrate(double E, const PotentialParams& p, const ShootingConfig& cfg,
                               std::size_t* renormalizations) {
  const Workspace ws(p, cfg);
  std::vector<double> psi(ws.size());
  std::size_t renorm = 0;
  ws.outward(E, ws.size() - 1, psi, renorm);
  if (renormalizations) *renormalizations = renorm;
  return {p.x0 + ws.r(0), ws.step(), std::move(psi)};
}

double shooting_mismatch(double E, const PotentialParams& p, const ShootingConfig& cfg) {
  const Workspace ws(p, cfg);
  std::vector<double> out(ws.size()), in(ws.size());
  return ws.mismatch(E, out, in);
}

ShootingResult shooting_eigenvalues(const PotentialParams& p, const ShootingConfig& cfg) {
  const Workspace ws(p, cfg);
  ShootingResult result;
  if (p.V1 >= 0.0 && p.V0 + p.V1 >= 0.0) return result;
  const double E_lo = cfg.E_lo.value_or(default_energy_floor(p));
  const double E_hi = cfg.E_hi.value_or(kDefaultEnergyTop);
  if (!(E_lo < E_hi) || !(E_hi < 0.0)) throw InvalidParameter("shooting window needs E_lo < E_hi < 0");
  if (cfg.n_scan < 2) throw InvalidParameter("n_scan must be at least 2");

  std::vector<double> out(ws.size()), in(ws.size());
  auto M = [&](double E) { return ws.mismatch(E, out, in); };

  const double k_lo = std::sqrt(-E_lo);
  const double k_hi = std::sqrt(-E_hi);
  std::vector<double> energies(cfg.n_scan + 1), values(cfg.n_scan + 1);
  for (std::size_t i = 0; i <= cfg.n_scan; ++i) {
    const double kappa = k_lo + (k_hi - k_lo) * static_cast<double>(i) / static_cast<double>(cfg.n_scan);
    energies[i] = -kappa * kappa;
    values[i] = M(energies[i]);
  }
  auto close_enough = [&](double lo, double hi) { return std::abs(hi - lo) <= cfg.tol; };
  for (std::size_t i = 0; i < cfg.n_scan; ++i) {
    if (values[i] == 0.0) {
      result.energies.push_back(energies[i]);
      continue;
    }
    if ((values[i] > 0.0) == (values[i + 1] > 0.0) || values[i + 1] == 0.0) continue;
    std::uintmax_t iterations = 200;
    const auto [lo, hi] =
        boost::math::tools::toms748_solve(M, energies[i], energies[i + 1], values[i], values[i + 1], close_enough, iterations);
    result.energies.push_back(0.5 * (lo + hi));
  }
  std::sort(result.energies.begin(), result.energies.end());

  for (std::size_t level = 0; level < result.energies.size(); ++level) {
    const int nodes = count_sign_changes(ws.eigenfunction(result.energies[level]));
    result.node_counts.push_back(nodes);
    if (nodes != static_cast<int>(level)) {
      result.warnings.push_back("eigenfunction " + std::to_string(level) + " has " + std::to_string(nodes) +
                                " nodes; a level may have been missed between scan points");
    }
  }
  // Count renormalizations along the deepest-energy integration as a diagnostic.
  std::size_t renorm = 0;
  ws.outward(E_lo, ws.size() - 1, out, renorm);
  result.renormalizations = renorm;
  return result;
}

GridFunction reference_wavefunction(double E, const PotentialParams& p, const ShootingConfig& cfg) {
  const Workspace ws(p, cfg);
  return {p.x0 + ws.r(0), ws.step(), ws.eigenfunction(E)};
}

int count_sign_changes(const std::vector<double>& values, double threshold) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  const double floor = threshold * peak;
  int changes = 0;
  int last = 0;
  for (double v : values) {
    if (std::abs(v) <= floor) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace heunwell
