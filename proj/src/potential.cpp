#include "heunwell/potential.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "heunwell/errors.hpp"

namespace heunwell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOriginGuard = 1e-10;

// Internal chart coordinate u, chosen per branch so that 1 - z (the delicate
// quantity) is an elementary function of u without cancellation:
//   well:              z = 1 - exp(-u),           u in (0, inf)
//   barrier, a < 1:    z = 1 + exp(u),            u real
//   barrier, a > 1:    z = 1 + (a - 1) logistic(u), u real
enum class Chart { well, barrier_open, barrier_closed };

Chart chart_of(const PotentialParams& p) {
  if (p.variant == Variant::well) return Chart::well;
  return p.a < 1.0 ? Chart::barrier_open : Chart::barrier_closed;
}

double softplus(double u) { return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); }

double logistic(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

BranchPoint point_of_u(double u, const PotentialParams& p) {
  switch (chart_of(p)) {
    case Chart::well:
      return {-std::expm1(-u), std::exp(-u)};
    case Chart::barrier_open: {
      const double e = std::exp(u);
      return {1.0 + e, -e};
    }
    case Chart::barrier_closed: {
      const double above = (p.a - 1.0) * logistic(u);
      return {1.0 + above, -above};
    }
  }
  return {};
}

double x_of_u(double u, const PotentialParams& p) {
  const double a = p.a;
  switch (chart_of(p)) {
    case Chart::well:
      return p.x0 + p.sigma * (a * std::log1p(std::expm1(-u) / a) + u);
    case Chart::barrier_open: {
      // log((z - a)/(1 - a)) = log1p(exp(u)/(1 - a))
      const double l = u < 0.0 ? std::log1p(std::exp(u) / (1.0 - a))
                                : u - std::log(1.0 - a) + std::log1p((1.0 - a) * std::exp(-u));
      return p.x0 + p.sigma * (a * l - u);
    }
    case Chart::barrier_closed:
      return p.x0 + p.sigma * (-a * softplus(u) - std::log(a - 1.0) + softplus(-u));
  }
  return 0.0;
}

double dx_du(double u, const PotentialParams& p) {
  const BranchPoint pt = point_of_u(u, p);
  const double z = pt.z;
  switch (chart_of(p)) {
    case Chart::well:
      return p.sigma * z * (1.0 - p.a) / (z - p.a);
    case Chart::barrier_open:
      return p.sigma * z * (p.a - 1.0) / (z - p.a);
    case Chart::barrier_closed:
      return -p.sigma * z;
  }
  return 0.0;
}

// Sign of dx/du along the chart.
double orientation(const PotentialParams& p) {
  return chart_of(p) == Chart::well ? (p.sigma > 0 ? 1.0 : -1.0) : (p.sigma > 0 ? -1.0 : 1.0);
}

bool in_image(double x, const PotentialParams& p) {
  const Branch img = x_image(p);
  return x > img.lo && x < img.hi;
}

// Newton polish without a bracket; returns nullopt if it does not settle.
std::optional<double> newton_from(double x, double u, const PotentialParams& p, double lower) {
  for (int iter = 0; iter < 12; ++iter) {
    const double slope = dx_du(u, p);
    if (!(std::abs(slope) > 0.0) || !std::isfinite(slope)) return std::nullopt;
    const double step = (x_of_u(u, p) - x) / slope;
    const double next = u - step;
    if (!std::isfinite(next) || next <= lower) return std::nullopt;
    u = next;
    if (std::abs(step) <= 4e-16 * std::max(1.0, std::abs(u))) return u;
  }
  return std::nullopt;
}

double solve_u(double x, const PotentialParams& p, std::optional<double> guess = std::nullopt) {
  if (!in_image(x, p)) {
    const Branch img = x_image(p);
    throw DomainError("x = " + format_number(x) + " lies outside the variant image (" +
                      format_number(img.lo) + ", " + format_number(img.hi) + ")");
  }
  const bool well = chart_of(p) == Chart::well;
  const double lower = well ? 0.0 : -kInf;
  if (guess) {
    if (auto u = newton_from(x, *guess, p, lower)) return *u;
  }

  const double dir = orientation(p);
  auto g = [&](double u) { return dir * (x_of_u(u, p) - x); };

  double lo = 0.0;
  double hi = 0.0;
  if (well) {
    // x - x0 ~ sigma (a - 1) z^2 / (2a) near the origin, ~ sigma u far out.
    const double d = std::abs(x - p.x0) / std::abs(p.sigma);
    lo = 0.0;
    hi = std::max(std::sqrt(2.0 * d * p.a / (p.a - 1.0)), d) + 1.0;
    for (int k = 0; g(hi) < 0.0; ++k) {
      if (k > 2000) throw BracketFailure("cannot bracket z for x = " + format_number(x));
      lo = hi;
      hi *= 2.0;
    }
  } else {
    lo = -1.0;
    hi = 1.0;
    for (int k = 0; g(lo) > 0.0; ++k) {
      if (k > 2000) throw BracketFailure("cannot bracket z for x = " + format_number(x));
      hi = lo;
      lo *= 2.0;
    }
    for (int k = 0; g(hi) < 0.0; ++k) {
      if (k > 2000) throw BracketFailure("cannot bracket z for x = " + format_number(x));
      lo = hi;
      hi *= 2.0;
    }
  }

  double u = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double gv = g(u);
    if (gv == 0.0) return u;
    if (gv < 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    const double slope = dir * dx_du(u, p);
    double next = u - gv / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 4e-16 * std::max(1.0, std::abs(u)) || hi - lo <= 4e-16 * std::max(1.0, std::abs(u))) {
      return next;
    }
    u = next;
  }
  throw BracketFailure("z inversion did not converge for x = " + format_number(x));
}

void require_well(const PotentialParams& p, const char* what) {
  if (p.variant != Variant::well) {
    throw DomainError(std::string(what) + " is defined for the well variant only");
  }
}

void require_a_minus1(const PotentialParams& p) {
  if (std::abs(p.a + 1.0) > 1e-12) {
    throw InvalidParameter("the a = -1 closed form requires a = -1 (got a = " + format_number(p.a) + ")");
  }
}

}  // namespace

std::string to_string(Variant v) { return v == Variant::well ? "well" : "barrier"; }

Variant parse_variant(const std::string& text) {
  if (text == "well") return Variant::well;
  if (text == "barrier") return Variant::barrier;
  throw InvalidParameter("variant must be 'well' or 'barrier' (got '" + text + "')");
}

void PotentialParams::validate() const {
  const auto finite = [](double v, const char* name) {
    if (!std::isfinite(v)) throw InvalidParameter(std::string(name) + " must be finite");
  };
  finite(a, "a");
  finite(sigma, "sigma");
  finite(x0, "x0");
  finite(V0, "V0");
  finite(V1, "V1");
  finite(m, "m");
  finite(hbar, "hbar");
  if (a == 0.0 || a == 1.0) {
    throw InvalidParameter("a must differ from 0 and 1 (got a = " + format_number(a) + ")");
  }
  if (sigma == 0.0) throw InvalidParameter("sigma must be nonzero");
  if (!(m > 0.0)) throw InvalidParameter("m must be positive");
  if (!(hbar > 0.0)) throw InvalidParameter("hbar must be positive");
  if (variant == Variant::well && a > 0.0 && a < 1.0) {
    throw InvalidParameter("the well variant requires a < 0 or a > 1 so that z - a keeps one sign on (0, 1) (got a = " +
                           format_number(a) + ")");
  }
}

std::string describe(const PotentialParams& p) {
  return "a=" + format_number(p.a) + " sigma=" + format_number(p.sigma) + " x0=" + format_number(p.x0) +
         " V0=" + format_number(p.V0) + " V1=" + format_number(p.V1) + " variant=" + to_string(p.variant) +
         " m=" + format_number(p.m) + " hbar=" + format_number(p.hbar);
}

Branch z_branch(const PotentialParams& p) {
  if (p.variant == Variant::well) return {0.0, 1.0};
  return p.a < 1.0 ? Branch{1.0, kInf} : Branch{1.0, p.a};
}

Branch x_image(const PotentialParams& p) {
  if (p.variant == Variant::barrier) return {-kInf, kInf};
  return p.sigma > 0.0 ? Branch{p.x0, kInf} : Branch{-kInf, p.x0};
}

double x_of_z(double z, const PotentialParams& p) {
  const Branch br = z_branch(p);
  if (!(z > br.lo && z < br.hi)) {
    throw DomainError("z = " + format_number(z) + " is off the " + to_string(p.variant) + " branch");
  }
  if (p.variant == Variant::well) {
    return p.x0 + p.sigma * (p.a * std::log1p(-z / p.a) - std::log1p(-z));
  }
  return p.x0 + p.sigma * (p.a * std::log((z - p.a) / (1.0 - p.a)) - std::log(z - 1.0));
}

BranchPoint locate(double x, const PotentialParams& p) { return point_of_u(solve_u(x, p), p); }

double z_of_x(double x, const PotentialParams& p) { return locate(x, p).z; }

std::vector<BranchPoint> locate_sorted(const std::vector<double>& xs, const PotentialParams& p) {
  std::vector<BranchPoint> out;
  out.reserve(xs.size());
  std::optional<double> previous;
  for (double x : xs) {
    const double u = solve_u(x, p, previous);
    previous = u;
    out.push_back(point_of_u(u, p));
  }
  return out;
}

double dz_dx(double z, const PotentialParams& p) {
  return (z - p.a) * (z - 1.0) / (p.sigma * (p.a - 1.0) * z);
}

double dz_dx(const BranchPoint& pt, const PotentialParams& p) {
  return -(pt.z - p.a) * pt.one_minus_z / (p.sigma * (p.a - 1.0) * pt.z);
}

double potential_value(double x, const PotentialParams& p) {
  if (p.variant == Variant::well && std::abs(x - p.x0) < kOriginGuard && in_image(x, p)) {
    return p.V0 + asymptote_origin(x, p);
  }
  // Written around the tail value V0 + V1 so the approach to z = 1 keeps its digits.
  const BranchPoint pt = locate(x, p);
  return (p.V0 + p.V1) + p.V1 * pt.one_minus_z / pt.z;
}

GridFunction sample_potential(const PotentialParams& p, double x_start, double x_end, std::size_t n) {
  if (n < 2) throw InvalidParameter("sample count n must be at least 2");
  if (!(x_end > x_start)) throw InvalidParameter("x_end must exceed x_start");
  GridFunction grid{x_start, (x_end - x_start) / static_cast<double>(n - 1), {}};
  grid.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n ? x_end : grid.x(i);
    try {
      grid.values.push_back(potential_value(x, p));
    } catch (const DomainError& e) {
      throw DomainError("potential at x = " + format_number(x) + ": " + e.what());
    } catch (const BracketFailure& e) {
      throw BracketFailure("potential at x = " + format_number(x) + ": " + e.what());
    }
  }
  return grid;
}

BranchPoint a_minus1_z(double x, const PotentialParams& p) {
  require_a_minus1(p);
  const double s = (x - p.x0) / p.sigma;
  if (s > 0.0) {
    const double z = std::exp(0.5 * s) * std::sqrt(1.0 + std::exp(-s));
    return {z, 1.0 - z};
  }
  const double e = std::exp(s);
  const double z = std::sqrt(1.0 + e);
  return {z, -e / (1.0 + z)};
}

double closed_form_a_minus1(double x, const PotentialParams& p) {
  return p.V0 + p.V1 / a_minus1_z(x, p).z;
}

BranchPoint cubic_z(double x, const PotentialParams& p) {
  const double s = 0.5 * (x - p.x0) / p.sigma;
  // asinh(e^s) = s + ln 2 + e^{-2s}/4 + O(e^{-4s})
  const double ash = s > 20.0 ? s + std::numbers::ln2 + 0.25 * std::exp(-2.0 * s) : std::asinh(std::exp(s));
  const double t = 2.0 * ash / 3.0;
  const double sh = std::sinh(0.5 * t);
  const double above = 4.0 * sh * sh;
  return {1.0 + above, -above};
}

double closed_form_cubic(double x, const PotentialParams& p) { return p.V0 + p.V1 / cubic_z(x, p).z; }

PotentialParams a_minus1_parametric_equivalent(const PotentialParams& closed) {
  PotentialParams p = closed;
  p.a = -1.0;
  p.variant = Variant::barrier;
  p.sigma = -closed.sigma;
  p.x0 = closed.x0 + closed.sigma * std::numbers::ln2;
  return p;
}

PotentialParams cubic_parametric_equivalent(const PotentialParams& closed) {
  PotentialParams p = closed;
  p.a = -2.0;
  p.variant = Variant::barrier;
  p.sigma = -closed.sigma;
  p.x0 = closed.x0 + closed.sigma * std::log(9.0 / 4.0);
  return p;
}

double asymptote_origin(double x, const PotentialParams& p) {
  require_well(p, "asymptote_origin");
  const double radicand = (p.a - 1.0) * p.sigma / (2.0 * p.a * (x - p.x0));
  if (!(radicand > 0.0) || !std::isfinite(radicand)) {
    throw DomainError("origin asymptote needs (a - 1) sigma / (2 a (x - x0)) > 0 (x = " + format_number(x) + ")");
  }
  return p.V1 * std::sqrt(radicand);
}

double asymptote_infinity(double x, const PotentialParams& p) {
  require_well(p, "asymptote_infinity");
  return std::pow((p.a - 1.0) / p.a, p.a) * p.V1 * std::exp(-(x - p.x0) / p.sigma);
}

}  // namespace heunwell
