#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <string>

#include "heunwell/errors.hpp"
#include "heunwell/specfun.hpp"

namespace heunwell::specfun {

namespace {

using lcplx = std::complex<long double>;

constexpr int kMaxTerms = 5000;
constexpr long double kStopRatio = 1e-17L;
constexpr double kDirectRadius = 0.9;
// |c-a-b - m| below this is treated as the exact integer m.
constexpr double kExactIntegerTol = 1e-13;
// Inside this radius around an integer the generic 1-z formula loses digits
// through cancellation; the value is recovered by Cauchy interpolation in c.
constexpr double kNearIntegerRadius = 2e-2;
constexpr double kContourRadius = 0.1;
constexpr int kContourNodes = 16;

lcplx widen(cplx v) { return {v.real(), v.imag()}; }
cplx narrow(lcplx v) {
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// Power series with term-ratio stopping; accumulated in extended precision.
cplx series(cplx a, cplx b, cplx c, cplx z) {
  const lcplx la = widen(a), lb = widen(b), lc = widen(c), lz = widen(z);
  lcplx term = 1.0L;
  lcplx sum = 1.0L;
  int quiet = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const long double ln = n;
    term *= (la + ln) * (lb + ln) / ((lc + ln) * (ln + 1.0L)) * lz;
    sum += term;
    if (term == 0.0L) return narrow(sum);
    if (std::abs(term) <= kStopRatio * std::abs(sum)) {
      if (++quiet >= 2) return narrow(sum);
    } else {
      quiet = 0;
    }
  }
  throw NonConvergence("2F1 series did not converge within " + std::to_string(kMaxTerms) +
                       " terms (|z| = " + std::to_string(std::abs(z)) + ")");
}

// Terminating series of degree `degree`.
cplx polynomial(cplx a, cplx b, cplx c, cplx z, int degree) {
  const lcplx la = widen(a), lb = widen(b), lc = widen(c), lz = widen(z);
  lcplx term = 1.0L;
  lcplx sum = 1.0L;
  for (int n = 0; n < degree; ++n) {
    const long double ln = n;
    term *= (la + ln) * (lb + ln) / ((lc + ln) * (ln + 1.0L)) * lz;
    sum += term;
  }
  return narrow(sum);
}

std::optional<int> terminating_degree(cplx a, cplx b) {
  const auto na = nonpositive_integer(a);
  const auto nb = nonpositive_integer(b);
  if (na && nb) return std::min(*na, *nb);
  if (na) return na;
  return nb;
}

void check_lower_parameter(cplx a, cplx b, cplx c) {
  const auto nc = nonpositive_integer(c);
  if (!nc) return;
  const auto degree = terminating_degree(a, b);
  if (degree && *degree <= *nc) return;
  throw DomainError("2F1: lower parameter c = " + std::to_string(c.real()) +
                    " is a non-positive integer and the series does not terminate first");
}

cplx gamma_ratio(std::initializer_list<cplx> num, std::initializer_list<cplx> den) {
  cplx log_sum = 0.0;
  for (cplx v : den) {
    if (nonpositive_integer(v)) return 0.0;
    log_sum -= log_gamma(v);
  }
  for (cplx v : num) log_sum += log_gamma(v);
  return std::exp(log_sum);
}

// Generic connection formula around z = 1, c-a-b not an integer. t = 1 - z.
cplx one_minus_z_generic(cplx a, cplx b, cplx c, cplx t) {
  const cplx s = c - a - b;
  const cplx first = gamma_ratio({c, s}, {c - a, c - b});
  const cplx second = gamma_ratio({c, -s}, {a, b});
  cplx value = 0.0;
  if (first != 0.0) value += first * series(a, b, 1.0 - s, t);
  if (second != 0.0) value += second * std::exp(s * std::log(t)) * series(c - a, c - b, 1.0 + s, t);
  return value;
}

// Logarithmic limit formulas for c = a + b + m with integer m. t = 1 - z.
cplx one_minus_z_integer(cplx a, cplx b, int m, cplx t) {
  const cplx c = a + b + static_cast<double>(m);
  const cplx log_t = std::log(t);
  const cplx euler_gamma = -std::numbers::egamma;

  auto log_series = [&](cplx p, cplx q, int shift, lcplx coef) {
    // sum_n (p)_n (q)_n / (n! (n+shift)!) t^n [ln t - psi(n+1) - psi(n+shift+1) + psi(p+n) + psi(q+n)]
    cplx psi_n1 = euler_gamma;
    cplx psi_ns = digamma(static_cast<double>(shift + 1));
    cplx psi_p = digamma(p);
    cplx psi_q = digamma(q);
    lcplx sum = 0.0L;
    int quiet = 0;
    for (int n = 0; n < kMaxTerms; ++n) {
      const lcplx bracket = widen(log_t - psi_n1 - psi_ns + psi_p + psi_q);
      const lcplx term = coef * bracket;
      sum += term;
      if (std::abs(term) <= kStopRatio * std::abs(sum)) {
        if (++quiet >= 2) return narrow(sum);
      } else {
        quiet = 0;
      }
      const double dn = n;
      coef *= widen((p + dn) * (q + dn) / ((dn + 1.0) * (dn + shift + 1.0)) * t);
      psi_n1 += 1.0 / (dn + 1.0);
      psi_ns += 1.0 / (dn + shift + 1.0);
      psi_p += 1.0 / (p + dn);
      psi_q += 1.0 / (q + dn);
      if (coef == 0.0L) return narrow(sum);
    }
    throw NonConvergence("2F1 logarithmic series did not converge");
  };

  auto finite_part = [&](cplx p, cplx q, int k) {
    // sum_{n<k} (p)_n (q)_n / (n! (1-k)_n) t^n
    lcplx term = 1.0L;
    lcplx sum = 1.0L;
    for (int n = 0; n + 1 < k; ++n) {
      const double dn = n;
      term *= widen((p + dn) * (q + dn) / ((dn + 1.0) * (1.0 - k + dn)) * t);
      sum += term;
    }
    return narrow(sum);
  };

  if (m == 0) {
    const cplx pref = gamma_ratio({c}, {a, b});
    // 15.3.10 written with the same bracket sign convention as the m != 0 cases.
    return -pref * log_series(a, b, 0, 1.0L);
  }
  if (m > 0) {
    const cplx head =
        gamma_ratio({static_cast<double>(m), c}, {a + static_cast<double>(m), b + static_cast<double>(m)}) *
        finite_part(a, b, m);
    const long double inv_fact = 1.0L / std::tgamma(static_cast<long double>(m) + 1.0L);
    const cplx tail = gamma_ratio({c}, {a, b}) * std::pow(-t, m) *
                      log_series(a + static_cast<double>(m), b + static_cast<double>(m), m, inv_fact);
    return head - tail;
  }
  const int k = -m;
  const cplx head = gamma_ratio({static_cast<double>(k), c}, {a, b}) * std::pow(t, -k) *
                    finite_part(a - static_cast<double>(k), b - static_cast<double>(k), k);
  const long double inv_fact = 1.0L / std::tgamma(static_cast<long double>(k) + 1.0L);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  const cplx tail = sign * gamma_ratio({c}, {a - static_cast<double>(k), b - static_cast<double>(k)}) *
                    log_series(a, b, k, inv_fact);
  return head - tail;
}

// F(c) / Gamma(c) is entire in c; recover it near a degenerate c from values
// on a circle where the generic formula is well conditioned. Dividing out
// Gamma(c) keeps the poles at c = 0, -1, ... from falling inside the circle.
cplx one_minus_z_contour(cplx a, cplx b, cplx c, cplx t, int m) {
  const cplx center = a + b + static_cast<double>(m);
  const cplx offset = c - center;
  const cplx log_gamma_c = log_gamma(c);
  std::array<cplx, kContourNodes> samples{};
  for (int k = 0; k < kContourNodes; ++k) {
    const cplx node = center + std::polar(kContourRadius, 2.0 * std::numbers::pi * k / kContourNodes);
    samples[static_cast<std::size_t>(k)] = one_minus_z_generic(a, b, node, t) * std::exp(log_gamma_c - log_gamma(node));
  }
  cplx value = 0.0;
  cplx power = 1.0;
  for (int j = 0; j < kContourNodes; ++j) {
    cplx coef = 0.0;
    for (int k = 0; k < kContourNodes; ++k) {
      coef += samples[static_cast<std::size_t>(k)] *
              std::polar(1.0, -2.0 * std::numbers::pi * j * k / kContourNodes);
    }
    coef /= static_cast<double>(kContourNodes) * std::pow(kContourRadius, j);
    value += coef * power;
    power *= offset;
  }
  return value;
}

cplx one_minus_z(cplx a, cplx b, cplx c, cplx t) {
  const cplx s = c - a - b;
  const double nearest = std::round(s.real());
  const double distance = std::abs(s - nearest);
  if (distance <= kExactIntegerTol * std::max(1.0, std::abs(nearest))) {
    return one_minus_z_integer(a, b, static_cast<int>(nearest), t);
  }
  if (distance < kNearIntegerRadius) {
    return one_minus_z_contour(a, b, c, t, static_cast<int>(nearest));
  }
  return one_minus_z_generic(a, b, c, t);
}

cplx evaluate(cplx a, cplx b, cplx c, cplx z, cplx t) {
  check_lower_parameter(a, b, c);
  if (z == 0.0) return 1.0;
  if (const auto degree = terminating_degree(a, b)) return polynomial(a, b, c, z, *degree);
  // Euler transformation turns c-a or c-b at a non-positive integer into a polynomial.
  if (const auto degree = terminating_degree(c - a, c - b)) {
    if (t == 0.0) {
      if ((c - a - b).real() > 0.0) return 0.0;
      throw DomainError("2F1 diverges at z = 1 when Re(c-a-b) <= 0");
    }
    return std::exp((c - a - b) * std::log(t)) * polynomial(c - a, c - b, c, z, *degree);
  }
  if (t == 0.0) {
    if ((c - a - b).real() > 0.0) return gamma_ratio({c, c - a - b}, {c - a, c - b});
    throw DomainError("2F1 diverges at z = 1 when Re(c-a-b) <= 0");
  }
  if (z.imag() == 0.0 && z.real() > 1.0) {
    throw DomainError("2F1: z = " + std::to_string(z.real()) + " lies on the branch cut [1, inf)");
  }
  if (std::abs(z) <= kDirectRadius) return series(a, b, c, z);

  const double r_one_minus = std::abs(t);
  const double r_pfaff = std::abs(z / t);
  const double r_inverse = 1.0 / std::abs(t);
  if (r_one_minus <= r_pfaff && r_one_minus <= r_inverse) return one_minus_z(a, b, c, t);
  // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)); the complement of
  // z/(z-1) is 1/(1-z).
  const cplx pre = std::exp(-a * std::log(t));
  if (r_pfaff <= r_inverse) return pre * series(a, c - b, c, -z / t);
  return pre * one_minus_z(a, c - b, c, 1.0 / t);
}

}  // namespace

cplx gauss_2f1(const HypParams2F1& p) { return evaluate(p.a, p.b, p.c, p.z, 1.0 - p.z); }

cplx gauss_2f1(const HypParams2F1& p, cplx one_minus_z) {
  return evaluate(p.a, p.b, p.c, p.z, one_minus_z);
}

cplx gauss_2f1_derivative(const HypParams2F1& p, int order, cplx one_minus_z) {
  check_lower_parameter(p.a, p.b, p.c);
  if (order == 0) return evaluate(p.a, p.b, p.c, p.z, one_minus_z);
  cplx coef = 1.0;
  for (int k = 0; k < order; ++k) {
    const double dk = k;
    const cplx numer = (p.a + dk) * (p.b + dk);
    if (numer == 0.0) return 0.0;
    coef *= numer / (p.c + dk);
  }
  const double shift = order;
  return coef * evaluate(p.a + shift, p.b + shift, p.c + shift, p.z, one_minus_z);
}

cplx gauss_2f1_dz(const HypParams2F1& p) { return gauss_2f1_derivative(p, 1, 1.0 - p.z); }

cplx gauss_2f1_dz(const HypParams2F1& p, cplx one_minus_z) {
  return gauss_2f1_derivative(p, 1, one_minus_z);
}

}  // namespace heunwell::specfun
