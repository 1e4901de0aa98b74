#include <cmath>
#include <optional>
#include <string>

#include "heunwell/errors.hpp"
#include "heunwell/specfun.hpp"

namespace heunwell::specfun {

namespace {

using lcplx = std::complex<long double>;

constexpr int kMaxTerms = 5000;
constexpr long double kStopRatio = 1e-17L;

lcplx widen(cplx v) { return {v.real(), v.imag()}; }

std::optional<int> smallest_degree(std::initializer_list<cplx> uppers) {
  std::optional<int> best;
  for (cplx v : uppers) {
    if (const auto n = nonpositive_integer(v)) {
      if (!best || *n < *best) best = n;
    }
  }
  return best;
}

}  // namespace

cplx clausen_3f2(const HypParams3F2& p) {
  const auto degree = smallest_degree({p.a1, p.a2, p.a3});
  for (cplx lower : {p.b1, p.b2}) {
    if (const auto n = nonpositive_integer(lower)) {
      if (!degree || *degree > *n) {
        throw DomainError("3F2: lower parameter " + std::to_string(lower.real()) +
                          " is a non-positive integer and the series does not terminate first");
      }
    }
  }
  if (p.z == 0.0) return 1.0;
  if (!degree && std::abs(p.z) >= 1.0) {
    throw NonConvergence("3F2 series requires |z| < 1 (got |z| = " + std::to_string(std::abs(p.z)) +
                         ")");
  }

  const lcplx a1 = widen(p.a1), a2 = widen(p.a2), a3 = widen(p.a3);
  const lcplx b1 = widen(p.b1), b2 = widen(p.b2), z = widen(p.z);
  lcplx term = 1.0L;
  lcplx sum = 1.0L;
  const int limit = degree ? *degree : kMaxTerms;
  int quiet = 0;
  for (int n = 0; n < limit; ++n) {
    const long double ln = n;
    term *= (a1 + ln) * (a2 + ln) * (a3 + ln) / ((b1 + ln) * (b2 + ln) * (ln + 1.0L)) * z;
    sum += term;
    if (degree) continue;
    if (std::abs(term) <= kStopRatio * std::abs(sum)) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
    if (n + 1 == limit) throw NonConvergence("3F2 series did not converge within 5000 terms");
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

}  // namespace heunwell::specfun
