#pragma once

// Reference computations used only by the tests. They are deliberately naive
// (plain series, bisection, composite quadrature) and share no code with the
// library.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <stdexcept>

namespace oracle {

using lcplx = std::complex<long double>;

/// 2F1 by direct summation in long double; requires |z| < 1.
inline lcplx hyp2f1_series(lcplx a, lcplx b, lcplx c, lcplx z, int max_terms = 20000) {
  lcplx term = 1.0L, sum = 1.0L;
  for (int n = 0; n < max_terms; ++n) {
    const long double k = n;
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0L)) * z;
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) return sum;
  }
  throw std::runtime_error("hyp2f1_series did not converge");
}

inline lcplx hyp3f2_series(lcplx a1, lcplx a2, lcplx a3, lcplx b1, lcplx b2, lcplx z, int max_terms = 20000) {
  lcplx term = 1.0L, sum = 1.0L;
  for (int n = 0; n < max_terms; ++n) {
    const long double k = n;
    term *= (a1 + k) * (a2 + k) * (a3 + k) / ((b1 + k) * (b2 + k) * (k + 1.0L)) * z;
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) return sum;
  }
  throw std::runtime_error("hyp3f2_series did not converge");
}

/// Li2(x) = sum x^n / n^2 for |x| <= 1 (slow but fine near 0).
inline long double dilog_series(long double x) {
  long double sum = 0.0L, power = 1.0L;
  for (int n = 1; n < 2000000; ++n) {
    power *= x;
    const long double term = power / (static_cast<long double>(n) * n);
    sum += term;
    if (std::abs(term) < 1e-21L) return sum;
  }
  return sum;
}

/// Root of f in [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13) {
  double f_lo = f(lo);
  if ((f_lo > 0.0) == (f(hi) > 0.0)) throw std::runtime_error("bisect: no sign change");
  while (hi - lo > tol * (1.0 + std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Composite Simpson rule on n (even) panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
  if (n % 2) ++n;
  const double h = (hi - lo) / n;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return sum * h / 3.0;
}

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline std::complex<double> to_double(lcplx v) { return {static_cast<double>(v.real()), static_cast<double>(v.imag())}; }

}  // namespace oracle
