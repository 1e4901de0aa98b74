#include <cmath>
#include <numbers>
#include <string>

#include "heunwell/errors.hpp"
#include "heunwell/specfun.hpp"

namespace heunwell::specfun {

namespace {

constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

// Li2 on [-1/2, 1/2] by its defining series (|x|^n / n^2 decays at least as 2^-n).
double dilog_series(double x) {
  long double power = x;
  long double sum = 0.0L;
  for (int n = 1; n < 200; ++n) {
    const long double term = power / (static_cast<long double>(n) * n);
    sum += term;
    if (std::abs(term) < 1e-20L * std::abs(sum)) break;
    power *= x;
  }
  return static_cast<double>(sum);
}

}  // namespace

double dilog(double x) {
  if (std::isnan(x)) throw DomainError("dilog: argument is NaN");
  if (x > 1.0) throw DomainError("dilog: x = " + std::to_string(x) + " > 1 is outside the real domain");
  if (x == 1.0) return kPi2Over6;
  if (x == 0.0) return 0.0;
  if (x < -1.0) {
    const double l = std::log(-x);
    return -kPi2Over6 - 0.5 * l * l - dilog(1.0 / x);
  }
  if (x < 0.0) {
    // Landen: maps [-1, 0) onto [-1/2, 0).
    const double l = std::log1p(-x);
    return -dilog_series(x / (x - 1.0)) - 0.5 * l * l;
  }
  if (x <= 0.5) return dilog_series(x);
  return kPi2Over6 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x);
}

double arccoth(double x) {
  if (!(std::abs(x) > 1.0)) {
    throw DomainError("arccoth: |x| = " + std::to_string(std::abs(x)) + " must exceed 1");
  }
  return 0.5 * std::log1p(2.0 / (x - 1.0));
}

}  // namespace heunwell::specfun
