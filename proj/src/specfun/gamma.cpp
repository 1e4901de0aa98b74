#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "heunwell/specfun.hpp"

namespace heunwell::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    x += kLanczos[i] / (z + static_cast<double>(i));
  }
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

bool is_real(cplx z) { return z.imag() == 0.0; }

}  // namespace

std::optional<int> nonpositive_integer(cplx v) {
  const double scale = std::max(1.0, std::abs(v.real()));
  if (std::abs(v.imag()) > 1e-13 * scale) return std::nullopt;
  const double r = std::round(v.real());
  if (r > 0.0 || std::abs(v.real() - r) > 1e-13 * scale) return std::nullopt;
  return static_cast<int>(-r);
}

cplx log_gamma(cplx z) {
  if (nonpositive_integer(z)) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  if (is_real(z)) {
    // log|Gamma| plus i*pi where Gamma is negative.
    const double x = z.real();
    const bool negative = x < 0.0 && static_cast<long long>(std::floor(x)) % 2 != 0;
    return {std::lgamma(x), negative ? kPi : 0.0};
  }
  if (z.real() < 0.5) {
    return std::log(kPi) - std::log(std::sin(kPi * z)) - lanczos_log_gamma(1.0 - z);
  }
  return lanczos_log_gamma(z);
}

cplx gamma(cplx z) {
  if (is_real(z)) return std::tgamma(z.real());
  return std::exp(log_gamma(z));
}

cplx rgamma(cplx z) {
  if (nonpositive_integer(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

cplx digamma(cplx z) {
  if (nonpositive_integer(z)) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  if (z.real() < 0.5) {
    // Reflection: psi(1-z) - psi(z) = pi cot(pi z).
    return digamma(1.0 - z) - kPi / std::tan(kPi * z);
  }
  cplx acc = 0.0;
  while (std::abs(z) < 12.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  // Asymptotic series with Bernoulli numbers B2..B12.
  const cplx tail =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))));
  return acc + std::log(z) - 0.5 * inv - tail;
}

}  // namespace heunwell::specfun
