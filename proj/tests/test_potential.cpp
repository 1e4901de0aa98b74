#include <cmath>
#include <random>
#include <string>

#include "doctest.h"

#include "heunwell/errors.hpp"
#include "heunwell/potential.hpp"
#include "support/oracles.hpp"

using namespace heunwell;

namespace {

PotentialParams sample_well() {
  PotentialParams p;
  p.a = -2.0;
  p.sigma = 2.0;
  p.V0 = 5.0;
  p.V1 = -5.0;
  return p;
}

PotentialParams barrier(double a, double sigma, double V0 = 1.0, double V1 = -1.0) {
  PotentialParams p;
  p.a = a;
  p.sigma = sigma;
  p.V0 = V0;
  p.V1 = V1;
  p.variant = Variant::barrier;
  return p;
}

// Direct evaluation of the shifted maps in long double.
double x_direct(double z, const PotentialParams& p) {
  const long double a = p.a, s = p.sigma, lz = z;
  if (p.variant == Variant::well) return static_cast<double>(p.x0 + s * (a * std::log(1.0L - lz / a) - std::log(1.0L - lz)));
  return static_cast<double>(p.x0 + s * (a * std::log((lz - a) / (1.0L - a)) - std::log(lz - 1.0L)));
}

// (z - a)(z - 1) / (sigma (a - 1) z)
double dz_dx_formula(double z, double a, double sigma) { return (z - a) * (z - 1.0) / (sigma * (a - 1.0) * z); }

}  // namespace

TEST_CASE("parameter validation") {
  PotentialParams p = sample_well();
  CHECK_NOTHROW(p.validate());
  p.a = 1.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("a must differ from 0 and 1"), InvalidParameter);
  p.a = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = sample_well();
  p.sigma = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = sample_well();
  p.m = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = sample_well();
  p.hbar = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = sample_well();
  p.a = 0.5;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p.variant = Variant::barrier;
  CHECK_NOTHROW(p.validate());
  CHECK(parse_variant("barrier") == Variant::barrier);
  CHECK_THROWS_AS(parse_variant("step"), InvalidParameter);
}

TEST_CASE("forward map against direct evaluation") {
  const PotentialParams p = sample_well();
  CHECK(std::abs(x_of_z(0.5, p) - x_direct(0.5, p)) < 1e-15);
  CHECK(std::abs(x_of_z(0.5, p) - 0.49372015586305151) < 1e-15);
  CHECK(x_of_z(1e-12, p) > 0.0);
  CHECK(x_of_z(1e-12, p) < 1e-10);
  CHECK(x_of_z(1.0 - 1e-12, p) > 50.0);

  for (const PotentialParams& q : {barrier(-2.0, -1.0), barrier(1.25, -1.0, 5.0, -5.0), barrier(-0.5, 0.7)}) {
    const Branch br = z_branch(q);
    const double mid = std::isfinite(br.hi) ? 0.5 * (br.lo + br.hi) : br.lo + 1.0;
    CAPTURE(q.a);
    CHECK(std::abs(x_of_z(mid, q) - x_direct(mid, q)) < 1e-13);
  }
  CHECK_THROWS_AS(x_of_z(1.5, p), DomainError);
  CHECK_THROWS_AS(z_of_x(-1.0, p), DomainError);
}

TEST_CASE("inverse map against bisection") {
  const PotentialParams p = sample_well();
  const double z_star = oracle::bisect([&](double z) { return x_direct(z, p) - 1.0; }, 1e-12, 1.0 - 1e-12, 1e-15);
  CHECK(std::abs(z_of_x(1.0, p) - z_star) < 1e-14);
  CHECK(std::abs(z_of_x(1.0, p) - 0.65610883593461544) < 1e-14);

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const PotentialParams& q : {sample_well(), barrier(-2.0, -1.0), barrier(1.25, -0.5, 5.0, -5.0), barrier(3.0, 2.0)}) {
    const Branch br = z_branch(q);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      double z;
      if (std::isfinite(br.hi)) {
        z = br.lo + (br.hi - br.lo) * (0.001 + 0.998 * u(rng));
      } else {
        z = br.lo + std::exp(-6.0 + 12.0 * u(rng));
      }
      worst = std::max(worst, std::abs(z_of_x(x_of_z(z, q), q) - z) / std::max(1.0, std::abs(z)));
    }
    CAPTURE(q.a);
    CAPTURE(q.sigma);
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("far tail keeps 1 - z") {
  const PotentialParams p = sample_well();
  // x = 200 sigma: 1 - z ~ e^{-200}, far below double resolution of z itself.
  const BranchPoint pt = locate(400.0, p);
  CHECK(pt.one_minus_z > 0.0);
  CHECK(pt.one_minus_z < 1e-80);
  const double x_back = p.sigma * (p.a * std::log1p(-pt.z / p.a) - std::log(pt.one_minus_z));
  CHECK(std::abs(x_back - 400.0) < 1e-10);
}

TEST_CASE("dz/dx of the parametric map and both closed forms") {
  const double h = 1e-5;
  // parametric map, well and barrier, 200 points each
  for (const PotentialParams& q : {sample_well(), barrier(-2.0, -1.0), barrier(1.25, -1.0, 5.0, -5.0)}) {
    const Branch img = x_image(q);
    // The barrier ends are kept within 5 sigma: beyond that z - a or z - 1
    // underflows relative to z and the finite difference itself loses digits.
    const double lo = std::isfinite(img.lo) ? img.lo + 0.05 : -5.0 * std::abs(q.sigma);
    const double hi = std::isfinite(img.hi) ? img.hi - 0.05 : 5.0 * std::abs(q.sigma);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double x = lo + (std::min(hi, lo + 16.0) - lo) * (i + 0.5) / 200.0;
      const double fd = -(locate(x + h, q).one_minus_z - locate(x - h, q).one_minus_z) / (2 * h);
      const double z = z_of_x(x, q);
      worst = std::max(worst, std::abs(fd - dz_dx_formula(z, q.a, q.sigma)) / std::abs(fd));
      CHECK(std::abs(dz_dx(z, q) - dz_dx_formula(z, q.a, q.sigma)) <= 1e-14 * std::abs(dz_dx(z, q)));
    }
    CAPTURE(q.a);
    CHECK(worst < 1e-8);
  }

  PotentialParams c = sample_well();
  c.a = -1.0;
  c.sigma = 1.5;
  c.x0 = 0.3;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = -6.0 + 12.0 * (i + 0.5) / 200.0;
    const double fd = (a_minus1_z(x + h, c).z - a_minus1_z(x - h, c).z) / (2 * h);
    // The a = -1 closed form follows the map with sigma -> -sigma.
    worst = std::max(worst, std::abs(fd - dz_dx_formula(a_minus1_z(x, c).z, -1.0, -c.sigma)) / std::abs(fd));
  }
  CHECK(worst < 1e-8);

  worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = -6.0 + 12.0 * (i + 0.5) / 200.0;
    const double fd = (cubic_z(x + h, c).z - cubic_z(x - h, c).z) / (2 * h);
    worst = std::max(worst, std::abs(fd - dz_dx_formula(cubic_z(x, c).z, -2.0, -c.sigma)) / std::abs(fd));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("closed forms") {
  PotentialParams c;
  c.a = -1.0;
  c.sigma = 0.8;
  c.x0 = -0.4;
  c.V0 = 2.0;
  c.V1 = -3.0;
  CHECK(std::abs(closed_form_a_minus1(c.x0, c) - (c.V0 + c.V1 / std::sqrt(2.0))) < 1e-14);
  CHECK(std::abs(closed_form_a_minus1(c.x0 - 60.0, c) - (c.V0 + c.V1)) < 1e-12);
  CHECK(std::abs(closed_form_a_minus1(c.x0 + 60.0, c) - c.V0) < 1e-12);

  const PotentialParams eq = a_minus1_parametric_equivalent(c);
  CHECK(eq.variant == Variant::barrier);
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = -10.0 + 20.0 * i / 400.0;
    worst = std::max(worst, std::abs(closed_form_a_minus1(x, c) - potential_value(x, eq)));
  }
  CHECK(worst < 1e-10);

  // Cardano form of the cubic: z = -1 + q^{2/3} + q^{-2/3}, q = w + sqrt(1 + w^2).
  const auto cubic_oracle = [&](double x) {
    const long double w = std::exp(static_cast<long double>(x - c.x0) / (2.0L * c.sigma));
    const long double q = w + std::sqrt(1.0L + w * w);
    return static_cast<double>(-1.0L + std::cbrt(q * q) + 1.0L / std::cbrt(q * q));
  };
  const PotentialParams cq = cubic_parametric_equivalent(c);
  CHECK(cq.a == -2.0);
  worst = 0.0;
  double worst_eq = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = -10.0 + 20.0 * i / 400.0;
    worst = std::max(worst, std::abs(cubic_z(x, c).z - cubic_oracle(x)) / cubic_oracle(x));
    worst_eq = std::max(worst_eq, std::abs(closed_form_cubic(x, c) - potential_value(x, cq)));
  }
  CHECK(worst < 1e-13);
  CHECK(worst_eq < 1e-10);
  CHECK(std::abs(closed_form_cubic(c.x0 + 200.0, c) - c.V0) < 1e-6);
}

TEST_CASE("monotone z(x)") {
  for (const PotentialParams& q : {sample_well(), barrier(-2.0, -1.0), barrier(1.25, -0.5, 5.0, -5.0), barrier(3.0, 2.0)}) {
    const Branch img = x_image(q);
    const double lo = std::isfinite(img.lo) ? img.lo + 1e-3 : -20.0;
    const double hi = std::isfinite(img.hi) ? img.hi - 1e-3 : 20.0;
    const double first = z_of_x(lo + (hi - lo) * 1e-3, q) - z_of_x(lo, q);
    int sign_changes = 0;
    double prev = z_of_x(lo, q);
    for (int i = 1; i <= 1000; ++i) {
      const double z = z_of_x(lo + (hi - lo) * i / 1000.0, q);
      if ((z - prev) * first < 0.0) ++sign_changes;
      prev = z;
    }
    CAPTURE(q.a);
    CHECK(sign_changes == 0);
  }
}

TEST_CASE("potential asymptotes on the well") {
  const PotentialParams p = sample_well();
  CHECK(std::abs(asymptote_origin(0.01, p) - (-5.0 * std::sqrt(1.5) / 0.1)) < 1e-12);
  CHECK(std::abs(asymptote_origin(0.01, p) + 61.237243569579) < 1e-9);
  for (double x : {1e-4, 1e-6, 1e-8}) {
    CAPTURE(x);
    CHECK(std::abs((potential_value(x, p) - p.V0) / asymptote_origin(x, p) - 1.0) < 10.0 * std::sqrt(x));
  }
  CHECK(std::abs(potential_value(1e-8, p) * std::sqrt(1e-8) + 5.0 * std::sqrt(1.5)) < 1e-3);
  CHECK(std::abs(asymptote_infinity(0.0, p) + 5.0 * 4.0 / 9.0) < 1e-14);
  for (double x : {20.0, 40.0, 80.0}) {
    CAPTURE(x);
    CHECK(std::abs((potential_value(x, p) - (p.V0 + p.V1)) / asymptote_infinity(x, p) - 1.0) < 1e-3);
  }
  // log-slope of the tail deviation
  const double slope = (std::log(std::abs(potential_value(60.0, p))) - std::log(std::abs(potential_value(50.0, p)))) / 10.0;
  CHECK(std::abs(slope + 1.0 / p.sigma) < 1e-6);
  CHECK(std::abs(potential_value(200.0, p)) < 1e-40);
  CHECK_THROWS_AS(asymptote_origin(0.1, barrier(-2.0, -1.0)), DomainError);
}

TEST_CASE("barrier plateaus, fixed point and sharpening") {
  // a = -2: z runs over (1, inf), V from V0 + V1 to V0.
  for (double s : {-2.0, -1.0, -0.5}) {
    const PotentialParams q = barrier(-2.0, s);
    CAPTURE(s);
    CHECK(std::abs(potential_value(-60.0 * std::abs(s), q) - (q.V0 + q.V1)) < 1e-8);
    CHECK(std::abs(potential_value(60.0 * std::abs(s), q) - q.V0) < 1e-8);
  }
  // a = 1.25: z runs over (1, a), plateaus V0 + V1 and V0 + V1/a.
  for (double s : {-2.0, -1.0, -0.5}) {
    const PotentialParams q = barrier(1.25, s, 5.0, -5.0);
    const double left = potential_value(-40.0 * std::abs(s), q);
    const double right = potential_value(40.0 * std::abs(s), q);
    const double want_a = q.V0 + q.V1 / q.a, want_1 = q.V0 + q.V1;
    CAPTURE(s);
    CHECK(std::min(std::abs(left - want_a), std::abs(left - want_1)) < 1e-8);
    CHECK(std::min(std::abs(right - want_a), std::abs(right - want_1)) < 1e-8);
    CHECK(std::abs(left - right) > 0.5);
  }
  const double v_fixed = potential_value(0.0, barrier(-2.0, -1.0));
  for (double s : {-2.0, -0.5}) CHECK(std::abs(potential_value(0.0, barrier(-2.0, s)) - v_fixed) < 1e-10);

  // 10%-90% width scales linearly with |sigma|
  const auto width = [](double s) {
    const PotentialParams q = barrier(-2.0, s);
    const double lo = q.V0 + q.V1, hi = q.V0;
    const auto level = [&](double frac) {
      return oracle::bisect([&](double x) { return (potential_value(x, q) - lo) / (hi - lo) - frac; }, -60.0 * std::abs(s),
                            60.0 * std::abs(s), 1e-14);
    };
    return std::abs(level(0.9) - level(0.1));
  };
  const double w1 = width(-1.0);
  CHECK(std::abs(width(-2.0) / (2.0 * w1) - 1.0) < 0.05);
  CHECK(std::abs(width(-0.5) / (0.5 * w1) - 1.0) < 0.05);
}

TEST_CASE("sampling") {
  const PotentialParams p = sample_well();
  const GridFunction two = sample_potential(p, 1.0, 3.0, 2);
  REQUIRE(two.size() == 2);
  CHECK(two.values[0] == potential_value(1.0, p));
  CHECK(two.values[1] == potential_value(3.0, p));
  const GridFunction g = sample_potential(p, 0.01, 10.0, 500);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.values[i] > g.values[i - 1]);
  CHECK(g.values.front() < -40.0);
  CHECK(g.values.back() < 0.0);
  CHECK(g.values.back() > -0.02);
  const std::vector<double> xs{0.5, 1.0, 2.0, 7.0};
  const auto pts = locate_sorted(xs, p);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(pts[i].z - z_of_x(xs[i], p)) < 1e-14);
}
