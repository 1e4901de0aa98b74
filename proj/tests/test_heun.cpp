#include <cmath>
#include <random>

#include "doctest.h"

#include "heunwell/errors.hpp"
#include "heunwell/heun.hpp"
#include "heunwell/json_io.hpp"

using namespace heunwell;

namespace {

PotentialParams reference_well() {
  PotentialParams p;
  p.a = -2.0;
  p.sigma = 2.0;
  p.V0 = 5.0;
  p.V1 = -5.0;
  return p;
}

PotentialParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PotentialParams p;
  p.a = u(rng) < 0.5 ? -0.1 - 4.0 * u(rng) : 1.1 + 4.0 * u(rng);
  p.sigma = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.3 + 2.0 * u(rng));
  p.V0 = -3.0 + 8.0 * u(rng);
  p.V1 = -6.0 + 12.0 * u(rng);
  p.m = 0.5 + u(rng);
  p.hbar = 0.5 + u(rng);
  return p;
}

double scale_of(const HeunData& h) { return 1.0 + std::norm(h.q) + std::abs(h.a1 * h.alpha * h.beta); }

}  // namespace

TEST_CASE("exponents follow their defining formulas") {
  const PotentialParams p = reference_well();
  const double E = -1.3;
  const Exponents ex = exponents(E, p);
  const double s2 = p.sigma * p.sigma;
  CHECK(std::abs(ex.alpha0 - std::sqrt(2.0 * s2 * 9.0 * (p.V0 - E))) < 1e-12);
  CHECK(std::abs(ex.alpha1 - std::sqrt(2.0 * s2 * 4.0 * (p.V0 - E + p.V1 / p.a))) < 1e-12);
  CHECK(std::abs(ex.alpha2 - std::sqrt(cplx(2.0 * s2 * (p.V0 - E + p.V1)))) < 1e-12);
  // zero energy of the vanishing-tail well: alpha1 = sqrt(2 a (a - 1) m sigma^2 V0) / hbar = sqrt(240)
  CHECK(std::abs(exponents(0.0, p).alpha1 - std::sqrt(240.0)) < 1e-12);
  CHECK(std::abs(exponents(0.0, p).alpha1.real() - 15.49193338) < 1e-8);
  // above V0 + V1 the tail exponent turns imaginary
  CHECK(std::abs(exponents(1.0, p).alpha2.real()) < 1e-15);
  CHECK(exponents(1.0, p).alpha2.imag() != 0.0);
  const Exponents flipped = exponents(E, p, {1, -1, 1});
  CHECK(flipped.alpha1 == -ex.alpha1);
  CHECK(std::abs(heun_frame_scale(p) - 2.0 * s2 * 9.0) < 1e-12);
}

TEST_CASE("Fuchsian relation and the alpha beta identity") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> e(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const PotentialParams p = random_params(rng);
    const double E = e(rng);
    const ExponentSigns signs{i % 2 ? 1 : -1, (i / 2) % 2 ? 1 : -1, (i / 4) % 2 ? 1 : -1};
    const HeunData h = heun_params(E, p, signs);
    CAPTURE(p.a);
    CAPTURE(E);
    CHECK(std::abs(1.0 + h.alpha + h.beta - h.gamma - h.delta - h.epsilon) <= 1e-12 * (1.0 + std::abs(h.alpha)));
    const cplx rhs = std::pow(h.alpha1 + h.alpha2 + h.alpha3, 2) + heun_frame_scale(p) * (E - p.V0);
    CHECK(std::abs(h.alpha * h.beta - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
    CHECK(std::abs(h.gamma - (1.0 + 2.0 * h.alpha1)) < 1e-12 * (1.0 + std::abs(h.gamma)));
    CHECK(std::abs(h.delta - (1.0 + 2.0 * h.alpha2)) < 1e-12 * (1.0 + std::abs(h.delta)));
    CHECK(h.epsilon == cplx(-1.0));
    CHECK(h.a1 == p.a);
  }
}

TEST_CASE("termination identity on the solvable family") {
  const PotentialParams p = reference_well();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double E = -6.0 + 12.0 * i / 99.0;
    worst = std::max(worst, termination_check(heun_params(E, p)));
  }
  CHECK(worst <= 1e-10);

  std::mt19937 rng(8);
  std::uniform_real_distribution<double> e(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const PotentialParams q = random_params(rng);
    const HeunData h = heun_params(e(rng), q);
    CHECK(termination_check(h) <= 1e-10 * scale_of(h));
  }
}

TEST_CASE("sign flip of alpha0 swaps alpha and beta") {
  const PotentialParams p = reference_well();
  for (double E : {-4.0, -0.7, 2.5, 8.0}) {
    const HeunData plus = heun_params(E, p, {1, 1, 1});
    const HeunData minus = heun_params(E, p, {-1, 1, 1});
    CAPTURE(E);
    CHECK(std::abs(plus.alpha - minus.beta) < 1e-12 * (1.0 + std::abs(plus.alpha)));
    CHECK(std::abs(plus.beta - minus.alpha) < 1e-12 * (1.0 + std::abs(plus.beta)));
    CHECK(std::abs(termination_check(plus) - termination_check(minus)) <= 1e-10);
  }
}

TEST_CASE("general coefficients") {
  const PotentialParams p = reference_well();
  const double E = -0.9;
  const HeunData plain = heun_params(E, p);
  const HeunData general = heun_params_general(E, GeneralPotentialCoeffs{p.V0, p.V1, 0.0, 0.0, 0.0}, p);
  CHECK(std::abs(general.q - plain.q) < 1e-12 * std::abs(plain.q));
  CHECK(std::abs(general.alpha * general.beta - plain.alpha * plain.beta) < 1e-10 * std::abs(plain.alpha * plain.beta));
  CHECK(general.alpha3 == cplx(0.0));

  // V2 alone breaks the identity
  const HeunData broken = heun_params_general(E, GeneralPotentialCoeffs{p.V0, p.V1, 0.1, 0.0, 0.0}, p);
  CHECK(termination_check(broken) > 1e-3 * scale_of(broken));

  // exponent equations: alpha3 roots satisfy alpha3 (alpha3 - 2) = k V4 / a^2
  const GeneralPotentialCoeffs c4{p.V0, p.V1, 0.0, 0.0, 0.3};
  const ExponentEquations eqs = exponent_equations_general(E, c4, p);
  const double rhs = heun_frame_scale(p) * 0.3 / (p.a * p.a);
  for (cplx r : {eqs.alpha3_roots.first, eqs.alpha3_roots.second}) CHECK(std::abs(r * (r - 2.0) - rhs) < 1e-10 * (1.0 + rhs));
  const ExponentEquations eqs0 = exponent_equations_general(E, {p.V0, p.V1, 0.0, 0.0, 0.0}, p);
  CHECK(std::abs(eqs0.alpha1_sq - plain.alpha1 * plain.alpha1) < 1e-10 * std::abs(eqs0.alpha1_sq));
  CHECK(std::abs(eqs0.alpha2_sq - plain.alpha2 * plain.alpha2) < 1e-10 * std::abs(eqs0.alpha2_sq));
  // epsilon = -1 + 2 alpha3 leaves {-1, 0}: the identity is not defined there
  CHECK_THROWS_AS(termination_check(heun_params_general(E, c4, p)), DomainError);
}

TEST_CASE("conditional family surface") {
  const PotentialParams p = reference_well();
  CHECK(conditional_family_check({p.V0, p.V1, 0.0, 0.0, 0.0}, p) == 0.0);
  const double k = heun_frame_scale(p), a = p.a, V3 = 0.25;
  const double V2 = -V3 * ((1.0 + a) / a - k * V3 / (a * a));
  CHECK(std::abs(conditional_family_check({p.V0, p.V1, V2, V3, 0.0}, p)) < 1e-12);
  CHECK(std::abs(conditional_family_check({p.V0, p.V1, V2 + 0.1, V3, 0.0}, p) - 0.1) < 1e-12);
}

TEST_CASE("HeunData serializes flat") {
  const auto j = to_json(heun_params(-1.0, reference_well()));
  for (const char* key : {"a1", "a2", "a3", "m1", "m2", "m3", "E", "alpha0_re", "alpha0_im", "alpha_re", "beta_im", "gamma_re",
                          "delta_re", "epsilon_re", "q_re", "q_im"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  CHECK(j["epsilon_re"].get<double>() == -1.0);
  CHECK(j["a1"].get<double>() == -2.0);
}
