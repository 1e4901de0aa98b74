#include "heunwell/heun.hpp"

#include <cmath>

#include "heunwell/errors.hpp"

namespace heunwell {

namespace {

// Accessory parameter for singularities (a, 1, 0) in the Heun frame.
cplx accessory_q(double E, double V0, double V1, double a, double k, cplx al1, cplx al2, cplx al3) {
  return k * (V1 - (1.0 + a) * (E - V0)) + (-al2 * al2 + (-1.0 + al1 + al3) * (al1 + al3)) +
         a * (-al1 * al1 + (-1.0 + al2 + al3) * (al2 + al3));
}

HeunData assemble(double E, const PotentialParams& p, cplx al0, cplx al1, cplx al2, cplx al3, double V0,
                  double V1) {
  HeunData h;
  h.a1 = p.a;
  h.E = E;
  h.alpha0 = al0;
  h.alpha1 = al1;
  h.alpha2 = al2;
  h.alpha3 = al3;
  h.alpha = al1 + al2 + al3 + al0;
  h.beta = al1 + al2 + al3 - al0;
  h.gamma = 1.0 + 2.0 * al1;
  h.delta = 1.0 + 2.0 * al2;
  h.epsilon = -1.0 + 2.0 * al3;
  h.q = accessory_q(E, V0, V1, p.a, heun_frame_scale(p), al1, al2, al3);
  return h;
}

}  // namespace

double heun_frame_scale(const PotentialParams& p) {
  const double sigma_h = p.sigma * (p.a - 1.0);
  return 2.0 * p.m * sigma_h * sigma_h / (p.hbar * p.hbar);
}

Exponents exponents(double E, const PotentialParams& p, ExponentSigns signs) {
  const double k = 2.0 * p.m * p.sigma * p.sigma / (p.hbar * p.hbar);
  const double a = p.a;
  const cplx r0 = k * (a - 1.0) * (a - 1.0) * (p.V0 - E);
  const cplx r1 = k * a * a * (p.V0 - E + p.V1 / a);
  const cplx r2 = k * (p.V0 - E + p.V1);
  return {static_cast<double>(signs.s0) * std::sqrt(r0), static_cast<double>(signs.s1) * std::sqrt(r1),
          static_cast<double>(signs.s2) * std::sqrt(r2)};
}

HeunData heun_params(double E, const PotentialParams& p, ExponentSigns signs) {
  const Exponents ex = exponents(E, p, signs);
  return assemble(E, p, ex.alpha0, ex.alpha1, ex.alpha2, 0.0, p.V0, p.V1);
}

ExponentEquations exponent_equations_general(double E, const GeneralPotentialCoeffs& c,
                                              const PotentialParams& p) {
  const double k = heun_frame_scale(p);
  const double a = p.a;
  ExponentEquations out;
  out.alpha1_sq = k / (a * a * (a - 1.0) * (a - 1.0)) *
                  (c.V4 + a * c.V3 + a * a * c.V2 + a * a * a * c.V1 + a * a * a * a * (c.V0 - E));
  out.alpha2_sq = -k / ((a - 1.0) * (a - 1.0)) * (E - c.V0 - c.V1 - c.V2 - c.V3 - c.V4);
  const cplx root = std::sqrt(cplx(1.0 + k * c.V4 / (a * a)));
  out.alpha3_roots = {1.0 - root, 1.0 + root};
  return out;
}

HeunData heun_params_general(double E, const GeneralPotentialCoeffs& c, const PotentialParams& p,
                             ExponentSigns signs) {
  const ExponentEquations eq = exponent_equations_general(E, c, p);
  const double k = heun_frame_scale(p);
  const cplx al0 = static_cast<double>(signs.s0) * std::sqrt(cplx(k * (c.V0 - E)));
  const cplx al1 = static_cast<double>(signs.s1) * std::sqrt(eq.alpha1_sq);
  const cplx al2 = static_cast<double>(signs.s2) * std::sqrt(eq.alpha2_sq);
  return assemble(E, p, al0, al1, al2, eq.alpha3_roots.first, c.V0, c.V1);
}

double termination_check(const HeunData& h) {
  const double a = h.a1;
  if (std::abs(h.epsilon + 1.0) < 1e-12) {
    return std::abs(h.q * h.q + h.q * (h.gamma - 1.0 + a * (h.delta - 1.0)) + a * h.alpha * h.beta);
  }
  if (std::abs(h.epsilon) < 1e-12) return std::abs(h.q - a * h.alpha * h.beta);
  throw DomainError("termination condition is implemented for epsilon = -1 and epsilon = 0 only");
}

double conditional_family_check(const GeneralPotentialCoeffs& c, const PotentialParams& p) {
  const double a = p.a;
  const double k = heun_frame_scale(p);
  return c.V2 + c.V3 * ((1.0 + a) / a - k * c.V3 / (a * a));
}

}  // namespace heunwell
