#include "heunwell/wavefunction.hpp"

#include <algorithm>
#include <cmath>

#include "heunwell/errors.hpp"
#include "heunwell/specfun.hpp"

namespace heunwell {

namespace {

using specfun::gauss_2f1;
using specfun::gauss_2f1_derivative;
using specfun::HypParams2F1;

constexpr double kDegenerateTol = 1e-12;

// Local coordinates of a branch point for the hypergeometric arguments.
struct Local {
  double w;           // (a - z)/(a - 1)
  double one_minus_w;  // (z - 1)/(a - 1)
  double z_minus_a;
  double z_minus_1;
};

Local local_of(const BranchPoint& pt, double a) {
  const double zeta = -pt.one_minus_z / (a - 1.0);
  return {(a - pt.z) / (a - 1.0), zeta, pt.z - a, -pt.one_minus_z};
}

// |z - a|^al1 |z - 1|^al2
cplx prefactor(const Local& loc, cplx al1, cplx al2) {
  return std::exp(al1 * std::log(std::abs(loc.z_minus_a)) + al2 * std::log(std::abs(loc.z_minus_1)));
}

double scale_of(std::initializer_list<cplx> values) {
  double s = 1.0;
  for (cplx v : values) s = std::max(s, std::abs(v));
  return s;
}

void require_on_branch(const BranchPoint& pt, const PotentialParams& p) {
  if ((p.variant == Variant::well) != (p.a < 0.0)) {
    throw DomainError(
        "closed-form wavefunctions need (a - z)/(a - 1) in (0, 1): the well with a < 0 or the barrier with a > 1");
  }
  // Tested through 1 - z, since z itself rounds to 1 far out on the tail.
  const bool ok = p.variant == Variant::well
                      ? pt.z > 0.0 && pt.one_minus_z > 0.0
                      : pt.one_minus_z < 0.0 && std::isfinite(pt.z) && (p.a < 1.0 || pt.z <= p.a);
  if (!ok) {
    throw DomainError("z = " + format_number(pt.z) + " is off the " + to_string(p.variant) + " branch");
  }
}

// F_k^(n)(arg) for the n-th derivative with respect to its own argument.
cplx hyp(cplx a, cplx b, cplx c, double arg, double complement, int order) {
  return gauss_2f1_derivative(HypParams2F1{a, b, c, arg}, order, complement);
}

}  // namespace

PsiValue psi_fundamental_with_derivative(const BranchPoint& pt, double E, const PotentialParams& p,
                                         ExponentSigns signs) {
  require_on_branch(pt, p);
  const HeunData h = heun_params(E, p, signs);
  const double a = p.a;
  const cplx denom = a * h.alpha2 - h.alpha1;
  if (std::abs(denom) < kDegenerateTol * scale_of({h.alpha1, a * h.alpha2})) {
    throw DegenerateParameters("a*alpha2 - alpha1 vanishes; the fundamental two-term form is undefined here");
  }
  const cplx K = 2.0 * h.alpha1 / denom;
  const Local loc = local_of(pt, a);
  const double dw_dz = -1.0 / (a - 1.0);

  const cplx F1 = hyp(h.alpha, h.beta, h.gamma, loc.w, loc.one_minus_w, 0);
  const cplx F2 = hyp(h.alpha, h.beta, h.gamma - 1.0, loc.w, loc.one_minus_w, 0);
  const cplx dF1 = hyp(h.alpha, h.beta, h.gamma, loc.w, loc.one_minus_w, 1);
  const cplx dF2 = hyp(h.alpha, h.beta, h.gamma - 1.0, loc.w, loc.one_minus_w, 1);

  const cplx P = prefactor(loc, h.alpha1, h.alpha2);
  const cplx u = F1 + K * F2;
  const cplx u_z = (dF1 + K * dF2) * dw_dz;
  const cplx log_deriv = h.alpha1 / loc.z_minus_a + h.alpha2 / loc.z_minus_1;
  const cplx psi_z = P * (u_z + u * log_deriv);
  return {P * u, psi_z * dz_dx(pt, p)};
}

cplx psi_fundamental(const BranchPoint& pt, double E, const PotentialParams& p, ExponentSigns signs) {
  return psi_fundamental_with_derivative(pt, E, p, signs).psi;
}

cplx psi_fundamental(double z, double E, const PotentialParams& p, ExponentSigns signs) {
  return psi_fundamental(BranchPoint{z, 1.0 - z}, E, p, signs);
}

PsiValue psi_general_with_derivative(const BranchPoint& pt, const WaveSolution& ws) {
  const PotentialParams& p = ws.params;
  require_on_branch(pt, p);
  if (ws.c1 == 0.0 && ws.c2 == 0.0) throw InvalidParameter("c1 and c2 cannot both vanish");
  const HeunData h = heun_params(ws.E, p, ws.signs);
  const double a = p.a;
  const cplx D = h.alpha1 + a * h.alpha2;
  if (std::abs(D) < kDegenerateTol * scale_of({h.alpha1, a * h.alpha2})) {
    throw DegenerateParameters("alpha1 + a*alpha2 vanishes; the derivative form is undefined here");
  }
  const cplx c_second = 1.0 + h.alpha + h.beta - h.gamma;
  if (ws.c2 != 0.0 && specfun::nonpositive_integer(c_second)) {
    throw DegenerateParameters(
        "second-kind lower parameter 1 + alpha + beta - gamma is a non-positive integer "
        "(zero energy on a vanishing tail); use the zero-energy solution");
  }

  const Local loc = local_of(pt, a);
  const double inv = 1.0 / (a - 1.0);
  cplx F = 0.0, Fz = 0.0, Fzz = 0.0;
  if (ws.c1 != 0.0) {
    F += ws.c1 * hyp(h.alpha, h.beta, h.gamma, loc.w, loc.one_minus_w, 0);
    Fz -= ws.c1 * inv * hyp(h.alpha, h.beta, h.gamma, loc.w, loc.one_minus_w, 1);
    Fzz += ws.c1 * inv * inv * hyp(h.alpha, h.beta, h.gamma, loc.w, loc.one_minus_w, 2);
  }
  if (ws.c2 != 0.0) {
    F += ws.c2 * hyp(h.alpha, h.beta, c_second, loc.one_minus_w, loc.w, 0);
    Fz += ws.c2 * inv * hyp(h.alpha, h.beta, c_second, loc.one_minus_w, loc.w, 1);
    Fzz += ws.c2 * inv * inv * hyp(h.alpha, h.beta, c_second, loc.one_minus_w, loc.w, 2);
  }
  const cplx U = F + loc.z_minus_a * Fz / D;
  const cplx U_z = Fz + (Fz + loc.z_minus_a * Fzz) / D;
  const cplx P = prefactor(loc, h.alpha1, h.alpha2);
  const cplx log_deriv = h.alpha1 / loc.z_minus_a + h.alpha2 / loc.z_minus_1;
  const cplx psi_z = P * (U_z + U * log_deriv);
  return {P * U, psi_z * dz_dx(pt, p)};
}

cplx psi_general(const BranchPoint& pt, const WaveSolution& ws) {
  return psi_general_with_derivative(pt, ws).psi;
}

cplx psi_general(double x, const WaveSolution& ws) { return psi_general(locate(x, ws.params), ws); }

// ---------------------------------------------------------------------------
// Zero energy

namespace {

// 3F2(al, be, e + 1; ga, e; t) = F(al, be; ga; t) + (t/e) F'(al, be; ga; t).
// The direct series is used where it converges quickly; near t = 1 the
// Gauss-function form inherits the logarithmic continuation.
cplx clausen_shifted(cplx al, cplx be, cplx e, cplx ga, double t, double complement) {
  if (t <= 0.9) return specfun::clausen_3f2({al, be, e + 1.0, ga, e, t});
  return hyp(al, be, ga, t, complement, 0) + (t / e) * hyp(al, be, ga, t, complement, 1);
}

}  // namespace

ZeroEnergySolution::ZeroEnergySolution(const PotentialParams& p, cplx c1) : p_(p), c1_(c1) {
  p.validate();
  if (p.variant != Variant::well || !(p.a < 0.0)) {
    throw DomainError("the zero-energy solution is implemented for the well variant with a < 0");
  }
  if (std::abs(p.V0 + p.V1) > 1e-12 * std::max({1.0, std::abs(p.V0), std::abs(p.V1)})) {
    throw DomainError("the zero-energy solution requires a vanishing tail, V0 + V1 = 0");
  }
  if (c1 == 0.0) throw InvalidParameter("c1 must be nonzero");
  alpha1_ = std::sqrt(cplx(2.0 * p.a * (p.a - 1.0) * p.m * p.sigma * p.sigma * p.V0)) / p.hbar;
  r_ = std::sqrt((p.a - 1.0) / p.a);
  if (alpha1_ == 0.0) throw DegenerateParameters("alpha1 vanishes (V0 = 0)");
  // psi(z = 0) = 0 fixes the mixing.
  const auto [t1, t2] = terms(BranchPoint{0.0, 1.0});
  c2_ = -c1_ * t1 / t2;
}

std::pair<cplx, cplx> ZeroEnergySolution::terms(const BranchPoint& pt) const {
  const double a = p_.a;
  const Local loc = local_of(pt, a);
  const cplx al1 = alpha1_;
  const double r = r_;
  const double log_zma = std::log(std::abs(loc.z_minus_a));
  const cplx first = std::exp(al1 * log_zma) *
                     clausen_shifted(al1 * (1.0 - r), al1 * (1.0 + r), al1, 1.0 + 2.0 * al1, loc.w, loc.one_minus_w);
  const cplx second = std::exp(-al1 * log_zma) *
                      clausen_shifted(-al1 * (1.0 + r), al1 * (r - 1.0), -al1 / a, 1.0, loc.one_minus_w, loc.w);
  return {first, second};
}

cplx ZeroEnergySolution::at(const BranchPoint& pt) const {
  const auto [t1, t2] = terms(pt);
  return c1_ * t1 + c2_ * t2;
}

cplx ZeroEnergySolution::operator()(double x) const { return at(locate(x, p_)); }

cplx psi_zero_energy(double x, const PotentialParams& p, cplx c1) { return ZeroEnergySolution(p, c1)(x); }

LogTailFit fit_log_tail(const ZeroEnergySolution& sol, double x_lo, double x_hi, std::size_t n) {
  if (n < 3) throw InvalidParameter("tail fit needs at least 3 points");
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  if (x_hi < x_lo) std::reverse(xs.begin(), xs.end());
  const auto points = locate_sorted(xs, sol.params());
  std::vector<double> basis(n), values(n);
  double s1 = 0, sl = 0, sll = 0, sy = 0, sly = 0;
  for (std::size_t i = 0; i < n; ++i) {
    basis[i] = std::log(points[i].one_minus_z);
    values[i] = sol.at(points[i]).real();
    s1 += 1.0;
    sl += basis[i];
    sll += basis[i] * basis[i];
    sy += values[i];
    sly += basis[i] * values[i];
  }
  const double det = s1 * sll - sl * sl;
  if (det == 0.0) throw DegenerateParameters("tail fit window collapses to a point");
  const double B = (s1 * sly - sl * sy) / det;
  const double A = (sy - B * sl) / s1;
  double max_dev = 0.0, max_val = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    max_dev = std::max(max_dev, std::abs(values[i] - (A + B * basis[i])));
    max_val = std::max(max_val, std::abs(values[i]));
  }
  return {A, B, max_val > 0.0 ? max_dev / max_val : 0.0};
}

// ---------------------------------------------------------------------------
// Residual and Wronskian

namespace {

double residual_from_samples(const std::vector<cplx>& psi, const std::vector<double>& V, double E,
                             const PotentialParams& p, double h) {
  const double k = 2.0 * p.m / (p.hbar * p.hbar);
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 1; i + 1 < psi.size(); ++i) {
    const cplx d2 = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (h * h);
    worst = std::max(worst, std::abs(d2 + k * (E - V[i]) * psi[i]));
    scale = std::max(scale, std::abs(d2));
  }
  if (scale == 0.0) return worst;
  return worst / scale;
}

void check_domain(const GridDomain& grid) {
  if (grid.n < 3) throw InvalidParameter("residual grid needs at least 3 nodes");
  if (!(grid.x_step > 0.0)) throw InvalidParameter("residual grid step must be positive");
}

}  // namespace

double ode_residual(const std::function<cplx(double)>& psi, double E, const PotentialParams& p,
                    const GridDomain& grid) {
  check_domain(grid);
  std::vector<cplx> values(grid.n);
  std::vector<double> V(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x_start + static_cast<double>(i) * grid.x_step;
    values[i] = psi(x);
    V[i] = potential_value(x, p);
  }
  return residual_from_samples(values, V, E, p, grid.x_step);
}

double ode_residual(const WaveSolution& ws, const GridDomain& grid) {
  check_domain(grid);
  std::vector<double> xs(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) xs[i] = grid.x_start + static_cast<double>(i) * grid.x_step;
  const auto points = locate_sorted(xs, ws.params);
  std::vector<cplx> values(grid.n);
  std::vector<double> V(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    values[i] = psi_general(points[i], ws);
    V[i] = ws.params.V0 + ws.params.V1 / points[i].z;
  }
  return residual_from_samples(values, V, ws.E, ws.params, grid.x_step);
}

cplx wronskian(const WaveSolution& first, const WaveSolution& second, double x) {
  const BranchPoint pt = locate(x, first.params);
  const PsiValue f = psi_general_with_derivative(pt, first);
  const PsiValue g = psi_general_with_derivative(pt, second);
  return f.psi * g.dpsi_dx - f.dpsi_dx * g.psi;
}

}  // namespace heunwell
