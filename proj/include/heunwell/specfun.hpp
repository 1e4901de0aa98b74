#pragma once

// Special-function kernels: Gauss 2F1, Clausen 3F2, the real dilogarithm,
// inverse hyperbolic cotangent and the complex gamma family they rely on.
//
// Every function here is pure and reentrant.

#include <complex>
#include <optional>

namespace heunwell::specfun {

using cplx = std::complex<double>;

struct HypParams2F1 {
  cplx a;
  cplx b;
  cplx c;
  cplx z;
};

struct HypParams3F2 {
  cplx a1;
  cplx a2;
  cplx a3;
  cplx b1;
  cplx b2;
  cplx z;
};

/// Gauss hypergeometric function 2F1(a, b; c; z), principal branch.
///
/// Direct power series for |z| <= 0.9; beyond that the argument is mapped by
/// 1-z, z/(z-1) or 1/(1-z), whichever gives the smallest modulus. Integer
/// c-a-b is handled by the logarithmic limit formulas. Real z > 1 lies on the
/// cut and is rejected.
///
/// Throws DomainError for a forbidden non-positive integer c or z on the cut,
/// NonConvergence when the 5000-term budget is exhausted.
cplx gauss_2f1(const HypParams2F1& p);

/// Same as gauss_2f1, with 1 - z supplied by the caller.
///
/// Near z = 1 the complement cannot be recovered from z in double precision;
/// callers that know it exactly (e.g. from a tail coordinate) pass it here.
cplx gauss_2f1(const HypParams2F1& p, cplx one_minus_z);

/// d/dz 2F1(a, b; c; z) = (ab/c) 2F1(a+1, b+1; c+1; z).
cplx gauss_2f1_dz(const HypParams2F1& p);
cplx gauss_2f1_dz(const HypParams2F1& p, cplx one_minus_z);

/// k-th z-derivative, (a)_k (b)_k / (c)_k * 2F1(a+k, b+k; c+k; z).
cplx gauss_2f1_derivative(const HypParams2F1& p, int order, cplx one_minus_z);

/// Clausen generalized hypergeometric 3F2 by direct series (|z| < 1).
///
/// Throws DomainError on a forbidden lower parameter, NonConvergence for
/// |z| >= 1 (non-terminating) or an exhausted term budget.
cplx clausen_3f2(const HypParams3F2& p);

/// Real dilogarithm Li2(x) for x <= 1. Throws DomainError for x > 1.
double dilog(double x);

/// Inverse hyperbolic cotangent, (1/2) ln((x+1)/(x-1)) for |x| > 1.
double arccoth(double x);

/// Principal-branch log Gamma (up to multiples of 2*pi*i in the imaginary
/// part, which is harmless after exponentiation).
cplx log_gamma(cplx z);

/// Gamma(z); overflows like the real function does.
cplx gamma(cplx z);

/// 1 / Gamma(z), exactly zero at the poles z = 0, -1, -2, ...
cplx rgamma(cplx z);

/// Digamma psi(z) = Gamma'(z)/Gamma(z).
cplx digamma(cplx z);

/// If v is (numerically) a non-positive integer -n, returns n.
std::optional<int> nonpositive_integer(cplx v);

}  // namespace heunwell::specfun
