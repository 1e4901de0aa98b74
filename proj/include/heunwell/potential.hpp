#pragma once

// The five-parameter singular-well / step-barrier potential
//
//     V(z) = V0 + V1 / z,     x(z) = x0 + sigma (a ln(z - a) - ln(z - 1)),
//
// in its two real variants. The well variant lives on z in (0, 1) and maps
// onto a half-line starting at x0; the barrier variant lives on z > 1 (z in
// (1, a) when a > 1) and maps onto the whole real line. Additive constants
// are chosen so that both maps are real:
//
//   well:    x = x0 + sigma (a ln(1 - z/a) - ln(1 - z))
//   barrier: x = x0 + sigma (a ln((z - a)/(1 - a)) - ln(z - 1))

#include <string>
#include <vector>

#include "heunwell/grid.hpp"

namespace heunwell {

enum class Variant { well, barrier };

std::string to_string(Variant v);
/// Parses "well" / "barrier"; throws InvalidParameter otherwise.
Variant parse_variant(const std::string& text);

struct PotentialParams {
  double a = -2.0;
  double sigma = 1.0;
  double x0 = 0.0;
  double V0 = 0.0;
  double V1 = 0.0;
  Variant variant = Variant::well;
  double m = 1.0;
  double hbar = 1.0;

  /// Throws InvalidParameter naming the first violated invariant.
  void validate() const;
};

/// One-line human-readable record of every field.
std::string describe(const PotentialParams& p);

/// Open z-interval of the variant branch; `hi` may be +infinity.
struct Branch {
  double lo;
  double hi;
};
Branch z_branch(const PotentialParams& p);

/// Open x-interval covered by the variant (may be unbounded on either side).
Branch x_image(const PotentialParams& p);

/// A point on the branch carrying 1 - z separately, since z itself cannot
/// resolve the approach to z = 1 in double precision.
struct BranchPoint {
  double z;
  double one_minus_z;
};

double x_of_z(double z, const PotentialParams& p);

/// Inverse map. |x_of_z(z) - x| <= 1e-12 max(1, |x|); throws DomainError off
/// the image and BracketFailure if the root cannot be enclosed.
double z_of_x(double x, const PotentialParams& p);
BranchPoint locate(double x, const PotentialParams& p);

/// dz/dx = (z - a)(z - 1) / (sigma (a - 1) z).
double dz_dx(double z, const PotentialParams& p);
double dz_dx(const BranchPoint& pt, const PotentialParams& p);

/// V0 + V1 / z(x). Within 1e-10 of x0 on the well variant the leading
/// singular asymptote is used instead.
double potential_value(double x, const PotentialParams& p);

/// Samples potential_value at x_start + i (x_end - x_start)/(n - 1).
GridFunction sample_potential(const PotentialParams& p, double x_start, double x_end, std::size_t n);

/// Fast ordered evaluation of z along a monotone list of x values.
std::vector<BranchPoint> locate_sorted(const std::vector<double>& xs, const PotentialParams& p);

/// a = -1 closed form V0 + V1 / sqrt(1 + exp((x - x0)/sigma)). Only
/// sigma, x0, V0, V1 are read; a must equal -1.
double closed_form_a_minus1(double x, const PotentialParams& p);
BranchPoint a_minus1_z(double x, const PotentialParams& p);

/// Cubic closed form V0 + V1 / z with
/// z = -1 + 2 cosh((2/3) asinh(exp((x - x0)/(2 sigma)))).
/// Only sigma, x0, V0, V1 are read.
double closed_form_cubic(double x, const PotentialParams& p);
BranchPoint cubic_z(double x, const PotentialParams& p);

/// Barrier-variant parameters whose parametric curve coincides with the
/// a = -1 closed form: sigma -> -sigma, x0 -> x0 + sigma ln 2.
PotentialParams a_minus1_parametric_equivalent(const PotentialParams& closed);

/// Barrier-variant parameters (a = -2) whose parametric curve coincides with
/// the cubic closed form: sigma -> -sigma, x0 -> x0 + sigma ln(9/4).
PotentialParams cubic_parametric_equivalent(const PotentialParams& closed);

/// Leading singular term near x0 on the well variant:
/// V1 sqrt((a - 1) sigma / (2 a (x - x0))). Throws DomainError when the
/// radicand is not positive.
double asymptote_origin(double x, const PotentialParams& p);

/// Leading deviation V - (V0 + V1) far from x0 on the well variant:
/// ((a - 1)/a)^a V1 exp(-(x - x0)/sigma).
double asymptote_infinity(double x, const PotentialParams& p);

}  // namespace heunwell
