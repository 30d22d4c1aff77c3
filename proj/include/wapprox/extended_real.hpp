#pragma once

// Arithmetic on [-inf, +inf] with the conventions used throughout:
//   0 * (+-inf) = 0,  x / 0 = sign(x) * inf for x != 0,
//   inf - inf, 0 / 0, inf / inf, log(<0), sin(inf), negative base with a
//   non-integer exponent -> EvalDomainError.
// NaN is never produced; anything that would yield NaN raises instead.

#include <cmath>
#include <limits>

namespace wapprox::ereal {

inline constexpr double inf = std::numeric_limits<double>::infinity();

double add(double a, double b);
double sub(double a, double b);
double mul(double a, double b);
double div(double a, double b);
double pow(double base, double exponent);
double log(double a);
double sin(double a);
double cos(double a);
double exp(double a);
double sign(double a);

/// |f - p| * w with the 0 * inf = 0 convention. Used by every weighted norm.
inline double weighted_residual(double f, double p, double w) {
  return mul(std::fabs(sub(f, p)), w);
}

}  // namespace wapprox::ereal
