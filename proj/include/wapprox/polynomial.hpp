#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wapprox/expr.hpp"
#include "wapprox/grid.hpp"

namespace wapprox {

enum class Basis { monomial, chebyshev, bernstein };

std::string to_string(Basis b);

/// Polynomial on an interval in one of three bases. Evaluation runs the
/// basis' own recurrence: Horner (monomial, in x), Clenshaw (chebyshev, in
/// the affine image of x on [-1, 1]), de Casteljau (bernstein, in
/// s = (x - lo) / (hi - lo)).
struct Polynomial {
  Interval interval;
  Basis basis;
  std::vector<double> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  double operator()(double x) const;
};

/// Bernstein polynomial B_n f with coefficients f(lo + k |I| / n).
/// Throws EvalDomainError if f is infinite or undefined at a node.
Polynomial bernstein_approx(const FuncExpr& f, const Interval& interval, std::size_t n);

/// Nodes of the degree-n Chebyshev interpolant: second-kind points mapped to
/// the interval, returned in the order k = 0..n (descending in x). For n = 0
/// the single node is the midpoint.
std::vector<double> chebyshev_nodes(const Interval& interval, std::size_t n);

/// Interpolant through values given at chebyshev_nodes(interval, n).
Polynomial chebyshev_from_values(const Interval& interval, const std::vector<double>& node_values);

Polynomial chebyshev_interp(const FuncExpr& f, const Interval& interval, std::size_t n);

}  // namespace wapprox
