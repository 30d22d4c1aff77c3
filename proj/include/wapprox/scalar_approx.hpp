#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wapprox/config.hpp"
#include "wapprox/expr.hpp"
#include "wapprox/grid.hpp"
#include "wapprox/polynomial.hpp"
#include "wapprox/weights.hpp"

namespace wapprox {

enum class Engine { chebyshev, bernstein };

std::string to_string(Engine e);
Engine engine_from_string(const std::string& s);

using SweepTrace = std::vector<std::pair<std::size_t, double>>;

struct ApproxOptions {
  Engine engine = Engine::chebyshev;
  std::size_t max_degree = 512;
  /// Evaluation grid; defaults to the default grid refined at the weight's
  /// probed points and at f's override points.
  std::optional<Grid> grid;
};

struct ApproxResult {
  Polynomial poly;
  double weighted_error;
  std::size_t degree;
  SweepTrace sweep_trace;
  double regularization_radius;  // half-width of the modified region, 0 without singular points
};

/// max over the grid of |f - p| w with 0 * inf = 0; may be +inf.
double weighted_sup_error(const FuncExpr& f, const Polynomial& p, const ScalarWeight& w, const Grid& g);

/// Replaces f on [a - eta, a + eta] (clipped to the interval) at every
/// singular point a of the report by the broken line through
/// (a - eta, f(a - eta)), (a, f(a)), (a + eta, f(a + eta)).
/// Throws MissingOverride without an explicit f(a) and RegularizationError
/// when eta is not positive or two bridges would overlap.
FuncExpr regularize_near_singularities(const FuncExpr& f, const SingularityReport& report, double eta);

/// Degree sweep n = 4, 8, 16, ... <= max_degree on a regularized copy of f,
/// measuring the weighted error against f itself; returns the first degree
/// whose error is below eps.
///
/// Near each singular point a the target is f with its deviation from f(a)
/// clipped at a common level (scanned over a geometric ladder, the unclipped
/// target included) and bridged linearly across [a - eta, a + eta]; eta starts
/// at min(eps / (2 (1 + w sup on the outermost window)), gap / 4) and is halved
/// until the bridge costs less than eps / 2 in the weighted norm. A second
/// family scales the deviation from f(a) by min(1, w / omega)^2 near each
/// singular point, omega = eps * 2^k for k = 0..3. Every degree keeps the
/// candidate with the smallest error against f.
///
/// Throws WeightUnbounded, MissingOverride (f(a) undefined or infinite at a
/// singular point) and MaxDegreeExceeded with the sweep trace.
ApproxResult approx_scalar_weighted(const FuncExpr& f, const ScalarWeight& w, double eps, const ApproxOptions& opts = {},
                                    const Config& cfg = {});

/// Same construction as approx_scalar_weighted but keeps going through every
/// degree up to max_degree; entry i is the best approximant at degree i of
/// the sweep (error +inf and a zero polynomial when no target was finite).
std::vector<ApproxResult> degree_sweep(const FuncExpr& f, const ScalarWeight& w, double eps,
                                       const ApproxOptions& opts = {}, const Config& cfg = {});

/// Approximation through the isometry f -> f w: q approximates f w in the
/// plain sup norm and q / w is the weighted approximant of f.
struct DivideOutResult {
  Polynomial q;
  FuncExpr inverse_weight;
  double weighted_error;    // max |f - q / w| w on the grid
  double unweighted_error;  // max |f w - q| on the same grid
  std::size_t degree;
  SweepTrace sweep_trace;   // unweighted errors
  Grid grid;

  double approximant(double x) const { return q(x) * inverse_weight(x); }
};

/// Degrees 0, 1, 2, 4, 8, ... <= max_degree. Throws NotInvertible and
/// MaxDegreeExceeded.
DivideOutResult divide_out_approx(const FuncExpr& f, const ScalarWeight& w, double eps, const ApproxOptions& opts = {},
                                  const Config& cfg = {});

/// Degrees visited by the approximation sweep.
std::vector<std::size_t> sweep_degrees(std::size_t max_degree);

}  // namespace wapprox
