#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wapprox/config.hpp"
#include "wapprox/expr.hpp"

namespace wapprox {

/// Compact nondegenerate interval [lo, hi].
class Interval {
 public:
  Interval(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  bool contains(double t) const { return lo_ <= t && t <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

std::string to_string(GridScheme s);
GridScheme grid_scheme_from_string(const std::string& s);

/// Offsets a +- delta0 * 2^-k, k = 0..levels, placed around each special point.
struct RefineParams {
  double delta0;
  int levels;
};

struct Grid {
  Interval interval;
  std::vector<double> points;  // strictly increasing, front() == lo, back() == hi
  GridScheme scheme;
};

/// `refined` uses a uniform base of n points plus cascades around the special
/// points (refine defaults to delta0 = |I|/8, 12 levels). The other schemes
/// ignore `refine` but still insert the special points themselves.
Grid make_grid(const Interval& interval, std::size_t n, GridScheme scheme,
               std::span<const double> special_points = {},
               std::optional<RefineParams> refine = std::nullopt);

/// The evaluation grid every norm and membership check uses by default.
Grid default_grid(const Interval& interval, std::span<const double> special_points, const Config& cfg = {});

struct SampledFunction {
  Grid grid;
  std::vector<double> values;
};

/// values[k] = e(points[k]); evaluation errors carry the offending point.
SampledFunction sample(const FuncExpr& e, const Grid& g);

}  // namespace wapprox
