#include "wapprox/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wapprox/error.hpp"
#include "wapprox/kernels.hpp"

namespace wapprox {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw GridError("interval must satisfy lo < hi with finite ends");
}

std::string to_string(GridScheme s) {
  switch (s) {
    case GridScheme::uniform: return "uniform";
    case GridScheme::chebyshev: return "chebyshev";
    case GridScheme::refined: return "refined";
  }
  return "?";
}

GridScheme grid_scheme_from_string(const std::string& s) {
  if (s == "uniform") return GridScheme::uniform;
  if (s == "chebyshev") return GridScheme::chebyshev;
  if (s == "refined" || s == "refined-near") return GridScheme::refined;
  throw GridError("unknown grid scheme '" + s + "'");
}

Grid make_grid(const Interval& interval, std::size_t n, GridScheme scheme,
               std::span<const double> special_points, std::optional<RefineParams> refine) {
  if (n < 2) throw GridError("grid needs at least 2 points");
  const double lo = interval.lo();
  const double hi = interval.hi();
  for (double a : special_points)
    if (!interval.contains(a)) throw GridError("special point " + format_number(a) + " lies outside the interval");

  std::vector<double> base(n);
  const double m = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    if (scheme == GridScheme::chebyshev) {
      // sin form keeps the nodes symmetric and hits the midpoint exactly
      const double s = std::sin(std::numbers::pi * (2.0 * kk - m) / (2.0 * m));
      base[k] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * s;
    } else {
      base[k] = lo + (hi - lo) * (kk / m);
    }
  }
  base.front() = lo;
  base.back() = hi;

  std::vector<double> extra(special_points.begin(), special_points.end());
  if (scheme == GridScheme::refined) {
    RefineParams rp = refine.value_or(RefineParams{interval.width() / 8.0, 12});
    for (double a : special_points) {
      for (int k = 0; k <= rp.levels; ++k) {
        const double d = std::ldexp(rp.delta0, -k);
        for (double x : {a - d, a + d})
          if (x > lo && x < hi && x != a) extra.push_back(x);
      }
    }
  }

  // base points that collide with a special point up to rounding yield to it
  const double snap = 1e-14 * interval.width();
  std::vector<double> pts;
  pts.reserve(base.size() + extra.size());
  for (double b : base) {
    bool shadowed = std::any_of(special_points.begin(), special_points.end(),
                                [&](double a) { return a != b && std::fabs(a - b) <= snap; });
    if (!shadowed) pts.push_back(b);
  }
  pts.insert(pts.end(), extra.begin(), extra.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return Grid{interval, std::move(pts), scheme};
}

Grid default_grid(const Interval& interval, std::span<const double> special_points, const Config& cfg) {
  return make_grid(interval, cfg.grid_n, cfg.grid_scheme, special_points,
                   RefineParams{cfg.grid_delta_fraction * interval.width(), cfg.grid_levels});
}

SampledFunction sample(const FuncExpr& e, const Grid& g) {
  SampledFunction s{g, std::vector<double>(g.points.size())};
  kernels::parallel::sample(e, g.points, s.values);
  return s;
}

}  // namespace wapprox
