#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wapprox/config.hpp"
#include "wapprox/grid.hpp"

namespace wapprox {

enum class Side { left, right };

std::string to_string(Side s);

struct WindowStat {
  double width;  // strictly decreasing along a trace
  double inf;    // inf of every sample taken in this window (inner windows included)
  double sup;
};

/// Estimate of the one-sided liminf / limsup of a function at a point.
struct SideLimitEstimate {
  double point = 0.0;
  Side side = Side::right;
  double liminf_est = 0.0;
  double limsup_est = 0.0;
  bool converged = false;
  std::vector<WindowStat> window_trace;
};

/// Samples `g` on nested windows (a, a + h_k] (right) or [a - h_k, a) (left),
/// h_k = delta0 * 2^-k clipped to the interval. Per window: samples_per_window
/// equispaced probes, golden-section polish of interior extrema, and in the
/// innermost window a geometric approach towards a. Window statistics are
/// accumulated from the inside out so the trace is exactly monotone.
///
/// The limit estimates extrapolate the window sequences when their last
/// differences decay (or grow) at a consistent geometric rate, and otherwise
/// take the innermost window's inf / sup. `converged` holds when both
/// sequences either settled to within tol_converge or followed a consistent
/// geometric rate.
///
/// Throws LimitError when the side points out of the interval.
SideLimitEstimate one_sided_cascade(const std::function<double(double)>& g, const Interval& interval, double a,
                                    Side side, const CascadeParams& params, double tol_converge);

}  // namespace wapprox
