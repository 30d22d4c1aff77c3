#pragma once

#include <cstddef>

namespace wapprox {

enum class GridScheme { uniform, chebyshev, refined };

/// Shrinking one-sided windows used to estimate essential limits.
/// Window k has width delta_fraction * |I| * 2^-k, k = 0..levels.
struct CascadeParams {
  double delta_fraction = 0.125;
  int levels = 24;
  int samples_per_window = 64;
  /// Geometric probes a + h_K * 2^-s, s = 1..approach_steps, in the innermost window.
  int approach_steps = 40;
  /// Golden-section polish of interior window extrema.
  int refine_iterations = 80;
};

/// Every tolerance and resolution knob in one place; defaults are the
/// library-wide defaults.
struct Config {
  // evaluation grid
  std::size_t grid_n = 4097;
  GridScheme grid_scheme = GridScheme::refined;
  int grid_levels = 12;
  double grid_delta_fraction = 0.125;

  CascadeParams cascade{};

  // classification
  double tol_zero = 1e-6;
  double tol_converge = 1e-4;
  double tol_detect = 1e-4;
  double huge_cut = 1e12;
  bool auto_detect = true;

  // membership
  double tol_limit = 1e-3;
  double jump_cut = 0.1;
};

}  // namespace wapprox
