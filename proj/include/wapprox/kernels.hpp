#pragma once

// Grid-sized inner loops. Each kernel exists twice: `serial` is the plain
// reference implementation used by the tests as ground truth, `parallel`
// splits the grid across OpenMP threads (and degrades to the serial loop
// when built without OpenMP). Both produce bit-identical results: the only
// reductions are max-reductions and per-point sums evaluated in component
// order, neither of which depends on the thread schedule.

#include <cstddef>
#include <span>
#include <vector>

namespace wapprox {
class FuncExpr;
struct Polynomial;
}  // namespace wapprox

namespace wapprox::kernels {

/// Component-major matrix view: rows[j][k] is component j at grid point k.
using Columns = std::span<const std::vector<double>>;

namespace serial {
void sample(const FuncExpr& e, std::span<const double> points, std::span<double> out);
void eval_poly(const Polynomial& p, std::span<const double> points, std::span<double> out);
/// max_k |f_k - p_k| * w_k under 0 * inf = 0.
double weighted_residual_sup(std::span<const double> f, std::span<const double> p, std::span<const double> w);
/// out_k = sqrt(sum_j ((f_j - p_j) * w_j)_k^2), component order fixed.
void g_norm_pointwise(Columns f, Columns p, Columns w, std::span<double> out);
}  // namespace serial

namespace parallel {
void sample(const FuncExpr& e, std::span<const double> points, std::span<double> out);
void eval_poly(const Polynomial& p, std::span<const double> points, std::span<double> out);
double weighted_residual_sup(std::span<const double> f, std::span<const double> p, std::span<const double> w);
void g_norm_pointwise(Columns f, Columns p, Columns w, std::span<double> out);
}  // namespace parallel

/// Threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace wapprox::kernels
