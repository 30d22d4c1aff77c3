#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "wapprox/expr.hpp"
#include "wapprox/grid.hpp"
#include "wapprox/kernels.hpp"
#include "wapprox/polynomial.hpp"

namespace {

using namespace wapprox;

Grid bench_grid(std::size_t n) { return make_grid(Interval(-1.0, 1.0), n, GridScheme::uniform); }

const FuncExpr& bench_expr() {
  static const FuncExpr e = parse_expr("abs(x)^0.5 * exp(-x^2) + sin(3*x) / (2 + cos(x))");
  return e;
}

template <auto Kernel>
void BM_sample(benchmark::State& state) {
  const auto g = bench_grid(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(g.points.size());
  for (auto _ : state) {
    Kernel(bench_expr(), g.points, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_eval_poly(benchmark::State& state) {
  const auto g = bench_grid(1 << 14);
  const auto p = chebyshev_interp(parse_expr("abs(x)"), Interval(-1.0, 1.0), static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(g.points.size());
  for (auto _ : state) {
    Kernel(p, g.points, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.points.size()));
}

template <auto Kernel>
void BM_g_norm(benchmark::State& state) {
  const auto g = bench_grid(1 << 14);
  const auto m = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<double>> f(m), p(m), w(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (double x : g.points) {
      f[j].push_back(std::cos(static_cast<double>(j) * x));
      p[j].push_back(1.0 - 0.5 * x * x);
      w[j].push_back(std::abs(x));
    }
  }
  std::vector<double> out(g.points.size());
  for (auto _ : state) {
    Kernel(f, p, w, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <auto Kernel>
void BM_weighted_sup(benchmark::State& state) {
  const auto g = bench_grid(static_cast<std::size_t>(state.range(0)));
  std::vector<double> f, p, w;
  for (double x : g.points) {
    f.push_back(std::abs(x));
    p.push_back(x * x);
    w.push_back(1.0 / (1.0 + x * x));
  }
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(f, p, w));
}

}  // namespace

BENCHMARK(BM_sample<kernels::serial::sample>)->Name("sample/serial")->Arg(4097)->Arg(1 << 16);
BENCHMARK(BM_sample<kernels::parallel::sample>)->Name("sample/parallel")->Arg(4097)->Arg(1 << 16);
BENCHMARK(BM_eval_poly<kernels::serial::eval_poly>)->Name("eval_poly/serial")->Arg(64)->Arg(512);
BENCHMARK(BM_eval_poly<kernels::parallel::eval_poly>)->Name("eval_poly/parallel")->Arg(64)->Arg(512);
BENCHMARK(BM_g_norm<kernels::serial::g_norm_pointwise>)->Name("g_norm/serial")->Arg(3)->Arg(32);
BENCHMARK(BM_g_norm<kernels::parallel::g_norm_pointwise>)->Name("g_norm/parallel")->Arg(3)->Arg(32);
BENCHMARK(BM_weighted_sup<kernels::serial::weighted_residual_sup>)->Name("weighted_sup/serial")->Arg(1 << 16);
BENCHMARK(BM_weighted_sup<kernels::parallel::weighted_residual_sup>)->Name("weighted_sup/parallel")->Arg(1 << 16);

BENCHMARK_MAIN();
