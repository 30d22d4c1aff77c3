#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "oracles.hpp"
#include "wapprox/error.hpp"
#include "wapprox/extended_real.hpp"
#include "wapprox/kernels.hpp"
#include "wapprox/polynomial.hpp"

using namespace wapprox;

namespace {

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> random_values(std::mt19937_64& g, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(g);
  return v;
}

}  // namespace

TEST_CASE("sample: serial and parallel agree bit for bit") {
  const auto pts = oracle::linspace(-1.0, 1.0, 20001);
  for (const char* text : {"sin(1/x) * abs(x)^0.3 @ {0: 0}", "exp(cos(7*x)) - x^3", "1/abs(x)", "sign(x)"}) {
    const auto e = parse_expr(text);
    std::vector<double> a(pts.size()), b(pts.size());
    kernels::serial::sample(e, pts, a);
    kernels::parallel::sample(e, pts, b);
    INFO(text);
    CHECK(bitwise_equal(a, b));
  }
}

TEST_CASE("sample: domain errors propagate from both kernels") {
  const auto e = parse_expr("log(x)");
  const auto pts = oracle::linspace(-1.0, 1.0, 1001);
  std::vector<double> out(pts.size());
  CHECK_THROWS_AS(kernels::serial::sample(e, pts, out), EvalDomainError);
  CHECK_THROWS_AS(kernels::parallel::sample(e, pts, out), EvalDomainError);
}

TEST_CASE("eval_poly: every basis, serial equals parallel") {
  auto g = oracle::rng(3);
  const Interval I(-2.0, 3.0);
  const auto pts = oracle::linspace(-2.0, 3.0, 5001);
  for (Basis basis : {Basis::monomial, Basis::chebyshev, Basis::bernstein}) {
    const Polynomial p{I, basis, random_values(g, 40, -1.0, 1.0)};
    std::vector<double> a(pts.size()), b(pts.size());
    kernels::serial::eval_poly(p, pts, a);
    kernels::parallel::eval_poly(p, pts, b);
    CHECK(bitwise_equal(a, b));
    for (std::size_t k = 0; k < pts.size(); k += 97) CHECK(a[k] == p(pts[k]));
  }
}

TEST_CASE("weighted_residual_sup matches a direct loop") {
  auto g = oracle::rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_values(g, 3000, -5.0, 5.0);
    auto p = random_values(g, 3000, -5.0, 5.0);
    auto w = random_values(g, 3000, 0.0, 2.0);
    w[17] = ereal::inf;
    f[17] = p[17];
    w[100] = 0.0;
    f[100] = ereal::inf;
    double expect = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double r = f[k] == p[k] ? 0.0 : std::fabs(f[k] - p[k]);
      expect = std::max(expect, oracle::mul0(r, w[k]));
    }
    CHECK(kernels::serial::weighted_residual_sup(f, p, w) == expect);
    CHECK(kernels::parallel::weighted_residual_sup(f, p, w) == expect);
  }
}

TEST_CASE("weighted_residual_sup: infinite residual on positive weight") {
  std::vector<double> f{0.0, ereal::inf}, p{0.0, 0.0}, w{1.0, 0.5};
  CHECK(kernels::serial::weighted_residual_sup(f, p, w) == ereal::inf);
  CHECK(kernels::parallel::weighted_residual_sup(f, p, w) == ereal::inf);
}

TEST_CASE("g_norm_pointwise: serial equals parallel and the summed definition") {
  auto g = oracle::rng(9);
  const std::size_t n = 4001;
  std::vector<std::vector<double>> f, p, w;
  for (int j = 0; j < 5; ++j) {
    f.push_back(random_values(g, n, -1.0, 1.0));
    p.push_back(random_values(g, n, -1.0, 1.0));
    w.push_back(random_values(g, n, 0.0, 1.0));
  }
  std::vector<double> a(n), b(n);
  kernels::serial::g_norm_pointwise(f, p, w, a);
  kernels::parallel::g_norm_pointwise(f, p, w, b);
  CHECK(bitwise_equal(a, b));
  for (std::size_t k = 0; k < n; k += 41) {
    double s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double v = (f[j][k] - p[j][k]) * w[j][k];
      s += v * v;
    }
    CHECK(a[k] == doctest::Approx(std::sqrt(s)).epsilon(1e-14));
  }
}

TEST_CASE("max_threads is positive") { CHECK(kernels::max_threads() >= 1); }
