#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wapprox/error.hpp"
#include "wapprox/vector_approx.hpp"

using namespace wapprox;

namespace {

const Interval I01(0.0, 1.0);
const Interval I11(-1.0, 1.0);

ScalarWeight weight(const char* text, std::vector<double> pts = {}, Interval I = I11) {
  return ScalarWeight(parse_expr(text), std::move(pts), I);
}

std::vector<FuncExpr> exprs(std::initializer_list<const char*> texts) {
  std::vector<FuncExpr> out;
  for (const char* t : texts) out.push_back(parse_expr(t));
  return out;
}

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

VectorFunction geometric_family(std::size_t count) {
  std::vector<FuncExpr> f;
  for (std::size_t j = 0; j < count; ++j)
    f.push_back(parse_expr(format_number(std::ldexp(1.0, -static_cast<int>(j))) + " * cos(" + std::to_string(j) + " * x)"));
  return VectorFunction::truncated(f, TailCertificate(1.0, 0.5));
}

}  // namespace

TEST_CASE("weighted_G_norm examples") {
  SUBCASE("one component is the scalar weighted norm") {
    const auto w = weight("abs(x)^0.5", {0});
    const auto F = VectorFunction::finite(exprs({"exp(x)"}));
    const auto g = shared_grid(F, VectorWeight::finite({w}));
    double ref = 0.0;
    for (double x : g.points) ref = std::max(ref, std::exp(x) * std::sqrt(std::fabs(x)));
    CHECK(weighted_G_norm(F, VectorWeight::finite({w}), g) == ref);
  }
  SUBCASE("(x, x) on [0, 1]") {
    const auto one = weight("1", {}, I01);
    const auto F = VectorFunction::finite(exprs({"x", "x"}));
    const auto W = VectorWeight::finite({one, one});
    CHECK(weighted_G_norm(F, W, shared_grid(F, W)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  }
  SUBCASE("(sign, x^2) against (abs(x), 1), dense oracle") {
    const auto F = VectorFunction::finite(exprs({"sign(x) @ {0: 0}", "x^2"}));
    const auto W = VectorWeight::finite({weight("abs(x)", {0}), weight("1")});
    const double got = weighted_G_norm(F, W, shared_grid(F, W));
    const double ref = oracle::dense_G_norm({sign0, [](double x) { return x * x; }},
                                            {[](double x) { return std::fabs(x); }, [](double) { return 1.0; }}, -1, 1,
                                            100001);
    CHECK(ref == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(got == doctest::Approx(ref).epsilon(1e-15));
  }
  SUBCASE("shape mismatch") {
    const auto F = VectorFunction::finite(exprs({"x"}));
    const auto W = VectorWeight::finite({weight("1"), weight("1")});
    CHECK_THROWS_AS(weighted_G_norm(F, W, default_grid(I11, {})), ShapeMismatch);
  }
}

TEST_CASE("allocate_budgets examples") {
  const auto f = allocate_budgets(0.1, DimKind::finite, 4);
  REQUIRE(f.size() == 4);
  for (double b : f) CHECK(b == doctest::Approx(0.05).epsilon(1e-15));
  const auto t = allocate_budgets(0.1, DimKind::truncated_l2, 3);
  CHECK(t[0] == doctest::Approx(0.1));
  CHECK(t[1] == doctest::Approx(0.05));
  CHECK(t[2] == doctest::Approx(0.1 / 3.0));
  const double series = oracle::inverse_squares(1000000);
  CHECK(1.0 + std::sqrt(series) == doctest::Approx(2.28255).epsilon(1e-5));
  CHECK(certificate_bound(1.0, DimKind::truncated_l2, 1000000, 0.0) >= 1.0 + std::sqrt(M_PI * M_PI / 6.0));
  CHECK_THROWS_AS(allocate_budgets(0.0, DimKind::finite, 2), ValidationError);
}

TEST_CASE("choose_truncation examples") {
  const TailCertificate c(1.0, 0.5);
  CHECK(choose_truncation(c, 0.01) == 6);
  CHECK(oracle::truncation_by_summation(1.0, 0.5, 0.01) == 6);
  CHECK(tail_bound(c, 6) == doctest::Approx(0.00902).epsilon(1e-3));
  CHECK(tail_bound(c, 5) == doctest::Approx(0.01804).epsilon(1e-3));
  CHECK(tail_bound(c, 6) == doctest::Approx(oracle::tail_partial_sum(1.0, 0.5, 6)).epsilon(1e-12));
  CHECK(choose_truncation(TailCertificate(1.0, 0.0), 0.01, 7) == 7);
  CHECK(choose_truncation(c, 2.0) == 0);
  CHECK(tail_bound(c, 0) == doctest::Approx(0.57735).epsilon(1e-5));
}

TEST_CASE("approx_vector examples") {
  SUBCASE("finite three components") {
    const auto one = weight("1");
    const auto F = VectorFunction::finite(exprs({"x", "x^2", "abs(x)"}));
    const auto W = VectorWeight::finite({one, one, one});
    const auto r = approx_vector(F, W, 0.05);
    for (double b : r.certificate.budgets) CHECK(b == doctest::Approx(0.05 / std::sqrt(3.0)));
    CHECK(r.certificate.total_weighted_error < 0.05);
    const std::vector<oracle::Fn> residual{[&](double x) { return x - r.poly.components[0](x); },
                                           [&](double x) { return x * x - r.poly.components[1](x); },
                                           [&](double x) { return std::fabs(x) - r.poly.components[2](x); }};
    const std::vector<oracle::Fn> ones(3, [](double) { return 1.0; });
    CHECK(oracle::dense_G_norm(residual, ones, -1, 1, 100001) < 0.05);
  }
  SUBCASE("a stagnating component") {
    const auto one = weight("1", {0});
    const auto F = VectorFunction::finite(exprs({"x", "sign(x) @ {0: 0}"}));
    ApproxOptions opts;
    opts.max_degree = 64;
    try {
      approx_vector(F, VectorWeight::finite({one, one}), 0.05, opts);
      FAIL("expected ComponentFailed");
    } catch (const ComponentFailed& e) {
      CHECK(e.index() == 1);
      CHECK_FALSE(e.trace().empty());
    }
  }
  SUBCASE("truncated geometric family") {
    const auto F = geometric_family(8);
    std::vector<ScalarWeight> ws(8, weight("1"));
    const auto W = VectorWeight::truncated(ws, std::nullopt);
    const auto r = approx_vector(F, W, 0.1);
    const auto& c = r.certificate;
    CHECK(c.truncation == choose_truncation(TailCertificate(1.0, 0.5), 0.1));
    CHECK(c.total_weighted_error <= 0.1 * 2.28255 + c.tail_contribution);
    CHECK(c.total_weighted_error <= c.bound);
    // dense residual including the unapproximated listed coordinates
    std::vector<oracle::Fn> res, ones;
    for (std::size_t j = 0; j < 8; ++j) {
      const double a = std::ldexp(1.0, -static_cast<int>(j));
      if (j < r.poly.components.size())
        res.push_back([&, a, j](double x) { return a * std::cos(static_cast<double>(j) * x) - r.poly.components[j](x); });
      else
        res.push_back([a, j](double x) { return a * std::cos(static_cast<double>(j) * x); });
      ones.push_back([](double) { return 1.0; });
    }
    CHECK(oracle::dense_G_norm(res, ones, -1, 1, 20001) <= c.bound);
  }
  SUBCASE("kind mismatch and unbounded weight") {
    const auto F = VectorFunction::finite(exprs({"x"}));
    CHECK_THROWS_AS(approx_vector(F, VectorWeight::truncated({weight("1")}, std::nullopt), 0.1), ShapeMismatch);
    try {
      approx_vector(VectorFunction::finite(exprs({"x", "x"})),
                    VectorWeight::finite({weight("1"), weight("1/abs(x) @ {0: 1}", {0})}), 0.1);
      FAIL("expected WeightUnbounded");
    } catch (const WeightUnbounded& e) {
      CHECK(std::string(e.what()).find("component 1") != std::string::npos);
    }
  }
}

TEST_CASE("parseval_crosscheck examples") {
  const auto one = weight("1");
  CHECK(parseval_crosscheck(VectorFunction::finite(exprs({"sin(x)"})), VectorWeight::finite({one}),
                            default_grid(I11, {})) <= 1e-15);
  const auto F = VectorFunction::finite(exprs({"3", "4"}));
  const auto W = VectorWeight::finite({one, one});
  const auto g = default_grid(I11, {});
  CHECK(weighted_G_norm(F, W, g) == 5.0);
  CHECK(parseval_crosscheck(F, W, g) == 0.0);

  auto rng = oracle::rng(31);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  std::vector<FuncExpr> fs;
  std::vector<ScalarWeight> ws;
  for (int j = 0; j < 8; ++j) {
    fs.push_back(parse_expr(format_number(c(rng)) + " + " + format_number(c(rng)) + " * x + " + format_number(c(rng)) +
                            " * x^3"));
    ws.push_back(weight((format_number(1.0 + std::fabs(c(rng))) + " + sin(" + format_number(c(rng)) + " * x)").c_str()));
  }
  CHECK(parseval_crosscheck(VectorFunction::finite(fs), VectorWeight::finite(ws), g) < 1e-12);
}

TEST_CASE("property: budget soundness") {
  for (std::size_t n : {1u, 2u, 3u, 7u, 50u}) {
    for (double eps : {0.1, 0.05, 1e-4}) {
      double s = 0.0;
      for (double b : allocate_budgets(eps, DimKind::finite, n)) s += b * b;
      CHECK(std::fabs(std::sqrt(s) - eps) <= 1e-12 * eps);
    }
  }
}

TEST_CASE("property: certificate validity and quadrature dominance") {
  struct Fixture {
    VectorFunction F;
    VectorWeight W;
    double eps;
  };
  const auto one = weight("1");
  const auto ax = weight("abs(x)", {0});
  const auto sq = weight("abs(x)^0.5", {0});
  std::vector<Fixture> fixtures{
      {VectorFunction::finite(exprs({"x", "x^2", "abs(x)"})), VectorWeight::finite({one, one, one}), 0.05},
      {VectorFunction::finite(exprs({"sign(x) @ {0: 0}", "exp(x)"})), VectorWeight::finite({ax, one}), 0.05},
      {VectorFunction::finite(exprs({"abs(x)^(-0.25) @ {0: 0}", "sin(3*x) @ {0: 0}"})), VectorWeight::finite({sq, ax}),
       0.1},
      {geometric_family(8), VectorWeight::truncated(std::vector<ScalarWeight>(8, one), std::nullopt), 0.1},
      {geometric_family(5), VectorWeight::truncated(std::vector<ScalarWeight>(5, ax), std::nullopt), 0.05},
  };
  for (const auto& fx : fixtures) {
    const auto r = approx_vector(fx.F, fx.W, fx.eps);
    const auto& c = r.certificate;
    double quad = 0.0;
    for (std::size_t j = 0; j < c.component_errors.size(); ++j) {
      CHECK(c.component_errors[j] <= c.budgets[j]);
      quad += c.component_errors[j] * c.component_errors[j];
    }
    CHECK(c.total_weighted_error <= c.bound);
    if (fx.F.kind == DimKind::finite) CHECK(c.total_weighted_error <= std::sqrt(quad) + 1e-10);
    const double ref = weighted_G_residual(fx.F, r.poly, fx.W, r.grid);
    CHECK(ref == c.total_weighted_error);
  }
}

TEST_CASE("property: truncation is minimal and monotone") {
  for (double C : {0.5, 1.0, 3.0}) {
    for (double r : {0.1, 0.5, 0.9}) {
      const TailCertificate cert(C, r);
      std::size_t prev = std::numeric_limits<std::size_t>::max();
      for (double e : {1e-8, 1e-5, 1e-3, 0.01, 0.1, 1.0, 10.0}) {
        const std::size_t N = choose_truncation(cert, e);
        CHECK(N <= prev);
        prev = N;
        CHECK(tail_bound(cert, N) <= e);
        if (N > 0) CHECK(tail_bound(cert, N - 1) > e);
        CHECK(N == oracle::truncation_by_summation(C, r, e));
      }
    }
  }
}

TEST_CASE("property: one component reduces to the scalar pipeline") {
  const std::vector<std::pair<const char*, std::pair<const char*, std::vector<double>>>> cases{
      {"abs(x)", {"1", {}}}, {"sign(x) @ {0: 0}", {"abs(x)", {0}}}, {"exp(x)", {"2 + sin(x)", {}}}};
  for (const auto& [ftext, wd] : cases) {
    const auto w = weight(wd.first, wd.second);
    const auto f = parse_expr(ftext);
    const auto F = VectorFunction::finite({f});
    const auto W = VectorWeight::finite({w});
    const auto v = approx_vector(F, W, 0.05);
    ApproxOptions opts;
    opts.grid = shared_grid(F, W);
    const auto s = approx_scalar_weighted(f, w, 0.05, opts);
    CHECK(v.poly.components[0].coeffs == s.poly.coeffs);
    CHECK(v.certificate.component_errors[0] == s.weighted_error);
    CHECK(v.certificate.total_weighted_error == s.weighted_error);
  }
}
