#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wapprox/error.hpp"
#include "wapprox/membership.hpp"

using namespace wapprox;

namespace {

const Interval I11(-1.0, 1.0);
constexpr double kTol = 1e-3;

ScalarWeight weight(const char* text, std::vector<double> pts = {}) { return ScalarWeight(parse_expr(text), pts, I11); }

MembershipVerdict check(const char* f, const ScalarWeight& w) {
  return check_scalar_membership(parse_expr(f), w, classify_weight(w), kTol);
}

const Condition* find(const MembershipVerdict& v, double a, Side s) {
  for (const auto& c : v.conditions)
    if (c.point == a && c.side == s) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("check_scalar_membership examples") {
  SUBCASE("sign against w = 1 fails continuity at 0") {
    const auto v = check("sign(x) @ {0: 0}", weight("1", {0}));
    CHECK_FALSE(v.member);
    CHECK(v.finite_norm);
    for (Side s : {Side::left, Side::right}) {
      const auto* c = find(v, 0.0, s);
      REQUIRE(c);
      CHECK(c->kind == ConditionKind::continuity);
      CHECK_FALSE(c->pass);
      CHECK(c->measured == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  SUBCASE("sign against abs(x) is a member") {
    const auto v = check("sign(x) @ {0: 0}", weight("abs(x)", {0}));
    CHECK(v.member);
    for (Side s : {Side::left, Side::right}) {
      const auto* c = find(v, 0.0, s);
      REQUIRE(c);
      CHECK(c->kind == ConditionKind::vanishing);
      CHECK(c->pass);
      CHECK(c->measured < kTol);
    }
  }
  SUBCASE("abs(x)^-0.25 against abs(x)^0.5, checked against dense oracles") {
    const auto v = check("abs(x)^(-0.25) @ {0: 0}", weight("abs(x)^0.5", {0}));
    CHECK(v.member);
    CHECK(v.finite_norm);
    const oracle::Fn f = [](double x) { return x == 0.0 ? 0.0 : std::pow(std::fabs(x), -0.25); };
    const oracle::Fn w = [](double x) { return std::sqrt(std::fabs(x)); };
    const double ref_norm = oracle::dense_weighted_sup(f, [](double) { return 0.0; }, w, -1.0, 1.0, 1000001);
    CHECK(v.norm == doctest::Approx(ref_norm).epsilon(1e-9));
    const oracle::Fn prod = [&](double x) { return oracle::mul0(std::fabs(f(x)), w(x)); };
    const auto ref = oracle::dense_window(prod, 0.0, 1e-16, true, 100000);
    CHECK(ref.sup < kTol);
    const auto* c = find(v, 0.0, Side::right);
    REQUIRE(c);
    CHECK(c->kind == ConditionKind::vanishing);
    CHECK(c->measured < kTol);
  }
}

TEST_CASE("check_scalar_membership errors") {
  const auto w = weight("abs(x)", {0});
  const auto r = classify_weight(w);
  CHECK_THROWS_AS(check_scalar_membership(parse_expr("sign(x)"), w, r, kTol), MissingOverride);
  const auto other = weight("abs(x)^0.5", {0});
  CHECK_THROWS_AS(check_scalar_membership(parse_expr("x"), other, r, kTol), ReportMismatch);
}

TEST_CASE("unbounded weighted norm") {
  const auto v = check("1/abs(x) @ {0: 0}", weight("1 + 0*x", {0}));
  CHECK_FALSE(v.finite_norm);
  CHECK_FALSE(v.member);
}

TEST_CASE("jump warnings flag undeclared discontinuities") {
  const auto v = check("sign(x - 0.3) @ {0.3: 0}", weight("1"));
  CHECK_FALSE(v.warnings.empty());
  const auto quiet = check("sin(x)", weight("1"));
  CHECK(quiet.warnings.empty());
}

TEST_CASE("explain mentions each failing condition") {
  const auto v = check("sign(x) @ {0: 0}", weight("1", {0}));
  const auto text = explain(v);
  CHECK(text.find("continuity") != std::string::npos);
  CHECK(text.find("FAIL") != std::string::npos);
}

TEST_CASE("check_vector_membership examples") {
  const auto one = weight("1", {0});
  const auto ax = weight("abs(x)", {0});
  SUBCASE("continuous components") {
    const auto v = check_vector_membership({parse_expr("abs(x)"), parse_expr("x^2")}, VectorWeight::finite({one, one}), kTol);
    CHECK(v.member);
    REQUIRE(v.components.size() == 2);
  }
  SUBCASE("component 0 fails") {
    const auto v = check_vector_membership({parse_expr("sign(x) @ {0: 0}"), parse_expr("x")},
                                           VectorWeight::finite({one, one}), kTol);
    CHECK_FALSE(v.member);
    CHECK_FALSE(v.components[0].member);
    CHECK(v.components[1].member);
  }
  SUBCASE("mixed weights against independent scalar checks") {
    const auto f = parse_expr("sign(x) @ {0: 0}");
    const auto v = check_vector_membership({f, f}, VectorWeight::finite({ax, one}), kTol);
    const auto s0 = check_scalar_membership(f, ax, classify_weight(ax), kTol);
    const auto s1 = check_scalar_membership(f, one, classify_weight(one), kTol);
    CHECK(s0.member);
    CHECK_FALSE(s1.member);
    CHECK(v.components[0].member == s0.member);
    CHECK(v.components[1].member == s1.member);
    CHECK_FALSE(v.member);
  }
  SUBCASE("shape mismatch and tagged errors") {
    CHECK_THROWS_AS(check_vector_membership({parse_expr("x")}, VectorWeight::finite({one, one}), kTol), ShapeMismatch);
    try {
      check_vector_membership({parse_expr("x"), parse_expr("sign(x)")}, VectorWeight::finite({one, ax}), kTol);
      FAIL("expected MissingOverride");
    } catch (const MissingOverride& e) {
      CHECK(std::string(e.what()).find("component 1") != std::string::npos);
    }
  }
}

TEST_CASE("property: componentwise equivalence on random cases") {
  const std::vector<const char*> fs{"sign(x) @ {0: 0}", "abs(x) @ {0: 0}", "x^2 @ {0: 0}",
                                    "abs(x)^(-0.25) @ {0: 0}", "sin(1/x) @ {0: 0}", "piecewise(0, 0, 1) @ {0: 1}",
                                    "exp(x) @ {0: 1}"};
  const std::vector<ScalarWeight> ws{weight("1", {0}), weight("abs(x)", {0}), weight("abs(x)^0.5", {0}),
                                     weight("x^2", {0}), weight("piecewise(1, 0, x)", {0})};
  std::vector<SingularityReport> reports;
  for (const auto& w : ws) reports.push_back(classify_weight(w));
  auto g = oracle::rng(17);
  std::uniform_int_distribution<std::size_t> pf(0, fs.size() - 1), pw(0, ws.size() - 1), len(1, 4);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<FuncExpr> F;
    std::vector<ScalarWeight> W;
    bool expect = true;
    const std::size_t n = len(g);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t fi = pf(g), wi = pw(g);
      F.push_back(parse_expr(fs[fi]));
      W.push_back(ws[wi]);
      expect = expect && check_scalar_membership(F.back(), ws[wi], reports[wi], kTol).member;
    }
    CHECK(check_vector_membership(F, VectorWeight::finite(W), kTol).member == expect);
  }
}

TEST_CASE("property: continuous functions pass every continuity condition") {
  const auto w = weight("2 + sin(x)", {-0.5, 0, 0.25, 0.5});
  for (const char* f : {"sin(3*x)", "abs(x - 0.25)", "exp(cos(5*x))", "max(x, x^2)", "abs(x)^0.5"}) {
    const auto v = check(f, w);
    INFO(f);
    for (const auto& c : v.conditions) {
      CHECK(c.kind == ConditionKind::continuity);
      CHECK(c.pass);
    }
    CHECK(v.member == v.finite_norm);
    CHECK(v.member);
  }
}

TEST_CASE("property: weighted vanishing is monotone in the weight") {
  const std::vector<std::pair<const char*, const char*>> cases{
      {"sign(x) @ {0: 0}", "abs(x)"}, {"abs(x)^(-0.25) @ {0: 0}", "abs(x)^0.5"}, {"sin(1/x) @ {0: 0}", "x^2"}};
  for (const auto& [ftext, wtext] : cases) {
    const auto w = weight(wtext, {0});
    const auto base = check(ftext, w);
    for (double c : {1.0, 0.75, 0.5, 0.1}) {
      const auto ws = w.scaled(c);
      const auto v = check(ftext, ws);
      for (const auto& cond : base.conditions) {
        if (cond.kind != ConditionKind::vanishing || !cond.pass) continue;
        const auto* other = find(v, cond.point, cond.side);
        REQUIRE(other);
        CHECK(other->pass);
        CHECK(other->measured <= cond.measured * c * (1.0 + 1e-9) + 1e-15);
      }
    }
  }
}

TEST_CASE("property: verdicts are deterministic") {
  const auto w = weight("abs(x)^0.5", {0, 0.5});
  const auto a = check("abs(x)^(-0.25) @ {0: 0}", w);
  const auto b = check("abs(x)^(-0.25) @ {0: 0}", w);
  REQUIRE(a.conditions.size() == b.conditions.size());
  CHECK(a.member == b.member);
  CHECK(a.norm == b.norm);
  for (std::size_t i = 0; i < a.conditions.size(); ++i) {
    CHECK(a.conditions[i].measured == b.conditions[i].measured);
    CHECK(a.conditions[i].pass == b.conditions[i].pass);
  }
}

TEST_CASE("every probed side carries exactly one condition") {
  const auto w = weight("abs(x)*abs(x - 0.5)", {0, 0.5});
  const auto r = classify_weight(w);
  const auto v = check_scalar_membership(parse_expr("x @ {0: 0, 0.5: 0.5}"), w, r, kTol);
  for (const auto& e : r.entries) {
    int n = 0;
    for (const auto& c : v.conditions)
      if (c.point == e.point && c.side == e.side) {
        ++n;
        CHECK((c.kind == ConditionKind::vanishing) == (e.cls != PointClass::regular));
      }
    CHECK(n == 1);
  }
  CHECK(v.member == (v.finite_norm && std::all_of(v.conditions.begin(), v.conditions.end(),
                                                  [](const Condition& c) { return c.pass; })));
}
