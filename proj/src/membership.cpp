#include "wapprox/membership.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wapprox/error.hpp"
#include "wapprox/extended_real.hpp"
#include "wapprox/grid.hpp"
#include "wapprox/kernels.hpp"

namespace wapprox {

std::string to_string(ConditionKind k) {
  return k == ConditionKind::continuity ? "continuity" : "vanishing";
}

namespace {

double deviation(const FuncExpr& f, double fa, double x) {
  const double fx = f(x);
  if (fx == fa) return 0.0;
  return std::fabs(ereal::sub(fx, fa));
}

Condition check_side(const FuncExpr& f, const ScalarWeight& w, const SideClassification& c, double tol,
                     const Config& cfg) {
  Condition cond;
  cond.point = c.point;
  cond.side = c.side;
  cond.tolerance = tol;
  const double a = c.point;
  SideLimitEstimate est;
  if (c.cls == PointClass::regular) {
    cond.kind = ConditionKind::continuity;
    const double fa = f(a);
    est = one_sided_cascade([&](double x) { return deviation(f, fa, x); }, w.interval(), a, c.side, cfg.cascade,
                            cfg.tol_converge);
  } else {
    cond.kind = ConditionKind::vanishing;
    const auto fa = f.override_at(a);
    if (!fa) throw MissingOverride(a);
    est = one_sided_cascade([&](double x) { return ereal::mul(deviation(f, *fa, x), w(x)); }, w.interval(), a,
                            c.side, cfg.cascade, cfg.tol_converge);
  }
  cond.measured = std::max(est.limsup_est, 0.0);
  cond.low_confidence = !est.converged;
  cond.pass = est.converged && cond.measured < tol;
  return cond;
}

}  // namespace

MembershipVerdict check_scalar_membership(const FuncExpr& f, const ScalarWeight& w, const SingularityReport& report,
                                          double tol, const Config& cfg) {
  if (report.weight_signature != w.signature() || !(report.interval == w.interval()))
    throw ReportMismatch("singularity report belongs to a different weight: " + report.weight_signature);
  for (double a : report.singular_points())
    if (!f.has_override(a)) throw MissingOverride(a);

  MembershipVerdict v;
  for (const auto& c : report.entries) v.conditions.push_back(check_side(f, w, c, tol, cfg));

  const auto probed = report.probed_points();
  const Grid g = default_grid(w.interval(), probed, cfg);
  const auto fs = sample(f, g);
  const auto ws = sample(w.expr(), g);
  const std::vector<double> zero(fs.values.size(), 0.0);
  v.norm = kernels::parallel::weighted_residual_sup(fs.values, zero, ws.values);
  for (const auto& c : report.entries) {
    const auto est = one_sided_cascade([&](double x) { return ereal::mul(std::fabs(f(x)), w(x)); }, w.interval(),
                                       c.point, c.side, cfg.cascade, cfg.tol_converge);
    v.norm = std::max(v.norm, est.limsup_est >= cfg.huge_cut ? ereal::inf : est.limsup_est);
  }
  v.finite_norm = std::isfinite(v.norm);

  const auto singular = report.singular_points();
  const double spacing = w.interval().width() / static_cast<double>(std::max<std::size_t>(cfg.grid_n - 1, 1));
  const double singular_reach = cfg.grid_delta_fraction * w.interval().width();
  auto near = [&](double x) {
    for (double a : probed)
      if (std::fabs(x - a) <= 2.0 * spacing) return true;
    for (double a : singular)
      if (std::fabs(x - a) <= singular_reach) return true;
    return false;
  };
  for (std::size_t k = 0; k + 1 < fs.values.size(); ++k) {
    const double x0 = g.points[k];
    const double x1 = g.points[k + 1];
    const double f0 = fs.values[k];
    const double f1 = fs.values[k + 1];
    const double jump = f0 == f1 ? 0.0 : std::fabs(f1 - f0);
    if (!(jump <= cfg.jump_cut) && !near(x0) && !near(x1)) v.warnings.push_back({x0, x1, jump});
  }

  v.member = v.finite_norm && std::all_of(v.conditions.begin(), v.conditions.end(),
                                          [](const Condition& c) { return c.pass; });
  return v;
}

VectorVerdict check_vector_membership(const std::vector<FuncExpr>& F, const VectorWeight& W, double tol,
                                      const Config& cfg) {
  if (F.size() != W.size())
    throw ShapeMismatch("function has " + std::to_string(F.size()) + " components, weight has " +
                        std::to_string(W.size()));
  VectorVerdict vv;
  vv.member = true;
  for (std::size_t j = 0; j < F.size(); ++j) {
    try {
      const auto& wj = W.components()[j];
      vv.components.push_back(check_scalar_membership(F[j], wj, classify_weight(wj, cfg), tol, cfg));
    } catch (Error& e) {
      e.set_component(j);
      throw;
    }
    vv.member = vv.member && vv.components.back().member;
  }
  return vv;
}

std::string explain(const MembershipVerdict& v) {
  std::ostringstream os;
  os << (v.member ? "member" : "not a member") << "\n";
  os << "  weighted norm " << format_number(v.norm) << (v.finite_norm ? " (finite)" : " (infinite)") << "\n";
  for (const auto& c : v.conditions) {
    os << "  " << format_number(c.point) << " " << to_string(c.side) << ": " << to_string(c.kind) << " limit "
       << format_number(c.measured) << (c.pass ? " < " : " >= ") << format_number(c.tolerance);
    if (c.low_confidence) os << " (cascade did not settle)";
    os << (c.pass ? "  pass" : "  FAIL") << "\n";
  }
  for (const auto& j : v.warnings)
    os << "  warning: jump " << format_number(j.jump) << " between " << format_number(j.x0) << " and "
       << format_number(j.x1) << " away from declared points\n";
  return os.str();
}

}  // namespace wapprox
