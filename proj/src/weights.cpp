#include "wapprox/weights.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wapprox/error.hpp"
#include "wapprox/extended_real.hpp"

namespace wapprox {

namespace {

constexpr std::size_t kMaxDetected = 64;

SampledFunction sample_weight(const FuncExpr& e, const Interval& interval, std::span<const double> points,
                              const Config& cfg) {
  try {
    return sample(e, default_grid(interval, points, cfg));
  } catch (const EvalDomainError& err) {
    throw WeightInvalid(std::string("weight is undefined: ") + err.what());
  }
}

PointClass classify_estimate(const SideLimitEstimate& est, const Config& cfg) {
  // unbounded one-sided behaviour is reported as type 3 even when the liminf
  // stays away from zero
  if (est.limsup_est >= cfg.huge_cut) return PointClass::type3;
  if (est.liminf_est > cfg.tol_zero) return PointClass::regular;
  if (est.limsup_est <= cfg.tol_zero) return PointClass::type1;
  return PointClass::type2;
}

SideClassification classify_side(const ScalarWeight& w, double a, Side side, PointSource source, const Config& cfg) {
  SideClassification c;
  c.point = a;
  c.side = side;
  c.source = source;
  c.estimate = ess_limits_one_sided(w, a, side, cfg);
  c.cls = classify_estimate(c.estimate, cfg);
  c.low_confidence = !c.estimate.converged;
  return c;
}

void add_point(const ScalarWeight& w, double a, PointSource source, const Config& cfg,
               std::vector<SideClassification>& out) {
  const Interval& I = w.interval();
  if (a > I.lo()) out.push_back(classify_side(w, a, Side::left, source, cfg));
  if (a < I.hi()) out.push_back(classify_side(w, a, Side::right, source, cfg));
}

}  // namespace

ScalarWeight::ScalarWeight(FuncExpr expr, std::vector<double> declared_points, Interval interval, const Config& cfg)
    : expr_(std::move(expr)), declared_(std::move(declared_points)), interval_(interval) {
  for (double a : declared_)
    if (!interval_.contains(a))
      throw WeightInvalid("declared point " + format_number(a) + " lies outside the interval");
  std::sort(declared_.begin(), declared_.end());
  declared_.erase(std::unique(declared_.begin(), declared_.end()), declared_.end());

  const auto s = sample_weight(expr_, interval_, declared_, cfg);
  std::size_t zero_run = 0;
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    const double v = s.values[k];
    if (v < 0.0) throw WeightInvalid("weight is negative (" + format_number(v) + ") at x = " + format_number(s.grid.points[k]));
    zero_run = v == 0.0 ? zero_run + 1 : 0;
    if (zero_run >= 3)
      throw WeightInvalid("weight vanishes on a subinterval near x = " + format_number(s.grid.points[k]));
  }
}

std::string ScalarWeight::signature() const {
  std::string sig = expr_.to_string() + " on [" + format_number(interval_.lo()) + ", " + format_number(interval_.hi()) + "]";
  for (double a : declared_) sig += " " + format_number(a);
  return sig;
}

ScalarWeight ScalarWeight::scaled(double c, const Config& cfg) const {
  return ScalarWeight(scale(c, expr_), declared_, interval_, cfg);
}

TailCertificate::TailCertificate(double C_, double r_) : C(C_), r(r_) {
  if (!(C > 0.0) || !std::isfinite(C)) throw WeightInvalid("tail certificate needs C > 0");
  if (!(r >= 0.0 && r < 1.0)) throw WeightInvalid("tail certificate needs 0 <= r < 1");
}

VectorWeight VectorWeight::finite(std::vector<ScalarWeight> components) {
  if (components.empty()) throw ShapeMismatch("vector weight needs at least one component");
  return VectorWeight(std::move(components), DimKind::finite, 0.0);
}

VectorWeight VectorWeight::truncated(std::vector<ScalarWeight> components, std::optional<double> tail_weight_bound,
                                     const Config& cfg) {
  if (components.empty()) throw ShapeMismatch("vector weight needs at least one component");
  double max_sup = 0.0;
  for (const auto& w : components) max_sup = std::max(max_sup, check_bounded(w, cfg).esssup_estimate);
  const double bound = tail_weight_bound.value_or(max_sup);
  if (!(bound >= 0.0)) throw WeightInvalid("tail weight bound must be nonnegative");
  if (bound > max_sup)
    throw WeightInvalid("tail weight bound " + format_number(bound) + " exceeds the largest component ess sup " +
                        format_number(max_sup));
  return VectorWeight(std::move(components), DimKind::truncated_l2, bound);
}

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::regular: return "regular";
    case PointClass::type1: return "type1";
    case PointClass::type2: return "type2";
    case PointClass::type3: return "type3";
  }
  return "?";
}

std::string to_string(PointSource s) {
  switch (s) {
    case PointSource::declared: return "declared";
    case PointSource::detected: return "detected";
    case PointSource::endpoint: return "endpoint";
  }
  return "?";
}

bool PointClassification::singular() const {
  return (left && left->cls != PointClass::regular) || (right && right->cls != PointClass::regular);
}

std::vector<double> SingularityReport::probed_points() const {
  std::vector<double> pts;
  for (const auto& e : entries)
    if (pts.empty() || pts.back() != e.point) pts.push_back(e.point);
  return pts;
}

std::vector<double> SingularityReport::regular(Side side) const {
  std::vector<double> pts;
  for (const auto& e : entries)
    if (e.side == side && e.cls == PointClass::regular) pts.push_back(e.point);
  return pts;
}

std::vector<double> SingularityReport::singular(Side side, std::optional<PointClass> type) const {
  std::vector<double> pts;
  for (const auto& e : entries) {
    if (e.side != side || e.cls == PointClass::regular) continue;
    if (type && e.cls != *type) continue;
    pts.push_back(e.point);
  }
  return pts;
}

std::vector<double> SingularityReport::singular_points() const {
  std::vector<double> pts;
  for (const auto& e : entries)
    if (e.cls != PointClass::regular && (pts.empty() || pts.back() != e.point)) pts.push_back(e.point);
  return pts;
}

const SideClassification* SingularityReport::find(double point, Side side) const {
  for (const auto& e : entries)
    if (e.point == point && e.side == side) return &e;
  return nullptr;
}

SideLimitEstimate ess_limits_one_sided(const ScalarWeight& w, double a, Side side, const Config& cfg) {
  const FuncExpr& e = w.expr();
  return one_sided_cascade([&e](double x) { return e(x); }, w.interval(), a, side, cfg.cascade, cfg.tol_converge);
}

PointClassification classify_point(const ScalarWeight& w, double a, const Config& cfg) {
  if (!w.interval().contains(a)) throw LimitError("point " + format_number(a) + " outside the interval");
  PointClassification pc;
  pc.point = a;
  const bool endpoint = a == w.interval().lo() || a == w.interval().hi();
  const auto source = endpoint ? PointSource::endpoint : PointSource::declared;
  if (a > w.interval().lo()) pc.left = classify_side(w, a, Side::left, source, cfg);
  if (a < w.interval().hi()) pc.right = classify_side(w, a, Side::right, source, cfg);
  return pc;
}

SingularityReport classify_weight(const ScalarWeight& w, const Config& cfg) {
  const Interval& I = w.interval();
  std::set<double> declared(w.declared_points().begin(), w.declared_points().end());
  declared.erase(I.lo());
  declared.erase(I.hi());

  std::set<double> detected;
  if (cfg.auto_detect) {
    const auto s = sample_weight(w.expr(), I, w.declared_points(), cfg);
    const auto& x = s.grid.points;
    const auto& v = s.values;
    const std::size_t n = v.size();
    const double near = 1e-12 * I.width();
    for (std::size_t k = 1; k + 1 < n && detected.size() < kMaxDetected; ++k) {
      if (!(v[k] < cfg.tol_detect)) continue;
      if (!(v[k] <= v[k - 1] && v[k] <= v[k + 1] && (v[k] < v[k - 1] || v[k] < v[k + 1]))) continue;
      const bool known = std::any_of(declared.begin(), declared.end(),
                                     [&](double a) { return std::fabs(a - x[k]) <= near; });
      if (!known) detected.insert(x[k]);
    }
  }

  SingularityReport report{w.signature(), I, {}, cfg.auto_detect};
  std::vector<std::pair<double, PointSource>> points;
  points.emplace_back(I.lo(), PointSource::endpoint);
  for (double a : declared) points.emplace_back(a, PointSource::declared);
  for (double a : detected) points.emplace_back(a, PointSource::detected);
  points.emplace_back(I.hi(), PointSource::endpoint);
  std::sort(points.begin(), points.end());
  for (const auto& [a, src] : points) add_point(w, a, src, cfg, report.entries);
  return report;
}

BoundedResult check_bounded(const ScalarWeight& w, const SingularityReport& report, const Config& cfg) {
  const auto probed = report.probed_points();
  const auto s = sample_weight(w.expr(), w.interval(), probed, cfg);
  double m = 0.0;
  for (double v : s.values) m = std::max(m, v);
  bool bounded = std::isfinite(m);
  for (const auto& e : report.entries)
    if (e.cls == PointClass::type3) bounded = false;
  return {bounded, m};
}

BoundedResult check_bounded(const ScalarWeight& w, const Config& cfg) {
  return check_bounded(w, classify_weight(w, cfg), cfg);
}

FuncExpr invert_weight(const ScalarWeight& w, const Config& cfg) {
  const auto s = sample_weight(w.expr(), w.interval(), w.declared_points(), cfg);
  for (std::size_t k = 0; k < s.values.size(); ++k)
    if (s.values[k] <= cfg.tol_zero)
      throw NotInvertible("weight is not invertible: value " + format_number(s.values[k]) + " at x = " +
                          format_number(s.grid.points[k]));
  return apply(Op::div, FuncExpr::constant(1.0), w.expr());
}

}  // namespace wapprox
