#include "wapprox/scalar_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wapprox/error.hpp"
#include "wapprox/extended_real.hpp"
#include "wapprox/kernels.hpp"
#include "wapprox/membership.hpp"

namespace wapprox {

std::string to_string(Engine e) { return e == Engine::chebyshev ? "chebyshev" : "bernstein"; }

Engine engine_from_string(const std::string& s) {
  if (s == "chebyshev") return Engine::chebyshev;
  if (s == "bernstein") return Engine::bernstein;
  throw ValidationError("unknown engine '" + s + "' (expected chebyshev or bernstein)");
}

std::vector<std::size_t> sweep_degrees(std::size_t max_degree) {
  std::vector<std::size_t> d;
  for (std::size_t n = 4; n <= max_degree; n *= 2) d.push_back(n);
  return d;
}

double weighted_sup_error(const FuncExpr& f, const Polynomial& p, const ScalarWeight& w, const Grid& g) {
  const auto fs = sample(f, g);
  const auto ws = sample(w.expr(), g);
  std::vector<double> ps(g.points.size());
  kernels::parallel::eval_poly(p, g.points, ps);
  return kernels::parallel::weighted_residual_sup(fs.values, ps, ws.values);
}

namespace {

/// Distance from a to the nearest other singular point or interval end.
double gap_at(double a, const std::vector<double>& singular, const Interval& I) {
  double gap = std::numeric_limits<double>::infinity();
  for (double b : singular)
    if (b != a) gap = std::min(gap, std::fabs(a - b));
  if (a != I.lo()) gap = std::min(gap, a - I.lo());
  if (a != I.hi()) gap = std::min(gap, I.hi() - a);
  return gap;
}

FuncExpr line_through(double x0, double y0, double x1, double y1) {
  const double slope = (y1 - y0) / (x1 - x0);
  return FuncExpr::constant(y0) + FuncExpr::constant(slope) * (FuncExpr::variable() - FuncExpr::constant(x0));
}

}  // namespace

FuncExpr regularize_near_singularities(const FuncExpr& f, const SingularityReport& report, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw RegularizationError("bridge half-width must be positive");
  const auto singular = report.singular_points();
  if (singular.empty()) return f;
  const Interval& I = report.interval;
  for (double a : singular) {
    if (!f.has_override(a)) throw MissingOverride(a);
    if (2.0 * eta > gap_at(a, singular, I))
      throw RegularizationError("bridges of half-width " + format_number(eta) + " overlap near " + format_number(a));
  }

  std::vector<FuncExpr> pieces{f};
  std::vector<double> breaks;
  for (double a : singular) {
    const double fa = *f.override_at(a);
    if (!std::isfinite(fa)) throw MissingOverride(a);
    if (a > I.lo()) {
      const double l = a - eta;
      breaks.push_back(l);
      pieces.push_back(line_through(l, f(l), a, fa));
    }
    breaks.push_back(a);
    if (a < I.hi()) {
      const double r = a + eta;
      pieces.push_back(line_through(a, fa, r, f(r)));
      breaks.push_back(r);
    }
    pieces.push_back(f);
  }
  // the original overrides inside a bridge no longer describe the function
  FuncExpr out = piecewise(pieces, breaks);
  FuncExpr::Overrides kept;
  for (const auto& [t, v] : out.overrides()) {
    const bool inside = std::any_of(singular.begin(), singular.end(),
                                    [&](double a) { return t != a && std::fabs(t - a) < eta; });
    if (!inside) kept[t] = v;
  }
  return FuncExpr(out.root(), kept);
}

namespace {

constexpr int kMaxHalvings = 60;
constexpr int kBridgeProbes = 64;
constexpr std::size_t kMaxCaps = 64;

/// One singular point of the regularized target.
struct Site {
  double a = 0.0;
  double fa = 0.0;
  double rho = 0.0;   // clipping radius
  double edge = 0.0;  // largest |f(a +- rho) - f(a)|
  double dev_max = 0.0;
  double outer_sup = 0.0;
  bool has_left = false;
  bool has_right = false;
  bool flat_center = false;  // weight vanishes at a, so the value there is free
};

/// Site state for one clipping level.
struct Bridge {
  double eta = 0.0;
  double level = 0.0;
  double left = 0.0;
  double right = 0.0;
  double center = 0.0;
};

double clip(double d, double level) {
  if (!(level < ereal::inf)) return d;
  return std::clamp(d, -level, level);
}

/// f with deviations from f(a) clipped within rho of a.
double clipped(const Site& s, double level, double x, double fx) {
  if (std::fabs(x - s.a) >= s.rho || x == s.a) return fx;
  return s.fa + clip(ereal::sub(fx, s.fa), level);
}

double bridged(const Site& s, const Bridge& b, double x, double fx) {
  const double d = x - s.a;
  if (d == 0.0) return b.center;
  if (std::fabs(d) < b.eta) {
    const double t = std::fabs(d) / b.eta;
    const double end = d < 0 ? b.left : b.right;
    return b.center + (end - b.center) * t;
  }
  return clipped(s, b.level, x, fx);
}

/// Either bridged sites, or (omega > 0) deviations from f(a) scaled by
/// min(1, w / omega)^2 within rho of every site.
class Target {
 public:
  Target(std::vector<Site> sites, std::vector<Bridge> bridges) : sites_(std::move(sites)), bridges_(std::move(bridges)) {}
  Target(std::vector<Site> sites, double omega) : sites_(std::move(sites)), omega_(omega) {}

  double operator()(double x, double fx, double wx) const {
    for (std::size_t i = 0; i < sites_.size(); ++i) {
      const Site& s = sites_[i];
      if (!(std::fabs(x - s.a) < s.rho)) continue;
      if (omega_ == 0.0) return bridged(s, bridges_[i], x, fx);
      if (x == s.a) return s.fa;
      const double d = std::min(1.0, wx / omega_);
      return s.fa + ereal::mul(ereal::sub(fx, s.fa), d * d);
    }
    return fx;
  }

  double radius() const {
    if (omega_ > 0.0) {
      double r = 0.0;
      for (const auto& s : sites_) r = std::max(r, s.rho);
      return r;
    }
    double r = 0.0;
    for (const auto& b : bridges_) r = std::max(r, b.eta);
    return r;
  }

 private:
  std::vector<Site> sites_;
  std::vector<Bridge> bridges_;
  double omega_ = 0.0;
};

constexpr int kDampingLevels = 4;

Bridge fit_bridge(const Site& s, double level, double eps, const FuncExpr& f, const ScalarWeight& w,
                  const Grid& g) {
  const double eta0 = std::min(eps / (2.0 * (1.0 + s.outer_sup)), s.rho);
  Bridge b;
  b.level = std::max(level, s.edge);
  b.eta = eta0;
  for (int it = 0; it <= kMaxHalvings; ++it) {
    const double l = s.a - b.eta;
    const double r = s.a + b.eta;
    b.left = s.has_left ? clipped(s, b.level, l, f(l)) : s.fa;
    b.right = s.has_right ? clipped(s, b.level, r, f(r)) : s.fa;
    if (!s.flat_center) {
      b.center = s.fa;
    } else if (s.has_left && s.has_right) {
      b.center = 0.5 * (b.left + b.right);
    } else {
      b.center = s.has_left ? b.left : b.right;
    }

    double cost = 0.0;
    auto probe = [&](double x) {
      if (std::fabs(x - s.a) > b.eta) return;
      const double fx = f(x);
      const double h = clipped(s, b.level, x, fx);
      const double diff = std::fabs(ereal::sub(h, bridged(s, b, x, fx)));
      cost = std::max(cost, ereal::mul(diff, w(x)));
    };
    auto lo = std::lower_bound(g.points.begin(), g.points.end(), l);
    for (auto it2 = lo; it2 != g.points.end() && *it2 <= r; ++it2) probe(*it2);
    for (int k = 1; k < kBridgeProbes; ++k) {
      const double off = b.eta * static_cast<double>(k) / kBridgeProbes;
      if (s.has_left) probe(s.a - off);
      if (s.has_right) probe(s.a + off);
    }
    if (cost < 0.5 * eps) return b;
    b.eta *= 0.5;
  }
  return b;
}

/// Clipping levels tried by the sweep: none, then a geometric ladder between
/// the smallest level that changes anything and the largest deviation seen.
std::vector<double> cap_ladder(const std::vector<Site>& sites) {
  std::vector<double> caps{ereal::inf};
  double floor = ereal::inf;
  double top = 0.0;
  for (const auto& s : sites) {
    if (!(s.dev_max > s.edge)) continue;
    top = std::max(top, s.dev_max);
    floor = std::min(floor, std::max(s.edge, 1e-6 * s.dev_max));
  }
  if (!(top > 0.0) || !std::isfinite(floor) || !(floor > 0.0)) return caps;
  double ratio = std::pow(2.0, 0.25);
  const double span = std::log(top / floor);
  if (span / std::log(ratio) > static_cast<double>(kMaxCaps - 1)) ratio = std::exp(span / (kMaxCaps - 1));
  for (double c = floor; c < top && caps.size() < kMaxCaps; c *= ratio) caps.push_back(c);
  return caps;
}

Polynomial build(Engine engine, const Interval& I, const std::vector<double>& node_values) {
  if (engine == Engine::chebyshev) return chebyshev_from_values(I, node_values);
  return Polynomial{I, Basis::bernstein, node_values};
}

std::vector<double> engine_nodes(Engine engine, const Interval& I, std::size_t n) {
  if (engine == Engine::chebyshev) return chebyshev_nodes(I, n);
  std::vector<double> x(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    x[k] = k == n ? I.hi() : I.lo() + I.width() * static_cast<double>(k) / static_cast<double>(n);
  return x;
}

std::string diagnose(const FuncExpr& f, const ScalarWeight& w, const SingularityReport& report,
                     const SweepTrace& trace, const Config& cfg) {
  std::ostringstream os;
  if (trace.size() >= 2) {
    const double last = trace.back().second;
    const double prev = trace[trace.size() - 2].second;
    if (std::isfinite(last) && last > 0.9 * prev) os << "error stagnates near " << format_number(last);
  }
  try {
    const auto v = check_scalar_membership(f, w, report, cfg.tol_limit, cfg);
    for (const auto& c : v.conditions) {
      if (c.pass) continue;
      if (os.tellp() > 0) os << "; ";
      os << to_string(c.kind) << " fails at " << format_number(c.point) << " " << to_string(c.side) << " (limit "
         << format_number(c.measured) << ")";
    }
    if (!v.finite_norm) os << (os.tellp() > 0 ? "; " : "") << "weighted norm is infinite";
  } catch (const Error& e) {
    os << (os.tellp() > 0 ? "; " : "") << e.what();
  }
  return os.str();
}

Grid evaluation_grid(const FuncExpr& f, const ScalarWeight& w, const SingularityReport& report, const Config& cfg) {
  auto specials = report.probed_points();
  for (const auto& [t, v] : f.overrides())
    if (w.interval().contains(t)) specials.push_back(t);
  std::sort(specials.begin(), specials.end());
  specials.erase(std::unique(specials.begin(), specials.end()), specials.end());
  return default_grid(w.interval(), specials, cfg);
}

}  // namespace

namespace {

/// Per-degree best approximants; stops after the first success when asked.
std::vector<ApproxResult> run_sweep(const FuncExpr& f, const ScalarWeight& w, double eps, const ApproxOptions& opts,
                                    const Config& cfg, const SingularityReport& report, bool stop_at_first) {
  const auto bounded = check_bounded(w, report, cfg);
  if (!bounded.bounded) throw WeightUnbounded("weight is not essentially bounded");

  const Interval& I = w.interval();
  const Grid g = opts.grid ? *opts.grid : evaluation_grid(f, w, report, cfg);
  if (!(g.interval == I)) throw ShapeMismatch("evaluation grid lives on a different interval");

  const auto singular = report.singular_points();
  FuncExpr::Overrides pinned;
  for (double a : singular) {
    const double fa = f(a);
    if (!std::isfinite(fa)) throw MissingOverride(a);
    pinned[a] = fa;
  }
  const FuncExpr fp = f.with_overrides(pinned);

  const auto fs = sample(fp, g);
  const auto ws = sample(w.expr(), g);

  std::vector<Site> sites;
  for (double a : singular) {
    Site s;
    s.a = a;
    s.fa = pinned[a];
    s.rho = gap_at(a, singular, I) / 4.0;
    s.has_left = a > I.lo();
    s.has_right = a < I.hi();
    const auto* l = report.find(a, Side::left);
    const auto* r = report.find(a, Side::right);
    const bool left_singular = !l || l->cls != PointClass::regular;
    const bool right_singular = !r || r->cls != PointClass::regular;
    for (const auto* c : {l, r})
      if (c && !c->estimate.window_trace.empty())
        s.outer_sup = std::max(s.outer_sup, c->estimate.window_trace.front().sup);
    s.flat_center = w(a) <= cfg.tol_zero && left_singular && right_singular;
    auto dev = [&](double x) { return std::fabs(ereal::sub(fp(x), s.fa)); };
    if (s.has_left) s.edge = std::max(s.edge, dev(a - s.rho));
    if (s.has_right) s.edge = std::max(s.edge, dev(a + s.rho));
    for (std::size_t k = 0; k < g.points.size(); ++k) {
      const double d = std::fabs(g.points[k] - a);
      if (d > 0.0 && d < s.rho) {
        const double v = std::fabs(ereal::sub(fs.values[k], s.fa));
        if (std::isfinite(v)) s.dev_max = std::max(s.dev_max, v);
      }
    }
    sites.push_back(s);
  }

  std::vector<Target> targets;
  for (double cap : cap_ladder(sites)) {
    std::vector<Bridge> bridges;
    for (const auto& s : sites) bridges.push_back(fit_bridge(s, cap, eps, fp, w, g));
    targets.emplace_back(sites, std::move(bridges));
  }
  if (!sites.empty())
    for (int k = 0; k < kDampingLevels; ++k) targets.emplace_back(sites, eps * std::ldexp(1.0, k));

  SweepTrace trace;
  std::vector<ApproxResult> out;
  std::vector<double> ps(g.points.size());
  for (std::size_t n : sweep_degrees(opts.max_degree)) {
    const auto nodes = engine_nodes(opts.engine, I, n);
    std::vector<double> fnodes(nodes.size());
    std::vector<double> wnodes(nodes.size());
    kernels::parallel::sample(fp, nodes, fnodes);
    kernels::parallel::sample(w.expr(), nodes, wnodes);

    double best = ereal::inf;
    std::optional<Polynomial> best_poly;
    double best_radius = 0.0;
    for (const auto& target : targets) {
      std::vector<double> values(nodes.size());
      bool finite = true;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        values[k] = target(nodes[k], fnodes[k], wnodes[k]);
        finite = finite && std::isfinite(values[k]);
      }
      if (!finite) continue;
      Polynomial p = build(opts.engine, I, values);
      kernels::parallel::eval_poly(p, g.points, ps);
      const double err = kernels::parallel::weighted_residual_sup(fs.values, ps, ws.values);
      if (err < best) {
        best = err;
        best_poly = std::move(p);
        best_radius = target.radius();
      }
    }
    trace.emplace_back(n, best);
    if (!best_poly) best_poly = Polynomial{I, opts.engine == Engine::chebyshev ? Basis::chebyshev : Basis::bernstein,
                                           std::vector<double>(n + 1, 0.0)};
    out.push_back(ApproxResult{*best_poly, best, n, trace, best_radius});
    if (stop_at_first && best < eps) break;
  }
  return out;
}

}  // namespace

ApproxResult approx_scalar_weighted(const FuncExpr& f, const ScalarWeight& w, double eps, const ApproxOptions& opts,
                                    const Config& cfg) {
  if (!(eps > 0.0)) throw ValidationError("epsilon must be positive");
  const auto report = classify_weight(w, cfg);
  const auto results = run_sweep(f, w, eps, opts, cfg, report, true);
  if (!results.empty() && results.back().weighted_error < eps) return results.back();
  const SweepTrace trace = results.empty() ? SweepTrace{} : results.back().sweep_trace;
  throw MaxDegreeExceeded("no degree up to " + std::to_string(opts.max_degree) + " reaches weighted error " +
                              format_number(eps),
                          trace, diagnose(f, w, report, trace, cfg));
}

std::vector<ApproxResult> degree_sweep(const FuncExpr& f, const ScalarWeight& w, double eps,
                                       const ApproxOptions& opts, const Config& cfg) {
  if (!(eps > 0.0)) throw ValidationError("epsilon must be positive");
  return run_sweep(f, w, eps, opts, cfg, classify_weight(w, cfg), false);
}

DivideOutResult divide_out_approx(const FuncExpr& f, const ScalarWeight& w, double eps, const ApproxOptions& opts,
                                  const Config& cfg) {
  if (!(eps > 0.0)) throw ValidationError("epsilon must be positive");
  const FuncExpr winv = invert_weight(w, cfg);
  const FuncExpr fw = f * w.expr();
  const Interval& I = w.interval();

  Grid g = [&] {
    if (opts.grid) return *opts.grid;
    std::vector<double> specials = w.declared_points();
    for (const auto& [t, v] : f.overrides())
      if (I.contains(t)) specials.push_back(t);
    std::sort(specials.begin(), specials.end());
    specials.erase(std::unique(specials.begin(), specials.end()), specials.end());
    return default_grid(I, specials, cfg);
  }();

  const auto fws = sample(fw, g);
  const auto fs = sample(f, g);
  const auto ws = sample(w.expr(), g);
  const auto winvs = sample(winv, g);
  const std::vector<double> ones(g.points.size(), 1.0);

  std::vector<std::size_t> degrees{0, 1, 2};
  for (std::size_t n : sweep_degrees(opts.max_degree)) degrees.push_back(n);
  SweepTrace trace;
  std::vector<double> qs(g.points.size());
  for (std::size_t n : degrees) {
    if (n > opts.max_degree) break;
    const auto nodes = engine_nodes(opts.engine, I, n);
    std::vector<double> values(nodes.size());
    kernels::parallel::sample(fw, nodes, values);
    if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
      trace.emplace_back(n, ereal::inf);
      continue;
    }
    Polynomial q = build(opts.engine, I, values);
    kernels::parallel::eval_poly(q, g.points, qs);
    const double unweighted = kernels::parallel::weighted_residual_sup(fws.values, qs, ones);
    trace.emplace_back(n, unweighted);
    if (unweighted < eps) {
      std::vector<double> approx(g.points.size());
      for (std::size_t k = 0; k < approx.size(); ++k) approx[k] = qs[k] * winvs.values[k];
      const double weighted = kernels::parallel::weighted_residual_sup(fs.values, approx, ws.values);
      return DivideOutResult{std::move(q), winv, weighted, unweighted, n, trace, std::move(g)};
    }
  }
  std::string diagnosis;
  if (trace.size() >= 2 && trace.back().second > 0.9 * trace[trace.size() - 2].second)
    diagnosis = "f w looks discontinuous: unweighted error stagnates near " + format_number(trace.back().second);
  throw MaxDegreeExceeded("no degree up to " + std::to_string(opts.max_degree) + " brings f w within " +
                              format_number(eps),
                          trace, diagnosis);
}

}  // namespace wapprox
