#include "wapprox/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wapprox/error.hpp"
#include "wapprox/extended_real.hpp"

namespace wapprox {

std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

namespace {

constexpr double kGolden = 0.3819660112501051;  // 2 - phi
constexpr std::size_t kPolishCandidates = 4;

struct Probe {
  double x;
  double v;
};

/// Bracketed golden-section search. Requires v(mid) <= v(lo), v(hi); every
/// step keeps that invariant, so it converges to a local minimum of `g`.
double golden_min(const std::function<double(double)>& g, Probe lo, Probe mid, Probe hi, int iterations) {
  for (int it = 0; it < iterations; ++it) {
    const double tiny = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(mid.x), 1e-300);
    if (hi.x - lo.x <= tiny) break;
    const bool right_larger = (hi.x - mid.x) > (mid.x - lo.x);
    const double x = right_larger ? mid.x + kGolden * (hi.x - mid.x) : mid.x - kGolden * (mid.x - lo.x);
    if (x <= lo.x || x >= hi.x || x == mid.x) break;
    const Probe p{x, g(x)};
    if (p.v < mid.v) {
      if (x > mid.x) {
        lo = mid;
      } else {
        hi = mid;
      }
      mid = p;
    } else if (x > mid.x) {
      hi = p;
    } else {
      lo = p;
    }
  }
  return mid.v;
}

struct Extrapolated {
  double value;
  bool stable;
};

/// Limit of a monotone window sequence. `increasing` selects the direction
/// the sequence is known to move in (infs increase, sups decrease).
Extrapolated extrapolate(const std::vector<double>& s, bool increasing, double tol) {
  const std::size_t n = s.size();
  const double last = s.back();
  if (n < 2) return {last, false};
  const double prev = s[n - 2];
  const bool settled = (last == prev) || (std::isfinite(last) && std::isfinite(prev) && std::fabs(last - prev) < tol);
  if (n < 4) return {last, settled};
  for (std::size_t i = n - 4; i < n; ++i)
    if (!std::isfinite(s[i])) return {last, settled};
  const double d1 = s[n - 1] - s[n - 2];
  const double d2 = s[n - 2] - s[n - 3];
  const double d3 = s[n - 3] - s[n - 4];
  if (d1 == 0.0) return {last, true};
  if (d2 == 0.0 || d3 == 0.0) return {last, settled};
  const double q1 = d1 / d2;
  const double q2 = d2 / d3;
  const bool consistent = q1 > 0.0 && std::fabs(q1 - q2) <= 0.1 * q1;
  if (!consistent) return {last, settled};
  if (q1 < 0.95) return {last + d1 * q1 / (1.0 - q1), true};
  if (q1 > 1.05) {
    // consistent geometric growth: the sequence runs off to infinity
    return {increasing ? ereal::inf : -ereal::inf, true};
  }
  return {last, settled};
}

}  // namespace

SideLimitEstimate one_sided_cascade(const std::function<double(double)>& g, const Interval& interval, double a,
                                    Side side, const CascadeParams& params, double tol_converge) {
  if (!interval.contains(a)) throw LimitError("limit point " + format_number(a) + " outside the interval");
  const double dir = side == Side::right ? 1.0 : -1.0;
  const double room = side == Side::right ? interval.hi() - a : a - interval.lo();
  if (!(room > 0.0))
    throw LimitError("no room on the " + to_string(side) + " of " + format_number(a) + " inside the interval");

  const double ulp = std::nextafter(std::fabs(a), ereal::inf) - std::fabs(a);
  const double min_width = 64.0 * ulp;
  const double delta0 = params.delta_fraction * interval.width();
  const int m = std::max(params.samples_per_window, 3);

  std::vector<double> widths;
  for (int k = 0; k <= params.levels; ++k) {
    const double h = std::min(std::ldexp(delta0, -k), room);
    if (h < min_width * m) break;
    if (!widths.empty() && h >= widths.back()) continue;
    widths.push_back(h);
  }
  if (widths.empty()) throw LimitError("empty window after clipping at " + format_number(a));

  const std::size_t nw = widths.size();
  std::vector<double> raw_inf(nw);
  std::vector<double> raw_sup(nw);
  for (std::size_t k = 0; k < nw; ++k) {
    const double h = widths[k];
    std::vector<Probe> probes;
    probes.reserve(static_cast<std::size_t>(m + params.approach_steps));
    for (int j = 1; j <= m; ++j) {
      double off = h * (static_cast<double>(j) / m);
      const double x = j == m && side == Side::right && h == room ? interval.hi()
                       : j == m && side == Side::left && h == room ? interval.lo()
                                                                   : a + dir * off;
      probes.push_back({x, 0.0});
    }
    if (k + 1 == nw) {
      for (int s = 1; s <= params.approach_steps; ++s) {
        const double off = std::ldexp(h / m, -s);
        if (off < min_width) break;
        probes.push_back({a + dir * off, 0.0});
      }
    }
    std::sort(probes.begin(), probes.end(), [](const Probe& p, const Probe& q) { return p.x < q.x; });
    probes.erase(std::unique(probes.begin(), probes.end(), [](const Probe& p, const Probe& q) { return p.x == q.x; }),
                 probes.end());
    for (auto& p : probes) p.v = g(p.x);

    double lo = probes.front().v;
    double hi = probes.front().v;
    for (const auto& p : probes) {
      lo = std::min(lo, p.v);
      hi = std::max(hi, p.v);
    }
    // polish the best few interior probes; edge extrema have no bracket and
    // probes very close to a may sit in rounding noise
    std::vector<std::size_t> order(probes.size() > 2 ? probes.size() - 2 : 0);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i + 1;
    const std::size_t polish = std::min<std::size_t>(order.size(), kPolishCandidates);
    auto by_value = [&probes](bool smallest) {
      return [&probes, smallest](std::size_t i, std::size_t j) {
        return smallest ? probes[i].v < probes[j].v : probes[i].v > probes[j].v;
      };
    };
    std::partial_sort(order.begin(), order.begin() + polish, order.end(), by_value(true));
    for (std::size_t c = 0; c < polish; ++c) {
      const std::size_t i = order[c];
      if (!std::isfinite(probes[i].v)) continue;
      lo = std::min(lo, golden_min(g, probes[i - 1], probes[i], probes[i + 1], params.refine_iterations));
    }
    std::partial_sort(order.begin(), order.begin() + polish, order.end(), by_value(false));
    auto neg = [&g](double x) { return -g(x); };
    for (std::size_t c = 0; c < polish; ++c) {
      const std::size_t i = order[c];
      if (!std::isfinite(probes[i].v)) continue;
      const Probe l{probes[i - 1].x, -probes[i - 1].v};
      const Probe m0{probes[i].x, -probes[i].v};
      const Probe r{probes[i + 1].x, -probes[i + 1].v};
      hi = std::max(hi, -golden_min(neg, l, m0, r, params.refine_iterations));
    }
    raw_inf[k] = lo;
    raw_sup[k] = hi;
  }

  SideLimitEstimate est;
  est.point = a;
  est.side = side;
  est.window_trace.resize(nw);
  double run_inf = ereal::inf;
  double run_sup = -ereal::inf;
  for (std::size_t k = nw; k-- > 0;) {
    run_inf = std::min(run_inf, raw_inf[k]);
    run_sup = std::max(run_sup, raw_sup[k]);
    est.window_trace[k] = WindowStat{widths[k], run_inf, run_sup};
  }

  std::vector<double> infs(nw);
  std::vector<double> sups(nw);
  for (std::size_t k = 0; k < nw; ++k) {
    infs[k] = est.window_trace[k].inf;
    sups[k] = est.window_trace[k].sup;
  }
  const auto li = extrapolate(infs, /*increasing=*/true, tol_converge);
  const auto ls = extrapolate(sups, /*increasing=*/false, tol_converge);
  const double inner_inf = infs.back();
  const double inner_sup = sups.back();
  // the true limits satisfy inf_K <= liminf and limsup <= sup_K
  est.liminf_est = std::max(li.value, inner_inf);
  est.limsup_est = std::min(ls.value, inner_sup);
  if (est.limsup_est < est.liminf_est) {
    // sequences crossed: both extrapolations chase the same limit
    if (std::isinf(est.liminf_est)) {
      est.limsup_est = est.liminf_est;
    } else {
      est.liminf_est = est.limsup_est = std::max(est.liminf_est, est.limsup_est);
    }
  }
  est.converged = nw >= 2 && li.stable && ls.stable;
  return est;
}

}  // namespace wapprox
