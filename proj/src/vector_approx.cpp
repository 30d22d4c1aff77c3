#include "wapprox/vector_approx.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "wapprox/error.hpp"
#include "wapprox/extended_real.hpp"
#include "wapprox/kernels.hpp"

namespace wapprox {

VectorFunction VectorFunction::finite(std::vector<FuncExpr> components) {
  if (components.empty()) throw ShapeMismatch("vector function needs at least one component");
  return VectorFunction{std::move(components), DimKind::finite, std::nullopt};
}

VectorFunction VectorFunction::truncated(std::vector<FuncExpr> components, TailCertificate cert) {
  if (components.empty()) throw ShapeMismatch("vector function needs at least one component");
  return VectorFunction{std::move(components), DimKind::truncated_l2, cert};
}

namespace {

void check_shapes(const VectorFunction& F, const VectorWeight& W) {
  if (F.size() != W.size())
    throw ShapeMismatch("function has " + std::to_string(F.size()) + " components, weight has " +
                        std::to_string(W.size()));
}

struct Rows {
  std::vector<std::vector<double>> f;
  std::vector<std::vector<double>> w;
};

Rows sample_rows(const VectorFunction& F, const VectorWeight& W, const Grid& g) {
  check_shapes(F, W);
  Rows rows;
  for (std::size_t j = 0; j < F.size(); ++j) {
    try {
      rows.f.push_back(sample(F.components[j], g).values);
      rows.w.push_back(sample(W.components()[j].expr(), g).values);
    } catch (Error& e) {
      e.set_component(j);
      throw;
    }
  }
  return rows;
}

double residual_norm(const Rows& rows, const std::vector<std::vector<double>>& p) {
  const std::size_t n = rows.f.empty() ? 0 : rows.f.front().size();
  std::vector<double> pointwise(n);
  kernels::parallel::g_norm_pointwise(rows.f, p, rows.w, pointwise);
  const std::vector<double> zero(n, 0.0);
  const std::vector<double> one(n, 1.0);
  return kernels::parallel::weighted_residual_sup(pointwise, zero, one);
}

}  // namespace

double weighted_G_norm(const VectorFunction& F, const VectorWeight& W, const Grid& g) {
  const Rows rows = sample_rows(F, W, g);
  const std::vector<std::vector<double>> zero(F.size(), std::vector<double>(g.points.size(), 0.0));
  return residual_norm(rows, zero);
}

double weighted_G_residual(const VectorFunction& F, const VectorPolynomial& P, const VectorWeight& W, const Grid& g) {
  if (P.components.size() > F.size()) throw ShapeMismatch("polynomial has more components than the function");
  const Rows rows = sample_rows(F, W, g);
  std::vector<std::vector<double>> p(F.size(), std::vector<double>(g.points.size(), 0.0));
  for (std::size_t j = 0; j < P.components.size(); ++j) kernels::parallel::eval_poly(P.components[j], g.points, p[j]);
  return residual_norm(rows, p);
}

std::vector<double> allocate_budgets(double eps, DimKind kind, std::size_t count) {
  if (!(eps > 0.0)) throw ValidationError("epsilon must be positive");
  std::vector<double> b(count);
  for (std::size_t j = 0; j < count; ++j)
    b[j] = kind == DimKind::finite ? eps / std::sqrt(static_cast<double>(count)) : eps / static_cast<double>(j + 1);
  return b;
}

double tail_bound(const TailCertificate& cert, std::size_t N) {
  if (cert.r == 0.0) return 0.0;
  return cert.C * std::pow(cert.r, static_cast<double>(N + 1)) / std::sqrt(1.0 - cert.r * cert.r);
}

std::size_t choose_truncation(const TailCertificate& cert, double eps_tail, std::size_t declared_end) {
  if (!(eps_tail > 0.0)) throw ValidationError("tail tolerance must be positive");
  if (cert.r == 0.0) return declared_end;
  std::size_t N = 0;
  while (tail_bound(cert, N) > eps_tail) ++N;
  return N;
}

double certificate_bound(double eps, DimKind kind, std::size_t N, double tail) {
  if (kind == DimKind::finite) return eps;
  double s = 0.0;
  for (std::size_t j = 0; j <= N; ++j) {
    const double d = static_cast<double>(j + 1);
    s += 1.0 / (d * d);
  }
  s += 1.0 / static_cast<double>(N + 1);
  return eps * (1.0 + std::sqrt(s)) + tail;
}

Grid shared_grid(const VectorFunction& F, const VectorWeight& W, const Config& cfg) {
  check_shapes(F, W);
  const Interval I = W.components().front().interval();
  std::vector<double> specials;
  for (std::size_t j = 0; j < W.size(); ++j) {
    const auto& wj = W.components()[j];
    if (!(wj.interval() == I)) throw ShapeMismatch("component weights live on different intervals");
    try {
      for (double a : classify_weight(wj, cfg).probed_points()) specials.push_back(a);
    } catch (Error& e) {
      e.set_component(j);
      throw;
    }
    for (const auto& [t, v] : F.components[j].overrides())
      if (I.contains(t)) specials.push_back(t);
  }
  std::sort(specials.begin(), specials.end());
  specials.erase(std::unique(specials.begin(), specials.end()), specials.end());
  return default_grid(I, specials, cfg);
}

VectorApproxResult approx_vector(const VectorFunction& F, const VectorWeight& W, double eps,
                                 const ApproxOptions& opts, std::optional<double> eps_tail, const Config& cfg) {
  check_shapes(F, W);
  if (F.kind != W.kind()) throw ShapeMismatch("function and weight disagree on the dimension kind");
  if (!(eps > 0.0)) throw ValidationError("epsilon must be positive");

  ApproxCertificate cert;
  cert.kind = F.kind;
  cert.epsilon = eps;
  std::size_t count = F.size();
  if (F.kind == DimKind::truncated_l2) {
    if (!F.tail) throw ShapeMismatch("truncated function needs a tail certificate");
    const std::size_t N = std::min(choose_truncation(*F.tail, eps_tail.value_or(eps), F.size() - 1), F.size() - 1);
    cert.truncation = N;
    cert.tail_contribution = tail_bound(*F.tail, N) * W.tail_weight_bound();
    count = N + 1;
  } else {
    cert.truncation = F.size() - 1;
  }
  cert.budgets = allocate_budgets(eps, F.kind, count);

  ApproxOptions local = opts;
  local.grid = opts.grid ? *opts.grid : shared_grid(F, W, cfg);
  const Grid& g = *local.grid;

  VectorPolynomial P;
  std::vector<SweepTrace> traces;
  for (std::size_t j = 0; j < count; ++j) {
    const auto& wj = W.components()[j];
    try {
      ApproxResult r = approx_scalar_weighted(F.components[j], wj, cert.budgets[j], local, cfg);
      if (!(r.weighted_error <= cert.budgets[j]))
        throw CertificateInvalid("component error " + format_number(r.weighted_error) + " exceeds its budget " +
                                 format_number(cert.budgets[j]));
      cert.component_errors.push_back(r.weighted_error);
      cert.degrees.push_back(r.degree);
      traces.push_back(r.sweep_trace);
      P.components.push_back(std::move(r.poly));
    } catch (const MaxDegreeExceeded& e) {
      throw ComponentFailed(j, e);
    } catch (Error& e) {
      e.set_component(j);
      throw;
    }
  }

  cert.total_weighted_error = weighted_G_residual(F, P, W, g);
  cert.bound = certificate_bound(eps, F.kind, cert.truncation, cert.tail_contribution);
  if (!(cert.total_weighted_error <= cert.bound))
    throw CertificateInvalid("measured total " + format_number(cert.total_weighted_error) + " exceeds the bound " +
                             format_number(cert.bound));
  return VectorApproxResult{std::move(P), std::move(cert), std::move(traces), g};
}

double parseval_crosscheck(const VectorFunction& F, const VectorWeight& W, const Grid& g) {
  const Rows rows = sample_rows(F, W, g);
  const std::size_t m = F.size();
  const std::size_t n = g.points.size();
  Eigen::MatrixXd products(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < n; ++k)
      products(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = ereal::mul(rows.f[j][k], rows.w[j][k]);

  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto column = products.col(static_cast<Eigen::Index>(k));
    if (!column.allFinite()) continue;
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double v = column(static_cast<Eigen::Index>(j));
      s += v * v;
    }
    const double summed = std::sqrt(s);
    const double scaled = column.stableNorm();
    worst = std::max(worst, std::fabs(summed - scaled));
  }
  return worst;
}

}  // namespace wapprox
