#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wapprox/config.hpp"
#include "wapprox/expr.hpp"
#include "wapprox/grid.hpp"
#include "wapprox/polynomial.hpp"
#include "wapprox/scalar_approx.hpp"
#include "wapprox/weights.hpp"

namespace wapprox {

/// Hilbert-space valued function given by its coordinates. A truncated l2
/// function carries a decay certificate for the coordinates it omits.
struct VectorFunction {
  std::vector<FuncExpr> components;
  DimKind kind = DimKind::finite;
  std::optional<TailCertificate> tail;

  static VectorFunction finite(std::vector<FuncExpr> components);
  static VectorFunction truncated(std::vector<FuncExpr> components, TailCertificate cert);
  std::size_t size() const { return components.size(); }
};

struct VectorPolynomial {
  std::vector<Polynomial> components;
};

struct ApproxCertificate {
  DimKind kind = DimKind::finite;
  double epsilon = 0.0;
  std::vector<double> budgets;
  std::vector<double> component_errors;
  std::vector<std::size_t> degrees;
  std::size_t truncation = 0;  // last approximated coordinate (truncated case)
  double tail_contribution = 0.0;
  double bound = 0.0;  // value of the bound formula
  double total_weighted_error = 0.0;
};

struct VectorApproxResult {
  VectorPolynomial poly;
  ApproxCertificate certificate;
  std::vector<SweepTrace> traces;  // per approximated component
  Grid grid;
};

/// max_t sqrt(sum_j (f_j(t) w_j(t))^2) with 0 * inf = 0.
double weighted_G_norm(const VectorFunction& F, const VectorWeight& W, const Grid& g);

/// Same norm for the residual F - P (missing polynomial components count as 0).
double weighted_G_residual(const VectorFunction& F, const VectorPolynomial& P, const VectorWeight& W, const Grid& g);

/// eps / sqrt(count) each (finite) or eps / (j + 1), j < count (truncated).
std::vector<double> allocate_budgets(double eps, DimKind kind, std::size_t count);

/// C r^(N+1) / sqrt(1 - r^2): sup bound on the l2 norm of coordinates past N.
double tail_bound(const TailCertificate& cert, std::size_t N);

/// Smallest N with tail_bound(cert, N) <= eps_tail; `declared_end` when r = 0.
std::size_t choose_truncation(const TailCertificate& cert, double eps_tail, std::size_t declared_end = 0);

/// eps (finite) or eps (1 + sqrt(sum_{j<=N} 1/(j+1)^2 + 1/(N+1))) + tail.
double certificate_bound(double eps, DimKind kind, std::size_t N, double tail);

/// Budgets, componentwise approx_scalar_weighted on one shared grid, and a
/// certificate whose total is measured on that grid. In the truncated case
/// only coordinates 0..N are approximated, N = min(choose_truncation(cert,
/// eps_tail), size - 1); later coordinates get the zero polynomial.
///
/// Throws ComponentFailed(j), WeightUnbounded tagged with j, ShapeMismatch and
/// CertificateInvalid.
VectorApproxResult approx_vector(const VectorFunction& F, const VectorWeight& W, double eps,
                                 const ApproxOptions& opts = {}, std::optional<double> eps_tail = std::nullopt,
                                 const Config& cfg = {});

/// Grid shared by every component: the default grid refined at every
/// component weight's probed points and every override point of F.
Grid shared_grid(const VectorFunction& F, const VectorWeight& W, const Config& cfg = {});

/// Largest gap over the grid between two evaluations of sqrt(sum_j (f_j w_j)^2):
/// a running sum of squares and a scaled (overflow-safe) norm of the same row.
double parseval_crosscheck(const VectorFunction& F, const VectorWeight& W, const Grid& g);

}  // namespace wapprox
