#include "wapprox/kernels.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include "wapprox/expr.hpp"
#include "wapprox/extended_real.hpp"
#include "wapprox/polynomial.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wapprox::kernels {

namespace {

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel: span sizes differ");
}

void check_columns(Columns f, Columns p, Columns w, std::size_t n) {
  if (f.size() != p.size() || f.size() != w.size()) throw std::invalid_argument("kernel: component counts differ");
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f[j].size() != n || p[j].size() != n || w[j].size() != n)
      throw std::invalid_argument("kernel: column length differs from grid");
}

double point_g_norm(Columns f, Columns p, Columns w, std::size_t k) {
  double s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double r = ereal::weighted_residual(f[j][k], p[j][k], w[j][k]);
    if (std::isinf(r)) return ereal::inf;
    s += r * r;
  }
  return std::sqrt(s);
}

}  // namespace

namespace serial {

void sample(const FuncExpr& e, std::span<const double> points, std::span<double> out) {
  check_sizes(points.size(), out.size());
  for (std::size_t k = 0; k < points.size(); ++k) out[k] = e(points[k]);
}

void eval_poly(const Polynomial& p, std::span<const double> points, std::span<double> out) {
  check_sizes(points.size(), out.size());
  for (std::size_t k = 0; k < points.size(); ++k) out[k] = p(points[k]);
}

double weighted_residual_sup(std::span<const double> f, std::span<const double> p, std::span<const double> w) {
  check_sizes(f.size(), p.size());
  check_sizes(f.size(), w.size());
  double m = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, ereal::weighted_residual(f[k], p[k], w[k]));
  return m;
}

void g_norm_pointwise(Columns f, Columns p, Columns w, std::span<double> out) {
  check_columns(f, p, w, out.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = point_g_norm(f, p, w, k);
}

}  // namespace serial

namespace parallel {

// Exceptions must not leave an OpenMP region. The failure at the smallest
// index is kept so the reported error matches the serial loop.
void sample(const FuncExpr& e, std::span<const double> points, std::span<double> out) {
  check_sizes(points.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  std::ptrdiff_t first_bad = n;
  std::exception_ptr err;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      out[k] = e(points[k]);
    } catch (...) {
#pragma omp critical(wapprox_sample_error)
      {
        if (k < first_bad) {
          first_bad = k;
          err = std::current_exception();
        }
      }
    }
  }
  if (err) std::rethrow_exception(err);
}

void eval_poly(const Polynomial& p, std::span<const double> points, std::span<double> out) {
  check_sizes(points.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = p(points[k]);
}

double weighted_residual_sup(std::span<const double> f, std::span<const double> p, std::span<const double> w) {
  check_sizes(f.size(), p.size());
  check_sizes(f.size(), w.size());
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  double m = 0.0;
  bool failed = false;
#pragma omp parallel for schedule(static) reduction(max : m) reduction(|| : failed)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    // inf - inf in the residual is the only failure mode
    if (std::isinf(f[k]) && std::isinf(p[k]) && (f[k] > 0) == (p[k] > 0)) {
      failed = true;
      continue;
    }
    m = std::max(m, ereal::weighted_residual(f[k], p[k], w[k]));
  }
  if (failed) return serial::weighted_residual_sup(f, p, w);  // raises the same error
  return m;
}

void g_norm_pointwise(Columns f, Columns p, Columns w, std::span<double> out) {
  check_columns(f, p, w, out.size());
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      out[k] = point_g_norm(f, p, w, static_cast<std::size_t>(k));
    } catch (...) {
#pragma omp critical(wapprox_gnorm_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) serial::g_norm_pointwise(f, p, w, out);  // deterministic first error
}

}  // namespace parallel

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace wapprox::kernels
