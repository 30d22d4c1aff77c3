#include "wapprox/polynomial.hpp"

#include <cmath>
#include <numbers>

#include "wapprox/error.hpp"

namespace wapprox {

std::string to_string(Basis b) {
  switch (b) {
    case Basis::monomial: return "monomial";
    case Basis::chebyshev: return "chebyshev";
    case Basis::bernstein: return "bernstein";
  }
  return "?";
}

double Polynomial::operator()(double x) const {
  if (coeffs.empty()) return 0.0;
  switch (basis) {
    case Basis::monomial: {
      double r = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
      return r;
    }
    case Basis::chebyshev: {
      const double t = (2.0 * x - interval.lo() - interval.hi()) / interval.width();
      double b1 = 0.0;
      double b2 = 0.0;
      for (std::size_t j = coeffs.size() - 1; j >= 1; --j) {
        const double b0 = coeffs[j] + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
      }
      return coeffs[0] + t * b1 - b2;
    }
    case Basis::bernstein: {
      const double s = (x - interval.lo()) / interval.width();
      const double r = 1.0 - s;
      std::vector<double> b(coeffs);
      for (std::size_t level = b.size() - 1; level > 0; --level)
        for (std::size_t k = 0; k < level; ++k) b[k] = r * b[k] + s * b[k + 1];
      return b[0];
    }
  }
  return 0.0;
}

namespace {

double node_value(const FuncExpr& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) throw EvalDomainError("function is infinite at an interpolation node", x);
  return v;
}

}  // namespace

Polynomial bernstein_approx(const FuncExpr& f, const Interval& interval, std::size_t n) {
  std::vector<double> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    double x = n == 0 ? interval.lo()
                      : interval.lo() + interval.width() * (static_cast<double>(k) / static_cast<double>(n));
    if (k == n) x = interval.hi();
    c[k] = node_value(f, x);
  }
  return Polynomial{interval, Basis::bernstein, std::move(c)};
}

std::vector<double> chebyshev_nodes(const Interval& interval, std::size_t n) {
  const double mid = 0.5 * (interval.lo() + interval.hi());
  const double half = 0.5 * interval.width();
  if (n == 0) return {mid};
  std::vector<double> x(n + 1);
  const double nn = static_cast<double>(n);
  for (std::size_t k = 0; k <= n; ++k) {
    // cos(pi k / n) written as a sine so symmetric nodes are exact mirrors
    const double c = std::sin(std::numbers::pi * (nn - 2.0 * static_cast<double>(k)) / (2.0 * nn));
    x[k] = mid + half * c;
  }
  x.front() = interval.hi();
  x.back() = interval.lo();
  return x;
}

Polynomial chebyshev_from_values(const Interval& interval, const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("chebyshev_from_values: no values");
  const std::size_t n = v.size() - 1;
  if (n == 0) return Polynomial{interval, Basis::chebyshev, {v[0]}};
  // cos(pi m / n) for m = 0..2n-1; j*k is reduced mod 2n to index it
  std::vector<double> table(2 * n);
  for (std::size_t m = 0; m < 2 * n; ++m)
    table[m] = std::cos(std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
  std::vector<double> c(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double term = v[k] * table[(j * k) % (2 * n)];
      s += (k == 0 || k == n) ? 0.5 * term : term;
    }
    c[j] = 2.0 * s / static_cast<double>(n);
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return Polynomial{interval, Basis::chebyshev, std::move(c)};
}

Polynomial chebyshev_interp(const FuncExpr& f, const Interval& interval, std::size_t n) {
  const auto nodes = chebyshev_nodes(interval, n);
  std::vector<double> v(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) v[k] = node_value(f, nodes[k]);
  return chebyshev_from_values(interval, v);
}

}  // namespace wapprox
