#include "wapprox/extended_real.hpp"

#include "wapprox/error.hpp"

namespace wapprox::ereal {

namespace {

double checked(double r, const char* what) {
  if (std::isnan(r)) throw EvalDomainError(what);
  return r;
}

}  // namespace

double add(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) != (b > 0)) throw EvalDomainError("inf - inf");
  return checked(a + b, "undefined sum");
}

double sub(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) == (b > 0)) throw EvalDomainError("inf - inf");
  return checked(a - b, "undefined difference");
}

double mul(double a, double b) {
  if ((a == 0.0 && std::isinf(b)) || (b == 0.0 && std::isinf(a))) return 0.0;
  return checked(a * b, "undefined product");
}

double div(double a, double b) {
  if (b == 0.0) {
    if (a == 0.0) throw EvalDomainError("0 / 0");
    return a > 0 ? inf : -inf;
  }
  if (std::isinf(a) && std::isinf(b)) throw EvalDomainError("inf / inf");
  return checked(a / b, "undefined quotient");
}

double pow(double base, double exponent) {
  if (base < 0.0 && std::isfinite(base) && exponent != std::trunc(exponent))
    throw EvalDomainError("negative base with non-integer exponent");
  if (base == 0.0) {
    if (exponent == 0.0) return 1.0;
    return exponent > 0 ? 0.0 : inf;
  }
  if (std::isinf(base) && base < 0 && exponent != std::trunc(exponent))
    throw EvalDomainError("negative base with non-integer exponent");
  return checked(std::pow(base, exponent), "undefined power");
}

double log(double a) {
  if (a < 0.0) throw EvalDomainError("log of a negative number");
  if (a == 0.0) return -inf;
  return std::log(a);
}

double sin(double a) {
  if (std::isinf(a)) throw EvalDomainError("sin of infinity");
  return std::sin(a);
}

double cos(double a) {
  if (std::isinf(a)) throw EvalDomainError("cos of infinity");
  return std::cos(a);
}

double exp(double a) { return std::exp(a); }

double sign(double a) {
  if (a > 0) return 1.0;
  if (a < 0) return -1.0;
  return 0.0;
}

}  // namespace wapprox::ereal
