#pragma once

#include <charconv>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wapprox {

namespace detail {
inline std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}
}  // namespace detail

/// Base of every error raised by the library. Carries an optional component
/// index so vector-level operations can tag scalar failures in flight.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg), msg_(msg) {}

  const char* what() const noexcept override { return msg_.c_str(); }

  std::optional<std::size_t> component() const { return component_; }

  void set_component(std::size_t j) {
    if (component_) return;
    component_ = j;
    msg_ = "component " + std::to_string(j) + ": " + msg_;
  }

 private:
  std::string msg_;
  std::optional<std::size_t> component_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset, std::string expected)
      : Error(msg), offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

class UnknownIdentifier : public ParseError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : ParseError("unknown identifier '" + name + "' at offset " + std::to_string(offset), offset,
                   "function name or 'x'"),
        name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Expression is ill-posed at a point (inf - inf, log of a negative, ...).
class EvalDomainError : public Error {
 public:
  explicit EvalDomainError(const std::string& msg, std::optional<double> point = std::nullopt)
      : Error(point ? msg + " at x = " + detail::shortest(*point) : msg), reason_(msg), point_(point) {}
  const std::string& reason() const { return reason_; }
  std::optional<double> point() const { return point_; }

 private:
  std::string reason_;
  std::optional<double> point_;
};

class GridError : public Error {
 public:
  using Error::Error;
};

/// One-sided limit cannot be probed (no room on that side, empty window).
class LimitError : public Error {
 public:
  using Error::Error;
};

/// Weight violates the weight contract (negative values, vanishing on a
/// subinterval, inconsistent tail bound).
class WeightInvalid : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public WeightInvalid {
 public:
  using WeightInvalid::WeightInvalid;
};

class WeightUnbounded : public WeightInvalid {
 public:
  using WeightInvalid::WeightInvalid;
};

class MissingOverride : public Error {
 public:
  explicit MissingOverride(double point)
      : Error("function needs an explicit value override at singular point " + detail::shortest(point)),
        point_(point) {}
  double point() const { return point_; }

 private:
  double point_;
};

/// Report was produced from a different weight than the one supplied.
class ReportMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class RegularizationError : public Error {
 public:
  using Error::Error;
};

class MaxDegreeExceeded : public Error {
 public:
  MaxDegreeExceeded(const std::string& msg, std::vector<std::pair<std::size_t, double>> trace,
                    std::string diagnosis)
      : Error(msg + (diagnosis.empty() ? std::string{} : "; " + diagnosis)),
        trace_(std::move(trace)),
        diagnosis_(std::move(diagnosis)) {}
  const std::vector<std::pair<std::size_t, double>>& trace() const { return trace_; }
  const std::string& diagnosis() const { return diagnosis_; }

 private:
  std::vector<std::pair<std::size_t, double>> trace_;
  std::string diagnosis_;
};

class ComponentFailed : public Error {
 public:
  ComponentFailed(std::size_t index, const MaxDegreeExceeded& cause)
      : Error("component " + std::to_string(index) + " failed: " + cause.what()),
        index_(index),
        trace_(cause.trace()) {}
  std::size_t index() const { return index_; }
  const std::vector<std::pair<std::size_t, double>>& trace() const { return trace_; }

 private:
  std::size_t index_;
  std::vector<std::pair<std::size_t, double>> trace_;
};

class CertificateInvalid : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Job file problem; the message names section, key and line.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace wapprox
