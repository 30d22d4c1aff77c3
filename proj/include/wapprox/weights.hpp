#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wapprox/cascade.hpp"
#include "wapprox/config.hpp"
#include "wapprox/expr.hpp"
#include "wapprox/grid.hpp"

namespace wapprox {

/// Nonnegative weight on a compact interval with its candidate singular
/// points. Construction samples the weight on the default grid and rejects
/// negative values and weights that vanish on a subinterval.
class ScalarWeight {
 public:
  ScalarWeight(FuncExpr expr, std::vector<double> declared_points, Interval interval, const Config& cfg = {});

  const FuncExpr& expr() const { return expr_; }
  const std::vector<double>& declared_points() const { return declared_; }
  const Interval& interval() const { return interval_; }
  double operator()(double t) const { return expr_(t); }

  /// Identifies the weight a report was computed from.
  std::string signature() const;

  /// c * w, keeping the declared points.
  ScalarWeight scaled(double c, const Config& cfg = {}) const;

 private:
  FuncExpr expr_;
  std::vector<double> declared_;
  Interval interval_;
};

enum class DimKind { finite, truncated_l2 };

/// Declared decay |f_j(t)| <= C r^j for every coordinate beyond the truncation
/// index. r = 0 means the function has no coordinates past its last component.
struct TailCertificate {
  double C;
  double r;
  TailCertificate(double C, double r);
};

/// Coordinatewise (admissible*) weight: one scalar weight per coordinate.
class VectorWeight {
 public:
  static VectorWeight finite(std::vector<ScalarWeight> components);
  /// `tail_weight_bound` bounds the ess sup of every coordinate weight past the
  /// last component; it defaults to, and may not exceed, the largest ess sup
  /// among the given components.
  static VectorWeight truncated(std::vector<ScalarWeight> components, std::optional<double> tail_weight_bound,
                                const Config& cfg = {});

  const std::vector<ScalarWeight>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  DimKind kind() const { return kind_; }
  double tail_weight_bound() const { return tail_weight_bound_; }

 private:
  VectorWeight(std::vector<ScalarWeight> c, DimKind k, double tail) : components_(std::move(c)), kind_(k), tail_weight_bound_(tail) {}
  std::vector<ScalarWeight> components_;
  DimKind kind_;
  double tail_weight_bound_ = 0.0;
};

enum class PointClass { regular, type1, type2, type3 };
enum class PointSource { declared, detected, endpoint };

std::string to_string(PointClass c);
std::string to_string(PointSource s);

struct SideClassification {
  double point = 0.0;
  Side side = Side::right;
  PointClass cls = PointClass::regular;
  PointSource source = PointSource::declared;
  bool low_confidence = false;
  SideLimitEstimate estimate;
};

/// Both sides of one point; at an endpoint only the interior side exists.
struct PointClassification {
  double point = 0.0;
  std::optional<SideClassification> left;
  std::optional<SideClassification> right;

  /// Informational two-sided label: some side is non-regular.
  bool singular() const;
};

struct SingularityReport {
  std::string weight_signature;
  Interval interval;
  std::vector<SideClassification> entries;  // by point, left before right
  bool auto_detected = false;

  std::vector<double> probed_points() const;
  /// R+ for Side::right, R- for Side::left.
  std::vector<double> regular(Side side) const;
  /// S+ / S- (all types), or S_i+ / S_i- when `type` is given.
  std::vector<double> singular(Side side, std::optional<PointClass> type = std::nullopt) const;
  /// Points singular from at least one side.
  std::vector<double> singular_points() const;
  const SideClassification* find(double point, Side side) const;
};

SideLimitEstimate ess_limits_one_sided(const ScalarWeight& w, double a, Side side, const Config& cfg = {});

PointClassification classify_point(const ScalarWeight& w, double a, const Config& cfg = {});

SingularityReport classify_weight(const ScalarWeight& w, const Config& cfg = {});

struct BoundedResult {
  bool bounded;
  double esssup_estimate;
};

BoundedResult check_bounded(const ScalarWeight& w, const SingularityReport& report, const Config& cfg = {});
BoundedResult check_bounded(const ScalarWeight& w, const Config& cfg = {});

/// 1 / w as an expression (overrides inverted too). Throws NotInvertible when
/// some sampled value is <= tol_zero.
FuncExpr invert_weight(const ScalarWeight& w, const Config& cfg = {});

}  // namespace wapprox
