#pragma once

#include <string>
#include <vector>

#include "wapprox/config.hpp"
#include "wapprox/expr.hpp"
#include "wapprox/weights.hpp"

namespace wapprox {

enum class ConditionKind { continuity, vanishing };

std::string to_string(ConditionKind k);

/// One limit condition at one side of a probed point. Regular sides carry
/// one-sided continuity (|f(x) - f(a)| -> 0), singular sides carry weighted
/// vanishing (|f(x) - f(a)| w(x) -> 0).
struct Condition {
  double point = 0.0;
  Side side = Side::right;
  ConditionKind kind = ConditionKind::continuity;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool low_confidence = false;
};

/// Adjacent grid points away from every probed point whose values differ by
/// more than jump_cut: a hint at an undeclared discontinuity.
struct JumpWarning {
  double x0;
  double x1;
  double jump;
};

struct MembershipVerdict {
  bool member = false;
  bool finite_norm = false;
  double norm = 0.0;  // weighted sup of f on the evaluation grid
  std::vector<Condition> conditions;
  std::vector<JumpWarning> warnings;
};

struct VectorVerdict {
  bool member = false;
  std::vector<MembershipVerdict> components;
};

/// Checks the H0 conditions at every probed point of `report`. A condition
/// passes when the cascade converged and its limit estimate is below `tol`.
/// Throws MissingOverride when f has no explicit value at a singular point
/// and ReportMismatch when the report was computed for another weight.
MembershipVerdict check_scalar_membership(const FuncExpr& f, const ScalarWeight& w, const SingularityReport& report,
                                          double tol, const Config& cfg = {});

/// Componentwise check, each component against its own weight's report.
/// Scalar errors are rethrown tagged with the component index.
VectorVerdict check_vector_membership(const std::vector<FuncExpr>& F, const VectorWeight& W, double tol,
                                      const Config& cfg = {});

/// Human-readable condition-by-condition rationale.
std::string explain(const MembershipVerdict& v);

}  // namespace wapprox
