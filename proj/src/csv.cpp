#include "wapprox/csv.hpp"

#include <cmath>

#include "wapprox/expr.hpp"

namespace wapprox::csv {

namespace {

const char* flag(bool b) { return b ? "true" : "false"; }

std::string num(double v) { return format_number(v); }

}  // namespace

std::string classification(const SingularityReport& report) {
  std::string out = "point,side,class,liminf_est,limsup_est,converged\n";
  for (const auto& e : report.entries) {
    out += num(e.point) + "," + to_string(e.side) + "," + to_string(e.cls) + "," + num(e.estimate.liminf_est) + "," +
           num(e.estimate.limsup_est) + "," + flag(e.estimate.converged) + "\n";
  }
  return out;
}

std::string verdict(const VectorVerdict& v) {
  std::string out = "component,point,side,kind,measured,tolerance,pass\n";
  for (std::size_t j = 0; j < v.components.size(); ++j) {
    const auto& c = v.components[j];
    const std::string comp = std::to_string(j);
    for (const auto& cond : c.conditions) {
      out += comp + "," + num(cond.point) + "," + to_string(cond.side) + "," + to_string(cond.kind) + "," +
             num(cond.measured) + "," + num(cond.tolerance) + "," + flag(cond.pass) + "\n";
    }
    out += comp + ",,,finite_norm," + num(c.norm) + ",inf," + flag(c.finite_norm) + "\n";
  }
  return out;
}

std::string polynomials(const std::vector<Polynomial>& polys) {
  std::string out;
  for (const auto& p : polys) {
    out += to_string(p.basis) + "," + num(p.interval.lo()) + "," + num(p.interval.hi());
    for (double c : p.coeffs) out += "," + num(c);
    out += "\n";
  }
  return out;
}

std::string trace(const SweepTrace& t) {
  std::string out = "degree,weighted_error\n";
  for (const auto& [n, e] : t) out += std::to_string(n) + "," + num(e) + "\n";
  return out;
}

std::string certificate(const ApproxCertificate& c) {
  std::string out = "component,budget,measured_error,degree\n";
  for (std::size_t j = 0; j < c.budgets.size(); ++j) {
    out += std::to_string(j) + "," + num(c.budgets[j]) + "," + num(c.component_errors[j]) + "," +
           std::to_string(c.degrees[j]) + "\n";
  }
  out += "total," + num(c.total_weighted_error) + "," + num(c.bound) + "," + num(c.tail_contribution) + "\n";
  return out;
}

std::string converge(const std::vector<ConvergeRow>& rows) {
  std::string out = "degree";
  const std::size_t m = rows.empty() ? 0 : rows.front().component_errors.size();
  for (std::size_t j = 0; j < m; ++j) out += ",e" + std::to_string(j);
  out += ",total\n";
  for (const auto& r : rows) {
    out += std::to_string(r.degree);
    for (double e : r.component_errors) out += "," + num(e);
    out += "," + num(r.total) + "\n";
  }
  return out;
}

std::string psi(const std::vector<PsiRow>& rows) {
  std::string out = "component,degree,weighted_error,unweighted_error,discrepancy\n";
  for (const auto& r : rows) {
    out += std::to_string(r.component) + "," + std::to_string(r.degree) + "," + num(r.weighted_error) + "," +
           num(r.unweighted_error) + "," + num(std::fabs(r.weighted_error - r.unweighted_error)) + "\n";
  }
  return out;
}

}  // namespace wapprox::csv
