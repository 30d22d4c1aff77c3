#pragma once

// CSV renderings of every report. Numbers use the shortest round-trip
// decimal form, so equal inputs give byte-identical files.

#include <string>
#include <vector>

#include "wapprox/membership.hpp"
#include "wapprox/polynomial.hpp"
#include "wapprox/scalar_approx.hpp"
#include "wapprox/vector_approx.hpp"
#include "wapprox/weights.hpp"

namespace wapprox::csv {

/// point,side,class,liminf_est,limsup_est,converged
std::string classification(const SingularityReport& report);

/// component,point,side,kind,measured,tolerance,pass plus one finite_norm row
/// per component.
std::string verdict(const VectorVerdict& v);

/// basis,lo,hi,c0,c1,... one row per component, no header.
std::string polynomials(const std::vector<Polynomial>& polys);

/// degree,weighted_error
std::string trace(const SweepTrace& t);

/// component,budget,measured_error,degree rows and a closing
/// total,<measured>,<bound>,<tail contribution> row.
std::string certificate(const ApproxCertificate& c);

/// degree,e0,...,e{m-1},total
struct ConvergeRow {
  std::size_t degree;
  std::vector<double> component_errors;
  double total;
};
std::string converge(const std::vector<ConvergeRow>& rows);

/// component,degree,weighted_error,unweighted_error,discrepancy
struct PsiRow {
  std::size_t component;
  std::size_t degree;
  double weighted_error;
  double unweighted_error;
};
std::string psi(const std::vector<PsiRow>& rows);

}  // namespace wapprox::csv
