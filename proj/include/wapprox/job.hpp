#pragma once

// Batch jobs. A job file is a flat list of "key = value" lines:
//
//   interval = -1 1
//   grid = 4097 refined          # optional: base points and scheme
//   [weight]
//   w0 = abs(x)^0.5
//   points = 0                   # declared points for every component
//   points1 = 0.5                # extra declared points for w1 only
//   tail = 1 0.5                 # C r: makes the weight truncated l2
//   tail_weight = 1              # optional bound on omitted weight coordinates
//   [function]
//   f0 = sign(x) @ {0: 0}
//   [task]
//   kind = approx                # classify | member | approx | converge | psi
//   epsilon = 0.05
//   max_degree = 512
//   engine = chebyshev
//   out = results/run1           # path prefix, relative to the job file
//
// '#' starts a comment.

#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wapprox/config.hpp"
#include "wapprox/expr.hpp"
#include "wapprox/grid.hpp"
#include "wapprox/scalar_approx.hpp"
#include "wapprox/weights.hpp"

namespace wapprox {

enum class TaskKind { classify, member, approx, converge, psi };

std::string to_string(TaskKind k);

struct JobSpec {
  std::filesystem::path source;
  Interval interval{0.0, 1.0};
  std::optional<std::size_t> grid_n;
  std::optional<GridScheme> grid_scheme;

  std::vector<FuncExpr> weights;
  std::vector<std::vector<double>> points;  // declared points per weight component
  std::optional<TailCertificate> tail;
  std::optional<double> tail_weight;

  std::vector<FuncExpr> functions;

  TaskKind kind = TaskKind::classify;
  std::optional<double> epsilon;
  std::size_t max_degree = 512;
  Engine engine = Engine::chebyshev;
  std::filesystem::path out;  // resolved output prefix

  DimKind dim_kind() const { return tail ? DimKind::truncated_l2 : DimKind::finite; }
};

/// Reads and validates a job file. Throws IoError when the file cannot be
/// read and ValidationError naming the section, key and line otherwise.
JobSpec load_job(const std::filesystem::path& path);

/// Job grid settings applied on top of `base`.
Config job_config(const JobSpec& job, Config base = {});

struct RunOutcome {
  int exit_code = 0;
  std::vector<std::filesystem::path> files;
  std::string explanation;  // condition-by-condition rationale (member task)
};

/// Runs the task and writes its CSV reports. Returns 0, 3 (not a member) or
/// 4 (approximation failed); every other failure is thrown.
RunOutcome run_job(const JobSpec& job, const Config& cfg);

/// Exit status for an error escaping load_job / run_job:
/// 1 io, 2 validation / parse / domain, 4 approximation, 5 weight invalid.
int exit_code_for(const std::exception& e);

namespace exit_codes {
inline constexpr int ok = 0;
inline constexpr int io = 1;
inline constexpr int validation = 2;
inline constexpr int not_member = 3;
inline constexpr int approximation = 4;
inline constexpr int weight_invalid = 5;
}  // namespace exit_codes

}  // namespace wapprox
