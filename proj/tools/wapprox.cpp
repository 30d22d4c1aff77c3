#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "wapprox/error.hpp"
#include "wapprox/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Weighted polynomial approximation: classify weights, check membership, build approximants."};
  std::string job_path;
  std::optional<double> tol_zero;
  std::optional<double> tol_limit;
  std::optional<std::size_t> grid_n;
  bool explain = false;

  app.add_option("job", job_path, "Job file")->required();
  app.add_option("--tol-zero", tol_zero, "Threshold below which a weight limit counts as zero")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-limit", tol_limit, "Tolerance for the membership limit conditions")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid-n", grid_n, "Base points of the evaluation grid")->check(CLI::Range(2, 1 << 24));
  app.add_flag("--explain", explain, "Print the condition-by-condition verdict");
  app.set_version_flag("--version", std::string("wapprox ") + WAPPROX_VERSION);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : wapprox::exit_codes::validation;
  }

  try {
    const auto job = wapprox::load_job(job_path);
    wapprox::Config cfg = wapprox::job_config(job);
    if (tol_zero) cfg.tol_zero = *tol_zero;
    if (tol_limit) cfg.tol_limit = *tol_limit;
    if (grid_n) cfg.grid_n = *grid_n;

    const auto outcome = wapprox::run_job(job, cfg);
    for (const auto& f : outcome.files) std::cout << f.string() << "\n";
    if (explain && !outcome.explanation.empty()) std::cout << outcome.explanation;
    if (outcome.exit_code != 0 && !explain && !outcome.explanation.empty())
      std::cerr << "wapprox: " << outcome.explanation << (outcome.explanation.back() == '\n' ? "" : "\n");
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "wapprox: " << e.what() << "\n";
    return wapprox::exit_code_for(e);
  }
}
