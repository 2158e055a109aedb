#include <chrono>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli_common.hpp"
#include "permusmooth/csv.hpp"
#include "permusmooth/monotonic.hpp"
#include "permusmooth/result_document.hpp"

namespace {

using namespace permusmooth;
using Clock = std::chrono::steady_clock;

struct SortOptions {
  std::string input;
  std::string output = "sort_result.json";
  double epsilon = 1.0;
  std::string direction = "ascending";
  std::optional<double> tol;
  std::optional<std::size_t> max_iters;
  std::size_t restarts = 1;
  std::optional<std::uint64_t> seed;
  std::size_t workers = cli::default_workers();
  bool no_header = false;
  std::string delimiter = ",";
};

int run_sort(const SortOptions& opt) {
  const auto start = Clock::now();
  if (!(opt.epsilon > 0)) throw ParameterError("epsilon must be positive");
  if (opt.direction != "ascending" && opt.direction != "descending") {
    throw ParameterError("--direction must be 'ascending' or 'descending'");
  }
  if (opt.delimiter.size() != 1) throw ParameterError("--delimiter must be a single character");

  CsvOptions csv_options;
  csv_options.header = !opt.no_header;
  csv_options.delimiter = opt.delimiter[0];
  const auto io_start = Clock::now();
  LoadedCsv loaded = load_csv(opt.input, csv_options);
  const double io_seconds = std::chrono::duration<double>(Clock::now() - io_start).count();

  MonotonicConfig config;
  config.epsilon = opt.epsilon;
  config.direction =
      opt.direction == "ascending" ? SortDirection::kAscending : SortDirection::kDescending;
  config.tol = opt.tol;
  config.max_iters = opt.max_iters;
  config.seed = cli::resolve_seed(opt.seed);
  config.restarts = opt.restarts;
  config.workers = std::max<std::size_t>(1, opt.workers);

  FitResult result = fit_monotonic(loaded.matrix, config);

  ConfigEcho echo;
  echo.mode = "sort";
  echo.epsilon = config.epsilon;
  echo.tol = config.tol;
  echo.max_iters = config.max_iters;
  echo.init_mode = opt.direction;  // records the sort direction for this mode
  echo.seed = config.seed;
  echo.restarts = config.restarts;
  echo.workers = config.workers;
  const double total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  ResultDocument doc = cli::make_document(loaded.matrix, echo, result, io_seconds, total_seconds);
  save_result(doc, opt.output);

  std::cout << "objective=" << result.breakdown.f_total << " iterations=" << result.iterations
            << " converged=" << (result.converged ? 1 : 0) << "\n";
  std::cout << "wrote " << opt.output << "\n";
  return result.converged ? cli::kExitOk : cli::kExitNoConvergence;
}

}  // namespace

void register_cmd_sort(CLI::App& app, int& exit_code) {
  auto opt = std::make_shared<SortOptions>();
  CLI::App* cmd = app.add_subcommand(
      "sort", "Monotonic multi-dimensional ordering (sort-based P-step)");
  cmd->add_option("--input", opt->input, "CSV data matrix")->required();
  cmd->add_option("--output", opt->output, "Result document path");
  cmd->add_option("--epsilon", opt->epsilon, "Entropy regularization strength");
  cmd->add_option("--direction", opt->direction, "ascending | descending");
  cmd->add_option("--tol", opt->tol, "Absolute objective-decrease threshold");
  cmd->add_option("--max-iters", opt->max_iters, "Iteration cap");
  cmd->add_option("--restarts", opt->restarts, "Multi-start runs (random W after the first)");
  cmd->add_option("--seed", opt->seed, "RNG seed");
  cmd->add_option("--workers", opt->workers, "Worker threads");
  cmd->add_flag("--no-header", opt->no_header, "Input has no header row");
  cmd->add_option("--delimiter", opt->delimiter, "Field delimiter");
  cmd->callback([opt, &exit_code] { exit_code = run_sort(*opt); });
}
