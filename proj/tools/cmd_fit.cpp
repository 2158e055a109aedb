#include <chrono>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli_common.hpp"
#include "permusmooth/csv.hpp"
#include "permusmooth/optimizer.hpp"
#include "permusmooth/result_document.hpp"

namespace {

using namespace permusmooth;
using Clock = std::chrono::steady_clock;

struct FitOptions {
  std::string input;
  std::string output = "fit_result.json";
  double epsilon = 1.0;
  std::optional<double> tol;
  std::optional<std::size_t> max_iters;
  std::size_t restarts = 1;
  std::optional<std::uint64_t> seed;
  bool periodic = true;
  std::string pin_column;
  double pin_weight = 0.1;
  std::string init = "identity";
  std::size_t workers = cli::default_workers();
  bool no_header = false;
  std::string delimiter = ",";
  std::size_t size_cap = 20000;
};

int run_fit(const FitOptions& opt) {
  const auto start = Clock::now();
  if (!(opt.epsilon > 0)) throw ParameterError("epsilon must be positive");
  if (!opt.pin_column.empty() && !(opt.pin_weight > 0.0 && opt.pin_weight < 1.0)) {
    throw ParameterError("--pin-weight must lie strictly between 0 and 1, got " +
                         std::to_string(opt.pin_weight));
  }
  if (opt.delimiter.size() != 1) throw ParameterError("--delimiter must be a single character");

  CsvOptions csv_options;
  csv_options.header = !opt.no_header;
  csv_options.delimiter = opt.delimiter[0];
  if (!opt.pin_column.empty()) csv_options.risk_column = opt.pin_column;
  const auto io_start = Clock::now();
  LoadedCsv loaded = load_csv(opt.input, csv_options);
  const double io_seconds = std::chrono::duration<double>(Clock::now() - io_start).count();
  cli::check_size_cap(loaded.matrix.rows(), opt.size_cap);

  FitConfig config;
  config.epsilon = opt.epsilon;
  config.tol = opt.tol;
  config.max_iters = opt.max_iters;
  config.restarts = opt.restarts;
  config.seed = cli::resolve_seed(opt.seed);
  config.ring.periodic = opt.periodic;
  config.init_mode = cli::parse_init_mode(opt.init);
  config.workers = std::max<std::size_t>(1, opt.workers);
  if (!opt.pin_column.empty()) {
    config.pinned = PinnedWeight{*loaded.risk_index, opt.pin_weight};
  }

  FitResult result = fit(loaded.matrix, config);

  const double total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  ResultDocument doc = cli::make_document(loaded.matrix, cli::echo_from(config, "fit"), result,
                                          io_seconds, total_seconds);
  save_result(doc, opt.output);

  std::cout << "f_total=" << result.breakdown.f_total
            << " expected_nonsmoothness=" << result.breakdown.expected_nonsmoothness
            << " iterations=" << result.iterations << " converged=" << (result.converged ? 1 : 0)
            << " restart=" << result.restart_index << "\n";
  std::cout << "wrote " << opt.output << "\n";
  return result.converged ? cli::kExitOk : cli::kExitNoConvergence;
}

}  // namespace

void register_cmd_fit(CLI::App& app, int& exit_code) {
  auto opt = std::make_shared<FitOptions>();
  CLI::App* cmd = app.add_subcommand(
      "fit", "Learn an ordering and feature weights from a CSV data matrix");
  cmd->add_option("--input", opt->input, "CSV data matrix")->required();
  cmd->add_option("--output", opt->output, "Result document path");
  cmd->add_option("--epsilon", opt->epsilon, "Entropy regularization strength");
  cmd->add_option("--tol", opt->tol, "Absolute objective-decrease threshold");
  cmd->add_option("--max-iters", opt->max_iters, "Iteration cap (default 10*T^2)");
  cmd->add_option("--restarts", opt->restarts, "Number of multi-start runs");
  cmd->add_option("--seed", opt->seed, "RNG seed (falls back to PERMUSMOOTH_SEED)");
  cmd->add_flag("--periodic,!--no-periodic", opt->periodic,
                "Ring boundary condition (default periodic)");
  cmd->add_option("--pin-column", opt->pin_column,
                  "Column whose weight is pinned (name, or 1-based index with --no-header)");
  cmd->add_option("--pin-weight", opt->pin_weight, "Pinned weight W0 in (0,1)");
  cmd->add_option("--init", opt->init, "identity | random | random-w | column-sorted");
  cmd->add_option("--workers", opt->workers, "Worker threads");
  cmd->add_flag("--no-header", opt->no_header, "Input has no header row");
  cmd->add_option("--delimiter", opt->delimiter, "Field delimiter");
  cmd->add_option("--size-cap", opt->size_cap, "Refuse inputs with more rows than this");
  cmd->callback([opt, &exit_code] { exit_code = run_fit(*opt); });
}
