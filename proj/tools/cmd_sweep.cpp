#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_common.hpp"
#include "permusmooth/csv.hpp"
#include "permusmooth/model_selection.hpp"
#include "permusmooth/result_document.hpp"

namespace {

using namespace permusmooth;
using Clock = std::chrono::steady_clock;

struct SweepOptions {
  std::string input;
  std::string output = "sweep_result.json";
  std::string curve = "sweep_curve.csv";
  std::vector<double> epsilon_grid;
  bool epsilon_auto = false;
  std::size_t grid_count = 16;
  std::optional<double> tol;
  std::optional<std::size_t> max_iters;
  std::size_t restarts = 1;
  std::optional<std::uint64_t> seed;
  bool periodic = true;
  std::string init = "identity";
  std::size_t workers = cli::default_workers();
  bool no_header = false;
  std::string delimiter = ",";
  std::size_t size_cap = 20000;
};

void append_number(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

void write_curve_csv(const SweepResult& result, const std::string& path) {
  std::string out = "epsilon,expected_nonsmoothness,entropy,is_elbow\n";
  for (std::size_t k = 0; k < result.entries.size(); ++k) {
    const SweepEntry& e = result.entries[k];
    append_number(out, e.epsilon);
    out.push_back(',');
    append_number(out, e.expected_nonsmoothness);
    out.push_back(',');
    append_number(out, e.entropy_term);
    out.push_back(',');
    out += (k == result.elbow_index) ? "1" : "0";
    out.push_back('\n');
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + path + "'");
  file << out;
  if (!file) throw IoError("failed while writing '" + path + "'");
}

int run_sweep(const SweepOptions& opt) {
  const auto start = Clock::now();
  if (opt.epsilon_grid.empty() && !opt.epsilon_auto) {
    throw ParameterError("pass --epsilon-grid or --epsilon-auto");
  }
  if (!opt.epsilon_grid.empty() && opt.epsilon_grid.size() < 3) {
    throw ParameterError("epsilon sweep needs at least 3 values for elbow detection");
  }
  if (opt.delimiter.size() != 1) throw ParameterError("--delimiter must be a single character");

  CsvOptions csv_options;
  csv_options.header = !opt.no_header;
  csv_options.delimiter = opt.delimiter[0];
  const auto io_start = Clock::now();
  LoadedCsv loaded = load_csv(opt.input, csv_options);
  double io_seconds = std::chrono::duration<double>(Clock::now() - io_start).count();
  cli::check_size_cap(loaded.matrix.rows(), opt.size_cap);

  FitConfig base;
  base.tol = opt.tol;
  base.max_iters = opt.max_iters;
  base.restarts = opt.restarts;
  base.seed = cli::resolve_seed(opt.seed);
  base.ring.periodic = opt.periodic;
  base.init_mode = cli::parse_init_mode(opt.init);
  base.workers = std::max<std::size_t>(1, opt.workers);

  std::vector<double> grid = opt.epsilon_grid;
  if (grid.empty()) {
    grid = default_epsilon_grid(loaded.matrix, base.ring, opt.grid_count);
  }

  SweepResult result = sweep(loaded.matrix, std::move(grid), base);
  write_curve_csv(result, opt.curve);

  const SweepEntry& elbow = result.entries[result.elbow_index];
  FitConfig elbow_config = base;
  elbow_config.epsilon = elbow.epsilon;
  const double total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  ResultDocument doc = cli::make_document(loaded.matrix, cli::echo_from(elbow_config, "fit"),
                                          elbow.result, io_seconds, total_seconds);
  save_result(doc, opt.output);

  std::cout << "elbow epsilon=" << elbow.epsilon
            << " expected_nonsmoothness=" << elbow.expected_nonsmoothness
            << " entropy=" << elbow.entropy_term << " (entry " << result.elbow_index + 1 << " of "
            << result.entries.size() << ")\n";
  std::cout << "wrote " << opt.curve << " and " << opt.output << "\n";
  return cli::kExitOk;
}

}  // namespace

void register_cmd_sweep(CLI::App& app, int& exit_code) {
  auto opt = std::make_shared<SweepOptions>();
  CLI::App* cmd = app.add_subcommand(
      "sweep", "Fit across an epsilon grid and select the L-curve elbow");
  cmd->add_option("--input", opt->input, "CSV data matrix")->required();
  cmd->add_option("--output", opt->output, "Elbow fit result document path");
  cmd->add_option("--curve", opt->curve, "L-curve CSV path");
  cmd->add_option("--epsilon-grid", opt->epsilon_grid, "Explicit epsilon values")
      ->delimiter(',');
  cmd->add_flag("--epsilon-auto", opt->epsilon_auto,
                "Scale-aware default grid ([1e-3,1e3] x median initial S)");
  cmd->add_option("--grid-count", opt->grid_count, "Point count for --epsilon-auto");
  cmd->add_option("--tol", opt->tol, "Absolute objective-decrease threshold");
  cmd->add_option("--max-iters", opt->max_iters, "Iteration cap (default 10*T^2)");
  cmd->add_option("--restarts", opt->restarts, "Multi-start runs per epsilon");
  cmd->add_option("--seed", opt->seed, "RNG seed (shared across epsilons)");
  cmd->add_flag("--periodic,!--no-periodic", opt->periodic,
                "Ring boundary condition (default periodic)");
  cmd->add_option("--init", opt->init, "identity | random | random-w | column-sorted");
  cmd->add_option("--workers", opt->workers, "Worker threads");
  cmd->add_flag("--no-header", opt->no_header, "Input has no header row");
  cmd->add_option("--delimiter", opt->delimiter, "Field delimiter");
  cmd->add_option("--size-cap", opt->size_cap, "Refuse inputs with more rows than this");
  cmd->callback([opt, &exit_code] { exit_code = run_sweep(*opt); });
}
