#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli_common.hpp"
#include "permusmooth/csv.hpp"
#include "permusmooth/synthetic.hpp"

namespace {

using namespace permusmooth;

struct SynthOptions {
  std::size_t instances = 50;
  std::size_t dims = 52;
  double period1 = 1.0;
  double period2 = 2.0;
  double phase1 = 0.9424777960769379;  // 0.3 * pi
  double phase2 = 0.3141592653589793;  // 0.1 * pi
  std::optional<std::uint64_t> seed;
  std::string output_smooth = "synthetic_smooth.csv";
  std::string output_scrambled = "synthetic_scrambled.csv";
  std::string output_sigma = "synthetic_sigma.csv";
};

void write_sigma_csv(const PermutationVector& sigma, const std::string& path) {
  std::string out = "sigma\n";
  for (std::size_t t = 0; t < sigma.size(); ++t) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), sigma(t) + 1);  // 1-based
    out.append(buf, ptr);
    out.push_back('\n');
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + path + "'");
  file << out;
  if (!file) throw IoError("failed while writing '" + path + "'");
}

int run_synth(const SynthOptions& opt) {
  SyntheticSpec spec;
  spec.instances = opt.instances;
  spec.dims = opt.dims;
  spec.signal_periods[0] = opt.period1;
  spec.signal_periods[1] = opt.period2;
  spec.signal_phases[0] = opt.phase1;
  spec.signal_phases[1] = opt.phase2;
  spec.scramble_seed = cli::resolve_seed(opt.seed);

  SyntheticData data = generate_synthetic(spec);
  save_csv(data.smooth, opt.output_smooth);
  save_csv(data.scrambled, opt.output_scrambled);
  write_sigma_csv(data.true_sigma, opt.output_sigma);

  std::cout << "generated T=" << spec.instances << " D=" << spec.dims << " (seed "
            << spec.scramble_seed << ")\n";
  std::cout << "wrote " << opt.output_smooth << ", " << opt.output_scrambled << ", "
            << opt.output_sigma << "\n";
  return cli::kExitOk;
}

}  // namespace

void register_cmd_synth(CLI::App& app, int& exit_code) {
  auto opt = std::make_shared<SynthOptions>();
  CLI::App* cmd = app.add_subcommand(
      "synth", "Generate the scrambled two-signal synthetic dataset");
  cmd->add_option("--t,--instances", opt->instances, "Instance count");
  cmd->add_option("--d,--dims", opt->dims, "Dimension count (two signals + noise)");
  cmd->add_option("--period1", opt->period1, "Full periods of the sine signal");
  cmd->add_option("--period2", opt->period2, "Full periods of the cosine signal");
  cmd->add_option("--phase1", opt->phase1, "Phase of the sine signal");
  cmd->add_option("--phase2", opt->phase2, "Phase of the cosine signal");
  cmd->add_option("--seed", opt->seed, "Scramble/noise seed");
  cmd->add_option("--output-smooth", opt->output_smooth, "Smooth matrix CSV");
  cmd->add_option("--output-scrambled", opt->output_scrambled, "Scrambled matrix CSV");
  cmd->add_option("--output-sigma", opt->output_sigma, "True permutation CSV (1-based)");
  cmd->callback([opt, &exit_code] { exit_code = run_synth(*opt); });
}
