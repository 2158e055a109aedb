#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>

#include "permusmooth/errors.hpp"
#include "permusmooth/optimizer.hpp"
#include "permusmooth/result_document.hpp"

namespace permusmooth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitUsage = 64;

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& from_flag) {
  if (from_flag) return *from_flag;
  if (const char* env = std::getenv("PERMUSMOOTH_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParameterError("PERMUSMOOTH_SEED must be an unsigned integer, got '" +
                           std::string(env) + "'");
    }
  }
  return 0;
}

inline std::size_t default_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

inline InitMode parse_init_mode(const std::string& name) {
  if (name == "identity") return InitMode::kIdentity;
  if (name == "random") return InitMode::kRandomSigma;
  if (name == "random-w") return InitMode::kRandomSigmaRandomW;
  if (name == "column-sorted") return InitMode::kColumnSorted;
  throw ParameterError("unknown init mode '" + name +
                       "' (expected identity, random, random-w or column-sorted)");
}

inline std::string init_mode_name(InitMode mode) {
  switch (mode) {
    case InitMode::kIdentity: return "identity";
    case InitMode::kRandomSigma: return "random";
    case InitMode::kRandomSigmaRandomW: return "random-w";
    case InitMode::kColumnSorted: return "column-sorted";
  }
  return "identity";
}

inline void check_size_cap(std::size_t rows, std::size_t cap) {
  if (rows > cap) {
    throw InputError("input has " + std::to_string(rows) + " rows, above the size cap of " +
                     std::to_string(cap) + " (the pair-cost cache is quadratic in rows; " +
                     "raise --size-cap to override)");
  }
}

inline ConfigEcho echo_from(const FitConfig& config, const std::string& mode) {
  ConfigEcho echo;
  echo.mode = mode;
  echo.epsilon = config.epsilon;
  echo.tol = config.tol;
  echo.max_iters = config.max_iters;
  echo.init_mode = init_mode_name(config.init_mode);
  echo.pinned = config.pinned;
  echo.seed = config.seed;
  echo.restarts = config.restarts;
  echo.periodic = config.ring.periodic;
  echo.workers = config.workers;
  return echo;
}

inline ResultDocument make_document(const DataMatrix& x, const ConfigEcho& echo,
                                    const FitResult& result, double io_seconds,
                                    double total_seconds) {
  ResultDocument doc;
  doc.data_fingerprint = DataFingerprint::of(x);
  doc.config = echo;
  doc.sigma = result.sigma.indices();
  doc.w = result.w.values();
  doc.trace = result.trace;
  doc.breakdown = result.breakdown;
  doc.iterations = result.iterations;
  doc.converged = result.converged;
  doc.restart_index = result.restart_index;
  doc.timings.io_seconds = io_seconds;
  doc.timings.fit_seconds = result.timings.total_seconds;
  doc.timings.total_seconds = total_seconds;
  return doc;
}

}  // namespace permusmooth::cli

// registered by the cmd_*.cpp translation units
namespace CLI {
class App;
}
void register_cmd_fit(CLI::App& app, int& exit_code);
void register_cmd_sweep(CLI::App& app, int& exit_code);
void register_cmd_synth(CLI::App& app, int& exit_code);
void register_cmd_sort(CLI::App& app, int& exit_code);
void register_cmd_bench(CLI::App& app, int& exit_code);
