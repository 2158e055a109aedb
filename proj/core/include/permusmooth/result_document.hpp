#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permusmooth/matrix.hpp"
#include "permusmooth/objective.hpp"
#include "permusmooth/optimizer.hpp"

namespace permusmooth {

struct DataFingerprint {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string content_hash;  // hex FNV-1a of the row-major values

  static DataFingerprint of(const DataMatrix& x);
  bool operator==(const DataFingerprint&) const = default;
};

/// Echo of the settings a result was produced with.
struct ConfigEcho {
  std::string mode = "fit";  // "fit" or "sort"
  double epsilon = 0;
  std::optional<double> tol;
  std::optional<std::size_t> max_iters;
  std::string init_mode = "identity";
  std::optional<PinnedWeight> pinned;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  bool periodic = true;
  std::size_t workers = 1;
};

struct DocumentTimings {
  double io_seconds = 0;
  double fit_seconds = 0;
  double total_seconds = 0;
};

/// Serialized fit outcome. Versioned structured text (JSON) on disk; sigma
/// is written with 1-based indices. save -> load -> save is byte-identical.
struct ResultDocument {
  static constexpr int kSchemaVersion = 1;

  int schema_version = kSchemaVersion;
  DataFingerprint data_fingerprint;
  ConfigEcho config;
  std::vector<std::size_t> sigma;  // 0-based in memory
  std::vector<double> w;
  std::vector<double> trace;
  ObjectiveBreakdown breakdown;
  std::size_t iterations = 0;
  bool converged = false;
  std::size_t restart_index = 0;
  DocumentTimings timings;
};

void save_result(const ResultDocument& doc, const std::string& path);

struct LoadedResult {
  ResultDocument doc;
  /// Set when the document was loaded against data whose fingerprint differs.
  bool fingerprint_mismatch = false;
};

/// Validates schema version and required keys; optionally re-attaches the
/// document to a data matrix, flagging fingerprint mismatches.
LoadedResult load_result(const std::string& path, const DataMatrix* attach_to = nullptr);

}  // namespace permusmooth
