#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "permusmooth/matrix.hpp"

namespace permusmooth {

struct CsvOptions {
  bool header = true;
  char delimiter = ',';
  /// Resolved to a column index for the pinned-weight mode. With a header
  /// row this is a column name; without one it is a 1-based column index.
  std::optional<std::string> risk_column;
};

struct LoadedCsv {
  DataMatrix matrix;
  std::optional<std::size_t> risk_index;  // 0-based
};

/// RFC-4180-style reader: UTF-8, '.' decimal separator, quoted fields
/// allowed. Rejects ragged rows and non-numeric or non-finite cells with the
/// offending 1-based row and column in the message.
LoadedCsv load_csv(const std::string& path, const CsvOptions& options = {});

/// Plain CSV writer; numbers use shortest round-trip formatting.
void save_csv(const DataMatrix& matrix, const std::string& path, bool write_header = true);

}  // namespace permusmooth
