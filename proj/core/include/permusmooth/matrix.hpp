#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace permusmooth {

class PermutationVector;

/// T x D numeric table, rows are data instances, columns are feature
/// dimensions. Stored row-major; every entry is checked finite on
/// construction. Immutable after construction.
class DataMatrix {
 public:
  DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
             std::vector<std::string> column_names = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t t, std::size_t d) const { return values_[t * cols_ + d]; }

  std::span<const double> row(std::size_t t) const {
    return {values_.data() + t * cols_, cols_};
  }

  std::vector<double> column(std::size_t d) const;

  const std::vector<double>& values() const { return values_; }
  const std::vector<std::string>& column_names() const { return column_names_; }
  bool has_column_names() const { return !column_names_.empty(); }

  /// Index of the named column, if present.
  std::optional<std::size_t> find_column(const std::string& name) const;

  /// New matrix whose row t is row sigma(t) of this one.
  DataMatrix permuted_rows(const PermutationVector& sigma) const;

  /// FNV-1a over dimensions and raw row-major bytes; stable across runs.
  std::uint64_t content_hash() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
  std::vector<std::string> column_names_;
};

}  // namespace permusmooth
