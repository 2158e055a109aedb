#include "permusmooth/matrix.hpp"

#include <cmath>
#include <cstring>

#include "permusmooth/errors.hpp"
#include "permusmooth/permutation.hpp"

namespace permusmooth {

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
                       std::vector<std::string> column_names)
    : rows_(rows), cols_(cols), values_(std::move(values)), column_names_(std::move(column_names)) {
  if (rows_ == 0 || cols_ == 0) {
    throw InputError("data matrix must have at least one row and one column");
  }
  if (values_.size() != rows_ * cols_) {
    throw InputError("data matrix size mismatch: expected " + std::to_string(rows_ * cols_) +
                     " values, got " + std::to_string(values_.size()));
  }
  if (!column_names_.empty() && column_names_.size() != cols_) {
    throw InputError("column name count does not match column count");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InputError("non-finite value at row " + std::to_string(i / cols_ + 1) + ", column " +
                       std::to_string(i % cols_ + 1));
    }
  }
}

std::vector<double> DataMatrix::column(std::size_t d) const {
  std::vector<double> out(rows_);
  for (std::size_t t = 0; t < rows_; ++t) out[t] = values_[t * cols_ + d];
  return out;
}

std::optional<std::size_t> DataMatrix::find_column(const std::string& name) const {
  for (std::size_t d = 0; d < column_names_.size(); ++d) {
    if (column_names_[d] == name) return d;
  }
  return std::nullopt;
}

DataMatrix DataMatrix::permuted_rows(const PermutationVector& sigma) const {
  if (sigma.size() != rows_) {
    throw InputError("permutation length " + std::to_string(sigma.size()) +
                     " does not match row count " + std::to_string(rows_));
  }
  std::vector<double> out(values_.size());
  for (std::size_t t = 0; t < rows_; ++t) {
    std::memcpy(out.data() + t * cols_, values_.data() + sigma(t) * cols_,
                cols_ * sizeof(double));
  }
  return DataMatrix(rows_, cols_, std::move(out), column_names_);
}

std::uint64_t DataMatrix::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](const unsigned char* p, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ull;
    }
  };
  std::uint64_t dims[2] = {rows_, cols_};
  mix(reinterpret_cast<const unsigned char*>(dims), sizeof(dims));
  mix(reinterpret_cast<const unsigned char*>(values_.data()), values_.size() * sizeof(double));
  return h;
}

}  // namespace permusmooth
