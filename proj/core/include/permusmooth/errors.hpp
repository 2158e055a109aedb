#pragma once

#include <stdexcept>
#include <string>

namespace permusmooth {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed inputs: shape mismatches, non-finite data, off-simplex weights.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration values (epsilon <= 0, bad pinned weight, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A PairCostCache was used after the weights it was built for changed.
class StaleCacheError : public Error {
 public:
  using Error::Error;
};

/// File-level ingestion/serialization failures.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid or version-mismatched result documents.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace permusmooth
