#include "permusmooth/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "permusmooth/errors.hpp"

namespace permusmooth {

namespace {

// RFC-4180-style record splitting with quoted fields and "" escapes.
std::vector<std::vector<std::string>> split_records(const std::string& text, char delimiter) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool record_started = false;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(fields));
    fields.clear();
    record_started = false;
  };

  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (in_quotes) {
      if (c == '"') {
        if (k + 1 < text.size() && text[k + 1] == '"') {
          field.push_back('"');
          ++k;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    record_started = true;
    if (c == '"' && field.empty()) {
      in_quotes = true;
    } else if (c == delimiter) {
      end_field();
    } else if (c == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      end_record();
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) throw IoError("unterminated quoted field");
  if (record_started || !field.empty() || !fields.empty()) end_record();
  return records;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  std::size_t begin = cell.find_first_not_of(" \t");
  std::size_t end = cell.find_last_not_of(" \t");
  auto fail = [&](const char* what) {
    throw IoError("row " + std::to_string(row) + ", column " + std::to_string(col) + ": " + what +
                  " '" + cell + "'");
  };
  if (begin == std::string::npos) fail("empty cell");
  double value = 0;
  const char* first = cell.data() + begin;
  const char* last = cell.data() + end + 1;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) fail("non-numeric cell");
  if (!std::isfinite(value)) fail("non-finite cell");
  return value;
}

void append_number(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\n\r") != std::string::npos;
}

}  // namespace

LoadedCsv load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  if (text.size() >= 3 && text[0] == '\xef' && text[1] == '\xbb' && text[2] == '\xbf') {
    text.erase(0, 3);  // UTF-8 BOM
  }

  auto records = split_records(text, options.delimiter);
  // drop fully empty trailing records
  while (!records.empty() && records.back().size() == 1 && records.back()[0].empty()) {
    records.pop_back();
  }
  if (records.empty()) throw IoError("'" + path + "' contains no data");

  std::vector<std::string> names;
  std::size_t first_data = 0;
  if (options.header) {
    names = records[0];
    first_data = 1;
    if (records.size() == 1) throw IoError("'" + path + "' contains a header but no data rows");
  }
  const std::size_t cols = records[first_data].size();
  if (options.header && names.size() != cols) {
    throw IoError("header has " + std::to_string(names.size()) + " fields but data rows have " +
                  std::to_string(cols));
  }
  const std::size_t rows = records.size() - first_data;
  std::vector<double> values;
  values.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& record = records[first_data + r];
    if (record.size() != cols) {
      throw IoError("row " + std::to_string(r + 1) + " has " + std::to_string(record.size()) +
                    " fields, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      values.push_back(parse_cell(record[c], r + 1, c + 1));
    }
  }

  LoadedCsv out{DataMatrix(rows, cols, std::move(values), std::move(names)), std::nullopt};
  if (options.risk_column) {
    const std::string& wanted = *options.risk_column;
    if (options.header) {
      auto idx = out.matrix.find_column(wanted);
      if (!idx) throw InputError("risk column '" + wanted + "' not found in header");
      out.risk_index = *idx;
    } else {
      std::size_t idx = 0;
      auto [ptr, ec] = std::from_chars(wanted.data(), wanted.data() + wanted.size(), idx);
      if (ec != std::errc{} || ptr != wanted.data() + wanted.size() || idx < 1 || idx > cols) {
        throw InputError("without a header the risk column must be a 1-based index in [1, " +
                         std::to_string(cols) + "], got '" + wanted + "'");
      }
      out.risk_index = idx - 1;
    }
  }
  return out;
}

void save_csv(const DataMatrix& matrix, const std::string& path, bool write_header) {
  std::string out;
  out.reserve(matrix.rows() * matrix.cols() * 12);
  if (write_header && matrix.has_column_names()) {
    for (std::size_t d = 0; d < matrix.cols(); ++d) {
      if (d > 0) out.push_back(',');
      const std::string& name = matrix.column_names()[d];
      if (needs_quoting(name)) {
        out.push_back('"');
        for (char c : name) {
          if (c == '"') out.push_back('"');
          out.push_back(c);
        }
        out.push_back('"');
      } else {
        out += name;
      }
    }
    out.push_back('\n');
  }
  for (std::size_t t = 0; t < matrix.rows(); ++t) {
    for (std::size_t d = 0; d < matrix.cols(); ++d) {
      if (d > 0) out.push_back(',');
      append_number(out, matrix(t, d));
    }
    out.push_back('\n');
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + path + "'");
  file << out;
  if (!file) throw IoError("failed while writing '" + path + "'");
}

}  // namespace permusmooth
