#include "ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace te::cli {

namespace {

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, delimiter)) fields.push_back(field);
  if (!line.empty() && line.back() == delimiter) fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

} // namespace

Table read_table(std::istream& in, const IngestOptions& options) {
  Table table;
  std::string line;
  std::size_t line_number = 0;
  bool header_pending = options.header;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    const auto fields = split(line, options.delimiter);
    if (header_pending) {
      for (const auto& f : fields) table.names.push_back(trim(f));
      table.columns.resize(fields.size());
      header_pending = false;
      continue;
    }
    if (table.columns.empty()) table.columns.resize(fields.size());
    if (fields.size() != table.columns.size()) {
      throw std::runtime_error("line " + std::to_string(line_number) + ": expected " +
                               std::to_string(table.columns.size()) + " fields, found " +
                               std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto value = parse_number(trim(fields[c]));
      if (!value || !std::isfinite(*value)) {
        throw std::runtime_error("line " + std::to_string(line_number) + ", column " +
                                 std::to_string(c) + ": non-numeric cell '" + trim(fields[c]) + "'");
      }
      table.columns[c].push_back(*value);
    }
  }
  if (table.rows() == 0) throw std::runtime_error("input contains no data rows");
  return table;
}

Table read_table(const std::string& path, const IngestOptions& options) {
  if (path == "-") return read_table(std::cin, options);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  return read_table(in, options);
}

std::size_t resolve_column(const Table& table, const std::string& token) {
  const auto named = std::find(table.names.begin(), table.names.end(), token);
  if (named != table.names.end()) return static_cast<std::size_t>(named - table.names.begin());
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw std::runtime_error("unknown column '" + token + "'");
  }
  if (index >= table.columns.size()) {
    throw std::runtime_error("column " + token + " out of range (input has " +
                             std::to_string(table.columns.size()) + " columns)");
  }
  return index;
}

bool all_integer(const Table& table, const std::vector<std::size_t>& columns) {
  for (std::size_t c : columns) {
    for (double v : table.columns[c]) {
      if (v != std::floor(v)) return false;
    }
  }
  return true;
}

CategoricalSeries to_categorical(const std::vector<double>& column, std::optional<int> alphabet,
                                 const std::string& column_label) {
  std::vector<Symbol> symbols(column.size());
  for (std::size_t row = 0; row < column.size(); ++row) {
    const double v = column[row];
    const bool integral = v == std::floor(v) && v >= 0.0 && v < 2147483647.0;
    if (!integral || (alphabet && v >= *alphabet)) {
      std::ostringstream msg;
      msg << "row " << row + 1 << ", column " << column_label << ": value " << v;
      if (!integral) {
        msg << " is not a nonnegative integer symbol";
      } else {
        msg << " outside declared alphabet of size " << *alphabet;
      }
      throw std::runtime_error(msg.str());
    }
    symbols[row] = static_cast<Symbol>(v);
  }
  if (alphabet) return CategoricalSeries(std::move(symbols), *alphabet);
  return CategoricalSeries::with_inferred_alphabet(std::move(symbols));
}

CategoricalSeries quantize(const std::vector<double>& column, int bins) {
  if (bins < 2) throw std::invalid_argument("quantizer needs at least 2 bins");
  const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
  const double lo = *lo_it;
  const double width = (*hi_it - lo) / bins;
  std::vector<Symbol> symbols(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) {
    const int bin = width > 0.0 ? static_cast<int>((column[i] - lo) / width) : 0;
    symbols[i] = std::clamp(bin, 0, bins - 1);
  }
  return CategoricalSeries(std::move(symbols), bins);
}

ContinuousSeries to_continuous(const Table& table, const std::vector<std::size_t>& columns,
                               bool demean) {
  const std::size_t rows = table.rows();
  const std::size_t dim = columns.size();
  std::vector<double> data(rows * dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const auto& column = table.columns[columns[c]];
    double mean = 0.0;
    if (demean) {
      for (double v : column) mean += v;
      mean /= static_cast<double>(rows);
    }
    for (std::size_t t = 0; t < rows; ++t) data[t * dim + c] = column[t] - mean;
  }
  return ContinuousSeries(std::move(data), dim);
}

} // namespace te::cli
