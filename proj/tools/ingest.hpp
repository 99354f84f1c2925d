#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "te/series.hpp"

namespace te::cli {

struct IngestOptions {
  char delimiter = ',';
  bool header = false;
};

/// Numeric columns of a delimiter-separated text file.
struct Table {
  std::vector<std::string> names;  // empty unless a header was read
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Throws std::runtime_error naming the line of a non-numeric cell or a row
/// with the wrong number of fields.
Table read_table(std::istream& in, const IngestOptions& options);
Table read_table(const std::string& path, const IngestOptions& options);

/// Resolves a column token (0-based index or header name) to an index.
std::size_t resolve_column(const Table& table, const std::string& token);

bool all_integer(const Table& table, const std::vector<std::size_t>& columns);

/// Integer column as a categorical series. Values must be integers in
/// [0, alphabet); the alphabet is inferred when not given. Errors name the
/// data row (1-based, header excluded) and the column.
CategoricalSeries to_categorical(const std::vector<double>& column, std::optional<int> alphabet,
                                 const std::string& column_label);

/// Equal-width binning of a real column into `bins` symbols.
CategoricalSeries quantize(const std::vector<double>& column, int bins);

ContinuousSeries to_continuous(const Table& table, const std::vector<std::size_t>& columns,
                               bool demean);

} // namespace te::cli
