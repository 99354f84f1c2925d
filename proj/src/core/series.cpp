#include "te/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace te {

CategoricalSeries::CategoricalSeries(std::vector<Symbol> values, int alphabet_size)
    : values_(std::move(values)), alphabet_size_(alphabet_size) {
  if (values_.empty()) {
    throw std::invalid_argument("categorical series must be non-empty");
  }
  if (alphabet_size_ < 1) {
    throw std::invalid_argument("alphabet size must be positive");
  }
  for (std::size_t t = 0; t < values_.size(); ++t) {
    if (values_[t] < 0 || values_[t] >= alphabet_size_) {
      throw std::invalid_argument("symbol " + std::to_string(values_[t]) + " at index " +
                                  std::to_string(t) + " outside alphabet of size " +
                                  std::to_string(alphabet_size_));
    }
  }
}

CategoricalSeries CategoricalSeries::with_inferred_alphabet(std::vector<Symbol> values) {
  if (values.empty()) {
    throw std::invalid_argument("categorical series must be non-empty");
  }
  const Symbol top = *std::max_element(values.begin(), values.end());
  return CategoricalSeries(std::move(values), std::max(top + 1, 2));
}

ContinuousSeries::ContinuousSeries(std::vector<double> row_major, std::size_t dimension)
    : values_(std::move(row_major)), dimension_(dimension) {
  if (dimension_ == 0) {
    throw std::invalid_argument("continuous series dimension must be positive");
  }
  if (values_.empty() || values_.size() % dimension_ != 0) {
    throw std::invalid_argument("continuous series data is empty or not a whole number of rows");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("non-finite value at row " + std::to_string(i / dimension_));
    }
  }
}

ContinuousSeries ContinuousSeries::scalar(std::vector<double> values) {
  return ContinuousSeries(std::move(values), 1);
}

std::vector<double> ContinuousSeries::component(std::size_t c) const {
  std::vector<double> out(size());
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t] = values_[t * dimension_ + c];
  }
  return out;
}

namespace {

template <typename Series>
LagEmbedding<Series> embed_impl(const Series& x, const Series& y, std::size_t k,
                                std::size_t first_target) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("series lengths differ: " + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()));
  }
  if (k == 0) {
    throw std::invalid_argument("lag order k must be at least 1");
  }
  if (first_target < k) {
    throw std::invalid_argument("first target index precedes the lag window");
  }
  if (x.size() <= first_target) {
    throw std::invalid_argument("series of length " + std::to_string(x.size()) +
                                " leaves no effective samples at order " + std::to_string(k));
  }
  return LagEmbedding<Series>(x, y, k, first_target);
}

} // namespace

LagEmbedding<CategoricalSeries> embed(const CategoricalSeries& x, const CategoricalSeries& y,
                                      std::size_t k) {
  return embed_impl(x, y, k, k);
}

LagEmbedding<ContinuousSeries> embed(const ContinuousSeries& x, const ContinuousSeries& y,
                                     std::size_t k) {
  return embed_impl(x, y, k, k);
}

LagEmbedding<CategoricalSeries> embed(const CategoricalSeries& x, const CategoricalSeries& y,
                                      std::size_t k, std::size_t first_target) {
  return embed_impl(x, y, k, first_target);
}

LagEmbedding<ContinuousSeries> embed(const ContinuousSeries& x, const ContinuousSeries& y,
                                     std::size_t k, std::size_t first_target) {
  return embed_impl(x, y, k, first_target);
}

} // namespace te
