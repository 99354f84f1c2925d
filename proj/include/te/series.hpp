#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

namespace te {

using Symbol = std::int32_t;

/// Finite-alphabet time series. Symbols are 0-based and strictly below the
/// declared alphabet size.
class CategoricalSeries {
public:
  /// Throws std::invalid_argument on an empty series, a non-positive
  /// alphabet, or an out-of-range symbol.
  CategoricalSeries(std::vector<Symbol> values, int alphabet_size);

  /// Alphabet inferred as max(max symbol + 1, 2).
  static CategoricalSeries with_inferred_alphabet(std::vector<Symbol> values);

  std::span<const Symbol> values() const { return values_; }
  std::span<const Symbol> data() const { return values_; }
  Symbol operator[](std::size_t t) const { return values_[t]; }
  std::size_t size() const { return values_.size(); }
  int alphabet_size() const { return alphabet_size_; }

private:
  std::vector<Symbol> values_;
  int alphabet_size_;
};

/// Real vector-valued time series, stored row-major (one row per time step).
class ContinuousSeries {
public:
  ContinuousSeries(std::vector<double> row_major, std::size_t dimension);

  static ContinuousSeries scalar(std::vector<double> values);

  std::size_t size() const { return values_.size() / dimension_; }
  std::size_t dimension() const { return dimension_; }
  std::span<const double> row(std::size_t t) const {
    return {values_.data() + t * dimension_, dimension_};
  }
  std::span<const double> data() const { return values_; }

  /// Contiguous copy of component `c` across time.
  std::vector<double> component(std::size_t c) const;

private:
  std::vector<double> values_;
  std::size_t dimension_;
};

/// View over the (target, x-history, y-history) windows of a pair of series.
///
/// Window i has target index t = first_target + i (0-based) and histories
/// covering [t - k, t), oldest first. The view borrows the series; the
/// series must outlive it.
template <typename Series>
class LagEmbedding {
public:
  using value_type = typename std::remove_cvref_t<
      decltype(std::declval<const Series&>().data())>::value_type;

  LagEmbedding(const Series& x, const Series& y, std::size_t k, std::size_t first_target)
      : x_(&x), y_(&y), k_(k), first_target_(first_target) {}

  std::size_t order() const { return k_; }
  std::size_t first_target() const { return first_target_; }
  std::size_t effective_length() const { return x_->size() - first_target_; }
  std::size_t size() const { return effective_length(); }

  std::size_t target_index(std::size_t i) const { return first_target_ + i; }

  std::span<const value_type> target(std::size_t i) const {
    return slice(*x_, target_index(i), 1);
  }
  std::span<const value_type> x_history(std::size_t i) const {
    return slice(*x_, target_index(i) - k_, k_);
  }
  std::span<const value_type> y_history(std::size_t i) const {
    return slice(*y_, target_index(i) - k_, k_);
  }

private:
  static std::size_t width(const CategoricalSeries&) { return 1; }
  static std::size_t width(const ContinuousSeries& s) { return s.dimension(); }

  static std::span<const value_type> slice(const Series& s, std::size_t from, std::size_t count) {
    const std::size_t w = width(s);
    return s.data().subspan(from * w, count * w);
  }

  const Series* x_;
  const Series* y_;
  std::size_t k_;
  std::size_t first_target_;
};

/// Lag embedding with the default target range {k, ..., n-1}.
///
/// Throws std::invalid_argument when the lengths differ, k == 0, or n <= k.
LagEmbedding<CategoricalSeries> embed(const CategoricalSeries& x, const CategoricalSeries& y,
                                      std::size_t k);
LagEmbedding<ContinuousSeries> embed(const ContinuousSeries& x, const ContinuousSeries& y,
                                     std::size_t k);

/// Lag embedding whose targets start at `first_target` (>= k). Used to score
/// several orders on one common target range.
LagEmbedding<CategoricalSeries> embed(const CategoricalSeries& x, const CategoricalSeries& y,
                                      std::size_t k, std::size_t first_target);
LagEmbedding<ContinuousSeries> embed(const ContinuousSeries& x, const ContinuousSeries& y,
                                     std::size_t k, std::size_t first_target);

} // namespace te
