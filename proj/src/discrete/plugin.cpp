#include "te/plugin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "te/kernels.hpp"

namespace te {

namespace {

constexpr std::uint64_t kDenseCellLimit = std::uint64_t{1} << 22;
constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

// base^exponent; throws when the result does not fit in 64 bits.
std::uint64_t checked_pow(std::uint64_t base, std::size_t exponent) {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > kMax / base) {
      throw std::invalid_argument("cell space exceeds 64-bit codes; lower k or the alphabets");
    }
    result *= base;
  }
  return result;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMax / a) {
    throw std::invalid_argument("cell space exceeds 64-bit codes; lower k or the alphabets");
  }
  return a * b;
}

struct DigitStream {
  std::span<const Symbol> digits;
  std::uint32_t radix;
};

// Mixed-radix code of every window, most significant digit first.
std::vector<std::uint64_t> encode(std::span<const DigitStream> streams, std::size_t windows,
                                  std::uint64_t code_space) {
  std::vector<std::uint64_t> codes(windows, 0);
  if (code_space <= std::numeric_limits<std::uint32_t>::max()) {
    std::vector<std::uint32_t> narrow(windows, 0);
    for (const DigitStream& s : streams) {
      kernels::horner_step(narrow, s.digits, s.radix);
    }
    std::copy(narrow.begin(), narrow.end(), codes.begin());
    return codes;
  }
  for (const DigitStream& s : streams) {
    for (std::size_t i = 0; i < windows; ++i) {
      codes[i] = codes[i] * s.radix + static_cast<std::uint64_t>(s.digits[i]);
    }
  }
  return codes;
}

std::vector<PluginDistribution::Cell> tally(std::vector<std::uint64_t> codes,
                                            std::uint64_t code_space) {
  std::vector<PluginDistribution::Cell> cells;
  if (code_space <= kDenseCellLimit) {
    std::vector<std::uint64_t> histogram(code_space, 0);
    for (std::uint64_t c : codes) {
      ++histogram[c];
    }
    for (std::uint64_t c = 0; c < code_space; ++c) {
      if (histogram[c] != 0) {
        cells.push_back({c, histogram[c]});
      }
    }
    return cells;
  }
  std::sort(codes.begin(), codes.end());
  for (std::size_t i = 0; i < codes.size();) {
    std::size_t j = i;
    while (j < codes.size() && codes[j] == codes[i]) ++j;
    cells.push_back({codes[i], j - i});
    i = j;
  }
  return cells;
}

PluginDistribution build(const CategoricalSeries& x, const CategoricalSeries& y,
                         const CategoricalSeries* z, std::size_t k, std::size_t first_target) {
  const auto embedding = embed(x, y, k, first_target);
  if (z != nullptr && z->size() != x.size()) {
    throw std::invalid_argument("series lengths differ: " + std::to_string(x.size()) + " vs " +
                                std::to_string(z->size()) + " (conditioning series)");
  }
  const std::size_t windows = embedding.effective_length();
  const auto a = static_cast<std::uint32_t>(x.alphabet_size());
  const auto b = static_cast<std::uint32_t>(y.alphabet_size());
  const auto c = z != nullptr ? static_cast<std::uint32_t>(z->alphabet_size()) : 1u;

  std::uint64_t space = checked_mul(checked_pow(a, k + 1), checked_pow(b, k));
  space = checked_mul(space, checked_pow(c, k));

  std::vector<DigitStream> streams;
  auto lags = [&](const CategoricalSeries& s, std::uint32_t radix) {
    for (std::size_t lag = k; lag >= 1; --lag) {
      streams.push_back({s.values().subspan(first_target - lag, windows), radix});
    }
  };
  lags(x, a);
  if (z != nullptr) lags(*z, c);
  lags(y, b);
  streams.push_back({x.values().subspan(first_target, windows), a});

  return PluginDistribution(tally(encode(streams, windows, space), space), x.alphabet_size(),
                            y.alphabet_size(), z != nullptr ? z->alphabet_size() : 0, k);
}

// -(1/N) sum_cells count * log(count / context_count), for cells sorted so
// that equal contexts (code / a) are contiguous.
double conditional_entropy(std::span<const PluginDistribution::Cell> cells, std::uint64_t a,
                           std::uint64_t total) {
  double sum = 0.0;
  for (std::size_t i = 0; i < cells.size();) {
    const std::uint64_t context = cells[i].code / a;
    std::size_t j = i;
    std::uint64_t context_count = 0;
    while (j < cells.size() && cells[j].code / a == context) {
      context_count += cells[j].count;
      ++j;
    }
    const double log_context = std::log(static_cast<double>(context_count));
    for (std::size_t m = i; m < j; ++m) {
      const double count = static_cast<double>(cells[m].count);
      sum += count * (std::log(count) - log_context);
    }
    i = j;
  }
  return -sum / static_cast<double>(total);
}

} // namespace

PluginDistribution::PluginDistribution(std::vector<Cell> cells, int alphabet_x, int alphabet_y,
                                       int alphabet_z, std::size_t order)
    : cells_(std::move(cells)),
      alphabet_x_(alphabet_x),
      alphabet_y_(alphabet_y),
      alphabet_z_(alphabet_z),
      order_(order) {
  if (alphabet_x_ < 1 || alphabet_y_ < 1 || alphabet_z_ < 0 || order_ < 1) {
    throw std::invalid_argument("invalid alphabet sizes or order for a plug-in table");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].count == 0 || (i > 0 && cells_[i - 1].code >= cells_[i].code)) {
      throw std::invalid_argument("plug-in cells must be strictly sorted with nonzero counts");
    }
    total_ += cells_[i].count;
  }
}

std::uint64_t PluginDistribution::count(Symbol target, std::span<const Symbol> x_history,
                                        std::span<const Symbol> y_history,
                                        std::span<const Symbol> z_history) const {
  const std::size_t z_expected = conditional() ? order_ : 0;
  if (x_history.size() != order_ || y_history.size() != order_ || z_history.size() != z_expected) {
    throw std::invalid_argument("history lengths must equal the table order");
  }
  auto in_range = [](Symbol s, int alphabet) { return s >= 0 && s < alphabet; };
  std::uint64_t code = 0;
  for (Symbol s : x_history) {
    if (!in_range(s, alphabet_x_)) return 0;
    code = code * alphabet_x_ + s;
  }
  for (Symbol s : z_history) {
    if (!in_range(s, alphabet_z_)) return 0;
    code = code * alphabet_z_ + s;
  }
  for (Symbol s : y_history) {
    if (!in_range(s, alphabet_y_)) return 0;
    code = code * alphabet_y_ + s;
  }
  if (!in_range(target, alphabet_x_)) return 0;
  code = code * alphabet_x_ + target;

  const auto it = std::lower_bound(cells_.begin(), cells_.end(), code,
                                   [](const Cell& cell, std::uint64_t v) { return cell.code < v; });
  return it != cells_.end() && it->code == code ? it->count : 0;
}

std::size_t PluginDistribution::observed_contexts() const {
  std::size_t contexts = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i == 0 || cells_[i].code / alphabet_x_ != cells_[i - 1].code / alphabet_x_) ++contexts;
  }
  return contexts;
}

double PluginDistribution::possible_contexts() const {
  const double k = static_cast<double>(order_);
  const double c = conditional() ? alphabet_z_ : 1.0;
  return std::pow(alphabet_x_, k) * std::pow(alphabet_y_, k) * std::pow(c, k);
}

double PluginDistribution::full_conditional_entropy() const {
  if (total_ == 0) {
    throw std::invalid_argument("plug-in table is empty");
  }
  return conditional_entropy(cells_, static_cast<std::uint64_t>(alphabet_x_), total_);
}

double PluginDistribution::null_conditional_entropy() const {
  if (total_ == 0) {
    throw std::invalid_argument("plug-in table is empty");
  }
  // Drop the y-history digits: (xh, zh, yh, x) -> (xh, zh, x).
  const auto a = static_cast<std::uint64_t>(alphabet_x_);
  const std::uint64_t y_space = checked_pow(static_cast<std::uint64_t>(alphabet_y_), order_);
  std::vector<Cell> reduced;
  reduced.reserve(cells_.size());
  for (const Cell& cell : cells_) {
    const std::uint64_t null_context = cell.code / a / y_space;
    reduced.push_back({null_context * a + cell.code % a, cell.count});
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const Cell& l, const Cell& r) { return l.code < r.code; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    if (out > 0 && reduced[out - 1].code == reduced[i].code) {
      reduced[out - 1].count += reduced[i].count;
    } else {
      reduced[out++] = reduced[i];
    }
  }
  reduced.resize(out);
  return conditional_entropy(reduced, a, total_);
}

PluginDistribution count_cells(const CategoricalSeries& x, const CategoricalSeries& y,
                               std::size_t k) {
  return build(x, y, nullptr, k, k);
}

PluginDistribution count_cells(const CategoricalSeries& x, const CategoricalSeries& y,
                               std::size_t k, std::size_t first_target) {
  return build(x, y, nullptr, k, first_target);
}

PluginDistribution count_cells(const CategoricalSeries& x, const CategoricalSeries& y,
                               const CategoricalSeries& z, std::size_t k) {
  return build(x, y, &z, k, k);
}

double plugin_te(const PluginDistribution& dist) {
  // Gibbs' inequality makes the difference nonnegative; clamp rounding noise.
  return std::max(0.0, dist.null_conditional_entropy() - dist.full_conditional_entropy());
}

double plugin_te(const CategoricalSeries& x, const CategoricalSeries& y, std::size_t k) {
  return plugin_te(count_cells(x, y, k));
}

double plugin_conditional_te(const CategoricalSeries& x, const CategoricalSeries& y,
                             const CategoricalSeries& z, std::size_t k) {
  return plugin_te(count_cells(x, y, z, k));
}

LogLikelihoodSummary full_model_likelihood(const PluginDistribution& dist) {
  const auto params = dof(std::max(dist.alphabet_x(), 2), std::max(dist.alphabet_y(), 2),
                          dist.order(),
                          dist.conditional() ? std::optional<int>(dist.alphabet_z()) : std::nullopt);
  return {-dist.full_conditional_entropy(), static_cast<std::size_t>(dist.total()),
          static_cast<std::size_t>(params.full_params)};
}

LogLikelihoodSummary null_model_likelihood(const PluginDistribution& dist) {
  const auto params = dof(std::max(dist.alphabet_x(), 2), std::max(dist.alphabet_y(), 2),
                          dist.order(),
                          dist.conditional() ? std::optional<int>(dist.alphabet_z()) : std::nullopt);
  return {-dist.null_conditional_entropy(), static_cast<std::size_t>(dist.total()),
          static_cast<std::size_t>(params.null_params)};
}

DofSpec dof(int a, int b, std::size_t k, std::optional<int> conditional_alphabet) {
  if (a < 2 || b < 2) {
    throw std::invalid_argument("degrees of freedom need alphabets of size >= 2 (got a=" +
                                std::to_string(a) + ", b=" + std::to_string(b) + ")");
  }
  if (k < 1) {
    throw std::invalid_argument("lag order k must be at least 1");
  }
  if (conditional_alphabet && *conditional_alphabet < 1) {
    throw std::invalid_argument("conditioning alphabet must be positive");
  }
  const std::uint64_t c = conditional_alphabet ? static_cast<std::uint64_t>(*conditional_alphabet) : 1;
  const std::uint64_t null_params =
      checked_mul(checked_mul(static_cast<std::uint64_t>(a - 1), checked_pow(a, k)), checked_pow(c, k));
  const std::uint64_t b_k = checked_pow(b, k);
  return {checked_mul(null_params, b_k), null_params, checked_mul(null_params, b_k - 1)};
}

OrderSelection select_order(const CategoricalSeries& x, const CategoricalSeries& y,
                            std::size_t k_max, Criterion criterion) {
  return select_order_by(k_max, x.size(), criterion, [&](std::size_t k, std::size_t first) {
    return full_model_likelihood(count_cells(x, y, k, first));
  });
}

} // namespace te
