#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "te/likelihood.hpp"
#include "te/series.hpp"

namespace te {

/// Joint frequency table over (x_t, x-history, z-history, y-history) cells.
///
/// Cells are stored sparsely as (code, count) pairs sorted by code, where
///   code = ((xh * Z + zh) * Y + yh) * a + x_t
/// with xh, zh, yh the base-a, base-c, base-b numbers of the k-lag histories
/// (oldest lag most significant), Y = b^k and Z = c^k (Z = 1 when there is
/// no conditioning series). Every window sharing a full context (xh, zh, yh)
/// therefore occupies a contiguous run of cells.
class PluginDistribution {
public:
  struct Cell {
    std::uint64_t code;
    std::uint64_t count;
  };

  /// `cells` must be sorted by code with nonzero counts; alphabet_z is 0 for
  /// an unconditional table.
  PluginDistribution(std::vector<Cell> cells, int alphabet_x, int alphabet_y,
                     int alphabet_z, std::size_t order);

  std::span<const Cell> cells() const { return cells_; }
  std::uint64_t total() const { return total_; }
  int alphabet_x() const { return alphabet_x_; }
  int alphabet_y() const { return alphabet_y_; }
  /// 0 for an unconditional table.
  int alphabet_z() const { return alphabet_z_; }
  bool conditional() const { return alphabet_z_ > 0; }
  std::size_t order() const { return order_; }

  /// Count for one cell; histories are oldest first. Zero if unobserved.
  std::uint64_t count(Symbol target, std::span<const Symbol> x_history,
                      std::span<const Symbol> y_history,
                      std::span<const Symbol> z_history = {}) const;

  /// Distinct (x-history, z-history, y-history) contexts seen in the data.
  std::size_t observed_contexts() const;
  /// a^k * c^k * b^k.
  double possible_contexts() const;

  /// Plug-in conditional entropies in nats: H(X_t | full context) and
  /// H(X_t | context without y).
  double full_conditional_entropy() const;
  double null_conditional_entropy() const;

private:
  std::vector<Cell> cells_;
  std::uint64_t total_ = 0;
  int alphabet_x_;
  int alphabet_y_;
  int alphabet_z_;
  std::size_t order_;
};

/// Tallies every window of embed(x, y, k) exactly once.
PluginDistribution count_cells(const CategoricalSeries& x, const CategoricalSeries& y,
                               std::size_t k);
/// As above, restricted to targets {first_target, ..., n-1}.
PluginDistribution count_cells(const CategoricalSeries& x, const CategoricalSeries& y,
                               std::size_t k, std::size_t first_target);
/// Table with a conditioning series z; its histories join the null context.
PluginDistribution count_cells(const CategoricalSeries& x, const CategoricalSeries& y,
                               const CategoricalSeries& z, std::size_t k);

/// Plug-in transfer entropy y -> x in nats (conditional on z when the table
/// was built with one). Always >= 0.
double plugin_te(const PluginDistribution& dist);
/// Shorthand for plugin_te(count_cells(x, y, k)).
double plugin_te(const CategoricalSeries& x, const CategoricalSeries& y, std::size_t k);

double plugin_conditional_te(const CategoricalSeries& x, const CategoricalSeries& y,
                             const CategoricalSeries& z, std::size_t k);

/// Maximised average log-likelihood of the unrestricted Markov model
/// (transition probabilities p(x_t | all histories) as free parameters).
LogLikelihoodSummary full_model_likelihood(const PluginDistribution& dist);
/// Same for the null model, whose transitions ignore the y history.
LogLikelihoodSummary null_model_likelihood(const PluginDistribution& dist);

struct DofSpec {
  std::uint64_t full_params = 0;
  std::uint64_t null_params = 0;
  std::uint64_t dof = 0;
};

/// Parameter counts of the full and null finite-alphabet Markov models:
/// (a-1) a^k c^k b^k and (a-1) a^k c^k, with c = 1 when unconditional.
DofSpec dof(int a, int b, std::size_t k, std::optional<int> conditional_alphabet = std::nullopt);

OrderSelection select_order(const CategoricalSeries& x, const CategoricalSeries& y,
                            std::size_t k_max, Criterion criterion);

} // namespace te
