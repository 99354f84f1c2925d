#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "te/series.hpp"

namespace te {

/// Coupled binary chain
///   X_t = u_t Y_{t-1} + (1 - u_t) eps_t,   Y_t = v_t X_{t-1} + (1 - v_t) eta_t
/// with u_t ~ B(theta), v_t ~ B(phi), eps_t, eta_t ~ B(1/2).
struct ToyChainParams {
  double theta = 0.0;
  double phi = 0.0;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument unless 0 <= theta < 1 and 0 <= phi < 1.
void validate(const ToyChainParams& params);

/// Exact first-order transition kernel of a joint chain on a x b states.
/// Joint state s = x * b + y; kernel entry (prev, next) is
/// P(x_t, y_t | x_{t-1}, y_{t-1}) stored row-major by prev.
class ChainSpec {
public:
  /// Rows must be nonnegative and sum to 1 within 1e-12.
  ChainSpec(int alphabet_x, int alphabet_y, std::vector<double> kernel);

  int alphabet_x() const { return alphabet_x_; }
  int alphabet_y() const { return alphabet_y_; }
  std::size_t states() const { return static_cast<std::size_t>(alphabet_x_ * alphabet_y_); }
  double transition(std::size_t prev, std::size_t next) const {
    return kernel_[prev * states() + next];
  }
  const std::vector<double>& kernel() const { return kernel_; }

  /// Same chain with the roles of x and y exchanged.
  ChainSpec transposed() const;

private:
  int alphabet_x_;
  int alphabet_y_;
  std::vector<double> kernel_;
};

ChainSpec toy_chain_kernel(const ToyChainParams& params);

/// Realisation of length n started from the uniform stationary law.
std::pair<CategoricalSeries, CategoricalSeries> simulate_toy(const ToyChainParams& params,
                                                             std::size_t n);
/// Realisation drawn from stream `stream` of params.seed.
std::pair<CategoricalSeries, CategoricalSeries> simulate_toy(const ToyChainParams& params,
                                                             std::size_t n,
                                                             std::uint64_t stream);

/// Stationary law by power iteration (tolerance 1e-12, at most 1e6 sweeps),
/// repeated from random simplex points to confirm uniqueness. Throws
/// NonErgodicError if the iteration does not settle or the restarts disagree.
std::vector<double> stationary_distribution(const ChainSpec& spec);

/// Exact k-lag transfer entropy y -> x of the stationary chain, in nats, by
/// enumerating all (a b)^k joint histories. Throws std::invalid_argument if
/// (a b)^(k+1) exceeds `cell_budget`.
double exact_te(const ChainSpec& spec, std::size_t k, std::size_t cell_budget = std::size_t{1} << 24);

/// Closed form for the toy chain:
/// (1 + theta) log(1 + theta) / 2 + (1 - theta) log(1 - theta) / 2.
double toy_te_closed_form(double theta);

} // namespace te
