#include <cmath>
#include <stdexcept>
#include <string>

#include "te/rng.hpp"
#include "te/simulator.hpp"

namespace te {

void validate(const ToyChainParams& params) {
  auto ok = [](double v) { return v >= 0.0 && v < 1.0; };
  if (!ok(params.theta) || !ok(params.phi)) {
    throw std::invalid_argument("toy chain needs 0 <= theta < 1 and 0 <= phi < 1 (got theta=" +
                                std::to_string(params.theta) +
                                ", phi=" + std::to_string(params.phi) + ")");
  }
}

ChainSpec::ChainSpec(int alphabet_x, int alphabet_y, std::vector<double> kernel)
    : alphabet_x_(alphabet_x), alphabet_y_(alphabet_y), kernel_(std::move(kernel)) {
  if (alphabet_x_ < 1 || alphabet_y_ < 1) {
    throw std::invalid_argument("chain alphabets must be positive");
  }
  const std::size_t s = states();
  if (kernel_.size() != s * s) {
    throw std::invalid_argument("kernel must have (a b)^2 entries");
  }
  for (std::size_t prev = 0; prev < s; ++prev) {
    double row = 0.0;
    for (std::size_t next = 0; next < s; ++next) {
      const double p = kernel_[prev * s + next];
      if (!(p >= 0.0)) throw std::invalid_argument("kernel entries must be nonnegative");
      row += p;
    }
    if (std::abs(row - 1.0) > 1e-12) {
      throw std::invalid_argument("kernel row " + std::to_string(prev) + " sums to " +
                                  std::to_string(row));
    }
  }
}

ChainSpec ChainSpec::transposed() const {
  const int a = alphabet_x_;
  const int b = alphabet_y_;
  const std::size_t s = states();
  auto swap_state = [&](std::size_t state) {
    const std::size_t x = state / b;
    const std::size_t y = state % b;
    return y * a + x;
  };
  std::vector<double> kernel(s * s);
  for (std::size_t prev = 0; prev < s; ++prev) {
    for (std::size_t next = 0; next < s; ++next) {
      kernel[swap_state(prev) * s + swap_state(next)] = kernel_[prev * s + next];
    }
  }
  return ChainSpec(b, a, std::move(kernel));
}

ChainSpec toy_chain_kernel(const ToyChainParams& params) {
  validate(params);
  std::vector<double> kernel(16);
  for (int x0 = 0; x0 < 2; ++x0) {
    for (int y0 = 0; y0 < 2; ++y0) {
      for (int x1 = 0; x1 < 2; ++x1) {
        for (int y1 = 0; y1 < 2; ++y1) {
          const double px = params.theta * (x1 == y0) + 0.5 * (1.0 - params.theta);
          const double py = params.phi * (y1 == x0) + 0.5 * (1.0 - params.phi);
          kernel[(x0 * 2 + y0) * 4 + (x1 * 2 + y1)] = px * py;
        }
      }
    }
  }
  return ChainSpec(2, 2, std::move(kernel));
}

std::pair<CategoricalSeries, CategoricalSeries> simulate_toy(const ToyChainParams& params,
                                                             std::size_t n) {
  return simulate_toy(params, n, 0);
}

std::pair<CategoricalSeries, CategoricalSeries> simulate_toy(const ToyChainParams& params,
                                                             std::size_t n,
                                                             std::uint64_t stream) {
  validate(params);
  if (n < 2) throw std::invalid_argument("toy chain realisation needs n >= 2");
  StreamRng rng(params.seed, stream);
  std::vector<Symbol> x(n);
  std::vector<Symbol> y(n);
  // The stationary law is uniform on {0,1}^2.
  x[0] = rng.bernoulli(0.5);
  y[0] = rng.bernoulli(0.5);
  for (std::size_t t = 1; t < n; ++t) {
    const bool u = rng.bernoulli(params.theta);
    const Symbol eps = rng.bernoulli(0.5);
    const bool v = rng.bernoulli(params.phi);
    const Symbol eta = rng.bernoulli(0.5);
    x[t] = u ? y[t - 1] : eps;
    y[t] = v ? x[t - 1] : eta;
  }
  return {CategoricalSeries(std::move(x), 2), CategoricalSeries(std::move(y), 2)};
}

double toy_te_closed_form(double theta) {
  if (!(theta >= 0.0 && theta < 1.0)) {
    throw std::invalid_argument("theta must lie in [0, 1)");
  }
  return 0.5 * (1.0 + theta) * std::log1p(theta) + 0.5 * (1.0 - theta) * std::log1p(-theta);
}

} // namespace te
