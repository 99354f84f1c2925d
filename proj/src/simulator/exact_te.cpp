#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "te/error.hpp"
#include "te/rng.hpp"
#include "te/simulator.hpp"

namespace te {

namespace {

constexpr double kStationaryTolerance = 1e-12;
constexpr std::size_t kMaxSweeps = 1'000'000;
constexpr int kRestarts = 3;
constexpr double kRestartAgreement = 1e-9;

std::vector<double> power_iterate(const ChainSpec& spec, std::vector<double> pi) {
  const std::size_t s = spec.states();
  std::vector<double> next(s);
  for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < s; ++i) {
      if (pi[i] == 0.0) continue;
      for (std::size_t j = 0; j < s; ++j) next[j] += pi[i] * spec.transition(i, j);
    }
    double total = 0.0;
    for (double v : next) total += v;
    double change = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
      next[j] /= total;
      change = std::max(change, std::abs(next[j] - pi[j]));
    }
    pi.swap(next);
    if (change < kStationaryTolerance) return pi;
  }
  throw NonErgodicError("power iteration did not converge; the chain may be periodic");
}

} // namespace

std::vector<double> stationary_distribution(const ChainSpec& spec) {
  const std::size_t s = spec.states();
  const std::vector<double> pi = power_iterate(spec, std::vector<double>(s, 1.0 / s));
  StreamRng rng(0x5EED, 0);
  for (int restart = 0; restart < kRestarts; ++restart) {
    // Uniform point on the simplex via normalised exponentials.
    std::vector<double> start(s);
    double total = 0.0;
    for (double& v : start) {
      v = -std::log(1.0 - rng.uniform());
      total += v;
    }
    for (double& v : start) v /= total;
    const std::vector<double> other = power_iterate(spec, std::move(start));
    for (std::size_t i = 0; i < s; ++i) {
      if (std::abs(other[i] - pi[i]) > kRestartAgreement) {
        throw NonErgodicError("stationary distribution is not unique");
      }
    }
  }
  return pi;
}

double exact_te(const ChainSpec& spec, std::size_t k, std::size_t cell_budget) {
  if (k < 1) throw std::invalid_argument("lag order k must be at least 1");
  const std::size_t s = spec.states();
  const std::size_t a = static_cast<std::size_t>(spec.alphabet_x());
  const std::size_t b = static_cast<std::size_t>(spec.alphabet_y());

  std::size_t paths = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (paths > cell_budget / s) {
      throw std::invalid_argument("exact TE enumeration exceeds the cell budget");
    }
    paths *= s;
  }
  if (paths > cell_budget / s) {
    throw std::invalid_argument("exact TE enumeration exceeds the cell budget");
  }

  // Path probabilities over the k joint states preceding the target, indexed
  // base-s with the oldest state most significant.
  std::vector<double> prob = stationary_distribution(spec);
  for (std::size_t len = 1; len < k; ++len) {
    std::vector<double> longer(prob.size() * s);
    for (std::size_t idx = 0; idx < prob.size(); ++idx) {
      const std::size_t last = idx % s;
      for (std::size_t next = 0; next < s; ++next) {
        longer[idx * s + next] = prob[idx] * spec.transition(last, next);
      }
    }
    prob.swap(longer);
  }

  // p(x_t | last joint state).
  std::vector<double> target_given_state(s * a, 0.0);
  for (std::size_t prev = 0; prev < s; ++prev) {
    for (std::size_t next = 0; next < s; ++next) {
      target_given_state[prev * a + next / b] += spec.transition(prev, next);
    }
  }

  std::size_t a_k = 1;
  for (std::size_t i = 0; i < k; ++i) a_k *= a;
  std::vector<double> null_joint(a_k * a, 0.0);

  // The joint history (xh, yh) is the path itself, so by the Markov property
  // p(x_t | xh, yh) = p(x_t | last state).
  double full_entropy = 0.0;
  for (std::size_t idx = 0; idx < paths; ++idx) {
    const double w = prob[idx];
    if (w == 0.0) continue;
    std::size_t x_code = 0;
    std::size_t rest = idx;
    std::size_t place = 1;
    for (std::size_t i = 0; i < k; ++i) {
      x_code += (rest % s) / b * place;
      rest /= s;
      place *= a;
    }
    const std::size_t last = idx % s;
    for (std::size_t x = 0; x < a; ++x) {
      const double p = target_given_state[last * a + x];
      if (p > 0.0) full_entropy -= w * p * std::log(p);
      null_joint[x_code * a + x] += w * p;
    }
  }

  double null_entropy = 0.0;
  for (std::size_t xh = 0; xh < a_k; ++xh) {
    double context = 0.0;
    for (std::size_t x = 0; x < a; ++x) context += null_joint[xh * a + x];
    for (std::size_t x = 0; x < a; ++x) {
      const double q = null_joint[xh * a + x];
      if (q > 0.0) null_entropy -= q * std::log(q / context);
    }
  }
  return std::max(0.0, null_entropy - full_entropy);
}

} // namespace te
