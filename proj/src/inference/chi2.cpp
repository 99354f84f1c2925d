#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "te/inference.hpp"

namespace te {

namespace {

constexpr double kTailMass = 1e-12;

void check_args(double x, int d) {
  if (!(x >= 0.0)) throw std::invalid_argument("chi-squared argument must be >= 0");
  if (d < 1) throw std::invalid_argument("chi-squared degrees of freedom must be >= 1");
}

double log_poisson(double mean, double j) {
  return -mean + j * std::log(mean) - std::lgamma(j + 1.0);
}

} // namespace

double chi2_cdf(double x, int d) {
  check_args(x, d);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(0.5 * d, 0.5 * x);
}

double chi2_sf(double x, int d) {
  check_args(x, d);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * d, 0.5 * x);
}

double chi2_quantile(double p, int d) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("chi-squared quantile needs p in [0, 1)");
  if (d < 1) throw std::invalid_argument("chi-squared degrees of freedom must be >= 1");
  if (p == 0.0) return 0.0;
  return 2.0 * boost::math::gamma_p_inv(0.5 * d, p);
}

double noncentral_chi2_cdf(double x, int d, double lambda) {
  check_args(x, d);
  if (!(lambda >= 0.0)) throw std::invalid_argument("non-centrality must be >= 0");
  if (lambda == 0.0) return chi2_cdf(x, d);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;

  const double mean = 0.5 * lambda;
  const double half_x = 0.5 * x;
  const double mode = std::floor(mean);
  const double w_mode = std::exp(log_poisson(mean, mode));

  // Outward from the mode; Poisson weights follow w_{j+1} = w_j * mean / (j + 1).
  double sum = 0.0;
  double weight_seen = 0.0;
  double w = w_mode;
  for (double j = mode; j >= 0.0; j -= 1.0) {
    sum += w * boost::math::gamma_p(0.5 * d + j, half_x);
    weight_seen += w;
    if (w < kTailMass * 1e-4 && j < mode) break;
    w *= j / mean;
  }
  w = w_mode;
  for (double j = mode + 1.0;; j += 1.0) {
    w *= mean / j;
    const double term = boost::math::gamma_p(0.5 * d + j, half_x);
    sum += w * term;
    weight_seen += w;
    // Every neglected term is bounded by its weight.
    if (1.0 - weight_seen < kTailMass || term == 0.0) break;
    if (j > mode + 1e7) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

} // namespace te
