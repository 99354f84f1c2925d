#pragma once

#include <cstddef>

namespace te {

/// P(X <= x) for X ~ chi-squared(d). Throws std::invalid_argument for x < 0
/// or d < 1.
double chi2_cdf(double x, int d);

/// P(X > x) computed directly (no cancellation for small tails).
double chi2_sf(double x, int d);

/// Inverse of chi2_cdf on [0, 1).
double chi2_quantile(double p, int d);

/// P(X <= x) for X ~ non-central chi-squared(d; lambda), evaluated as the
/// Poisson(lambda/2) mixture of central chi-squared(d + 2j) CDFs. The series
/// starts at the Poisson mode and stops once the neglected weight is below
/// 1e-12.
double noncentral_chi2_cdf(double x, int d, double lambda);

struct TeTestResult {
  double te_hat = 0.0;
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double confidence = 0.95;
  std::size_t effective_samples = 0;
};

/// Significance test and confidence interval for a transfer entropy estimate.
///
/// The statistic 2 n_eff te_hat is referred to chi-squared(dof) for the
/// p-value. The interval inverts the non-central family in lambda:
/// lambda_hi solves F(stat; d, lambda) = alpha/2 and lambda_lo solves
/// F(stat; d, lambda) = 1 - alpha/2 (0 when no root exists); the TE bounds are
/// lambda / (2 n_eff).
TeTestResult te_test(double te_hat, std::size_t n_eff, std::size_t dof, double alpha = 0.05);

} // namespace te
