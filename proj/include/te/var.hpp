#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "te/likelihood.hpp"
#include "te/series.hpp"

namespace te {

/// Least-squares fit of a linear VAR partial model
///   x_t = sum_j A_j x_{t-j} + sum_j B_j y_{t-j} (+ sum_j C_j z_{t-j}) + e_t
/// with ML residual covariance (divisor n - first_target).
struct VarFit {
  std::size_t order = 0;
  std::size_t effective_samples = 0;
  /// [A_1 .. A_k | B_1 .. B_k | C_1 .. C_k], each block dim(x) columns wide
  /// for A and dim(source) for the others.
  Eigen::MatrixXd coefficients;
  Eigen::MatrixXd residual_covariance;
  double log_generalized_variance = 0.0;
  std::vector<std::size_t> exogenous_dimensions;

  double generalized_variance() const;
  std::size_t target_dimension() const { return static_cast<std::size_t>(residual_covariance.rows()); }
  /// A_lag, lag in {1..k}.
  Eigen::MatrixXd own_lag(std::size_t lag) const;
  /// Coefficient block of the given regressor series (0 = first exogenous
  /// series) at lag in {1..k}.
  Eigen::MatrixXd exogenous_lag(std::size_t series, std::size_t lag) const;
};

/// Autoregression of x on its own k lags over targets {k, ..., n-1}.
VarFit fit_var(const ContinuousSeries& x, std::size_t k);
/// Regression of x on k lags of x and y over targets {k, ..., n-1}.
VarFit fit_var(const ContinuousSeries& x, const ContinuousSeries& y, std::size_t k);
/// General form: regressors are k lags of x and of each exogenous series,
/// targets {first_target, ..., n-1}.
///
/// Throws std::invalid_argument on shape problems or too few samples,
/// RankDeficientError on collinear regressors and DegenerateVarianceError when
/// the residual generalised variance vanishes.
VarFit fit_var(const ContinuousSeries& x, std::span<const ContinuousSeries* const> exogenous,
               std::size_t k, std::size_t first_target);

struct GrangerResult {
  double te_hat = 0.0;
  double statistic = 0.0;
  std::size_t dof = 0;
  std::size_t effective_samples = 0;
  double log_generalized_variance_full = 0.0;
  double log_generalized_variance_null = 0.0;
};

/// Transfer entropy y -> x under the Gaussian VAR model: half the log ratio
/// of null to full residual generalised variances, both fitted on targets
/// {k, ..., n-1}. dof = k dim(x) dim(y).
GrangerResult var_te(const ContinuousSeries& x, const ContinuousSeries& y, std::size_t k);
/// Conditional variant: z's lags enter both the full and the null model.
GrangerResult var_conditional_te(const ContinuousSeries& x, const ContinuousSeries& y,
                                 const ContinuousSeries& z, std::size_t k);

/// Gaussian average log-likelihood at the ML estimate, with parameter count
/// dim(x) * (number of regressors) + dim(x) (dim(x) + 1) / 2.
LogLikelihoodSummary var_likelihood(const VarFit& fit);

OrderSelection select_order(const ContinuousSeries& x, const ContinuousSeries& y,
                            std::size_t k_max, Criterion criterion);

} // namespace te
