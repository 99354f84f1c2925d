#include "te/var.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "te/error.hpp"
#include "te/kernels.hpp"

namespace te {

namespace {

constexpr double kRankTolerance = 1e-10;
constexpr double kDegenerateVarianceRatio = 1e-12;
constexpr double kNestingSlack = 1e-10;

// One lagged regressor: a contiguous slice of one component.
struct Column {
  std::span<const double> values;
};

} // namespace

double VarFit::generalized_variance() const { return std::exp(log_generalized_variance); }

Eigen::MatrixXd VarFit::own_lag(std::size_t lag) const {
  const auto dx = static_cast<Eigen::Index>(target_dimension());
  if (lag < 1 || lag > order) throw std::out_of_range("lag outside 1..k");
  return coefficients.block(0, static_cast<Eigen::Index>(lag - 1) * dx, dx, dx);
}

Eigen::MatrixXd VarFit::exogenous_lag(std::size_t series, std::size_t lag) const {
  if (series >= exogenous_dimensions.size()) throw std::out_of_range("no such exogenous series");
  if (lag < 1 || lag > order) throw std::out_of_range("lag outside 1..k");
  const std::size_t dx = target_dimension();
  std::size_t offset = order * dx;
  for (std::size_t s = 0; s < series; ++s) offset += order * exogenous_dimensions[s];
  const std::size_t width = exogenous_dimensions[series];
  offset += (lag - 1) * width;
  return coefficients.block(0, static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(dx),
                            static_cast<Eigen::Index>(width));
}

VarFit fit_var(const ContinuousSeries& x, std::span<const ContinuousSeries* const> exogenous,
               std::size_t k, std::size_t first_target) {
  const std::size_t n = x.size();
  for (const ContinuousSeries* s : exogenous) {
    if (s->size() != n) {
      throw std::invalid_argument("series lengths differ: " + std::to_string(n) + " vs " +
                                  std::to_string(s->size()));
    }
  }
  if (k < 1) throw std::invalid_argument("lag order k must be at least 1");
  if (first_target < k) throw std::invalid_argument("first target index precedes the lag window");

  const std::size_t dx = x.dimension();
  std::size_t p = k * dx;
  for (const ContinuousSeries* s : exogenous) p += k * s->dimension();
  if (n <= first_target || n - first_target <= p) {
    throw std::invalid_argument("too few samples (" + std::to_string(n) + ") to identify " +
                                std::to_string(p) + " regression coefficients per equation");
  }
  const std::size_t samples = n - first_target;

  // Component-major copies so every lagged regressor is a contiguous slice.
  std::vector<std::vector<double>> storage;
  for (std::size_t c = 0; c < dx; ++c) storage.push_back(x.component(c));
  for (const ContinuousSeries* s : exogenous) {
    for (std::size_t c = 0; c < s->dimension(); ++c) storage.push_back(s->component(c));
  }

  std::vector<Column> regressors;
  regressors.reserve(p);
  std::size_t base = 0;
  auto add_lags = [&](std::size_t dimension) {
    for (std::size_t lag = 1; lag <= k; ++lag) {
      for (std::size_t c = 0; c < dimension; ++c) {
        regressors.push_back({std::span<const double>(storage[base + c]).subspan(first_target - lag, samples)});
      }
    }
    base += dimension;
  };
  add_lags(dx);
  for (const ContinuousSeries* s : exogenous) add_lags(s->dimension());

  std::vector<std::span<const double>> targets;
  for (std::size_t c = 0; c < dx; ++c) {
    targets.push_back(std::span<const double>(storage[c]).subspan(first_target, samples));
  }

  const auto ip = static_cast<Eigen::Index>(p);
  const auto idx = static_cast<Eigen::Index>(dx);
  Eigen::MatrixXd gram(ip, ip);
  Eigen::MatrixXd cross(ip, idx);
  for (Eigen::Index r = 0; r < ip; ++r) {
    for (Eigen::Index s = 0; s <= r; ++s) {
      gram(r, s) = gram(s, r) = kernels::dot(regressors[r].values, regressors[s].values);
    }
    for (Eigen::Index i = 0; i < idx; ++i) {
      cross(r, i) = kernels::dot(regressors[r].values, targets[i]);
    }
  }

  // Equilibrate to unit diagonal before judging rank.
  Eigen::VectorXd scale(ip);
  for (Eigen::Index r = 0; r < ip; ++r) {
    if (!(gram(r, r) > 0.0)) {
      throw RankDeficientError("regressor " + std::to_string(r) + " is identically zero");
    }
    scale(r) = 1.0 / std::sqrt(gram(r, r));
  }
  const Eigen::MatrixXd correlation = scale.asDiagonal() * gram * scale.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(correlation, Eigen::EigenvaluesOnly);
  const double smallest = eigen.eigenvalues().minCoeff();
  const double largest = eigen.eigenvalues().maxCoeff();
  if (!(smallest > kRankTolerance * largest)) {
    throw RankDeficientError("lagged regressors are collinear (condition ratio " +
                             std::to_string(smallest / largest) + ")");
  }
  const Eigen::MatrixXd beta =
      scale.asDiagonal() * correlation.ldlt().solve(scale.asDiagonal() * cross);

  std::vector<std::vector<double>> residuals;
  for (Eigen::Index i = 0; i < idx; ++i) {
    std::vector<double> r(targets[i].begin(), targets[i].end());
    for (Eigen::Index j = 0; j < ip; ++j) {
      kernels::axpy(-beta(j, i), regressors[j].values, r);
    }
    residuals.push_back(std::move(r));
  }

  VarFit fit;
  fit.order = k;
  fit.effective_samples = samples;
  fit.coefficients = beta.transpose();
  for (const ContinuousSeries* s : exogenous) fit.exogenous_dimensions.push_back(s->dimension());
  fit.residual_covariance.resize(idx, idx);
  const double inv_n = 1.0 / static_cast<double>(samples);
  double log_scale = 0.0;
  for (Eigen::Index i = 0; i < idx; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      fit.residual_covariance(i, j) = fit.residual_covariance(j, i) =
          kernels::dot(residuals[i], residuals[j]) * inv_n;
    }
    log_scale += std::log(kernels::dot(targets[i], targets[i]) * inv_n);
  }

  Eigen::LLT<Eigen::MatrixXd> chol(fit.residual_covariance);
  if (chol.info() != Eigen::Success) {
    throw DegenerateVarianceError("residual covariance is not positive definite");
  }
  fit.log_generalized_variance = 2.0 * chol.matrixLLT().diagonal().array().log().sum();
  if (!std::isfinite(fit.log_generalized_variance) ||
      fit.log_generalized_variance < std::log(kDegenerateVarianceRatio) + log_scale) {
    throw DegenerateVarianceError("residual generalised variance is numerically zero");
  }
  return fit;
}

VarFit fit_var(const ContinuousSeries& x, std::size_t k) {
  return fit_var(x, std::span<const ContinuousSeries* const>{}, k, k);
}

VarFit fit_var(const ContinuousSeries& x, const ContinuousSeries& y, std::size_t k) {
  const ContinuousSeries* exogenous[] = {&y};
  return fit_var(x, exogenous, k, k);
}

namespace {

GrangerResult compare(const VarFit& full, const VarFit& null, std::size_t dof) {
  GrangerResult result;
  result.log_generalized_variance_full = full.log_generalized_variance;
  result.log_generalized_variance_null = null.log_generalized_variance;
  const double te = 0.5 * (null.log_generalized_variance - full.log_generalized_variance);
  if (te < -kNestingSlack) {
    throw std::runtime_error("null model fits better than the full model (TE " +
                             std::to_string(te) + "); regressions are inconsistent");
  }
  result.te_hat = std::max(te, 0.0);
  result.effective_samples = full.effective_samples;
  result.statistic = 2.0 * static_cast<double>(result.effective_samples) * result.te_hat;
  result.dof = dof;
  return result;
}

} // namespace

GrangerResult var_te(const ContinuousSeries& x, const ContinuousSeries& y, std::size_t k) {
  const ContinuousSeries* full_regressors[] = {&y};
  const VarFit full = fit_var(x, full_regressors, k, k);
  const VarFit null = fit_var(x, std::span<const ContinuousSeries* const>{}, k, k);
  return compare(full, null, k * x.dimension() * y.dimension());
}

GrangerResult var_conditional_te(const ContinuousSeries& x, const ContinuousSeries& y,
                                 const ContinuousSeries& z, std::size_t k) {
  const ContinuousSeries* full_regressors[] = {&z, &y};
  const ContinuousSeries* null_regressors[] = {&z};
  const VarFit full = fit_var(x, full_regressors, k, k);
  const VarFit null = fit_var(x, null_regressors, k, k);
  return compare(full, null, k * x.dimension() * y.dimension());
}

LogLikelihoodSummary var_likelihood(const VarFit& fit) {
  const double dx = static_cast<double>(fit.target_dimension());
  const double average =
      -0.5 * (dx * std::log(2.0 * std::numbers::pi) + fit.log_generalized_variance + dx);
  const std::size_t d = fit.target_dimension();
  const std::size_t per_equation = static_cast<std::size_t>(fit.coefficients.cols());
  return {average, fit.effective_samples, d * per_equation + d * (d + 1) / 2};
}

OrderSelection select_order(const ContinuousSeries& x, const ContinuousSeries& y,
                            std::size_t k_max, Criterion criterion) {
  const ContinuousSeries* regressors[] = {&y};
  return select_order_by(k_max, x.size(), criterion, [&](std::size_t k, std::size_t first) {
    return var_likelihood(fit_var(x, regressors, k, first));
  });
}

} // namespace te
