#include "te/likelihood.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace te {

Criterion parse_criterion(std::string_view name) {
  if (name == "aic") return Criterion::aic;
  if (name == "bic") return Criterion::bic;
  throw std::invalid_argument("unknown information criterion '" + std::string(name) + "'");
}

InformationCriteria information_criteria(const LogLikelihoodSummary& summary) {
  if (summary.effective_samples < 1) {
    throw std::invalid_argument("information criteria need at least one effective sample");
  }
  const double n = static_cast<double>(summary.effective_samples);
  const double m = static_cast<double>(summary.parameter_count);
  const double deviance = -2.0 * n * summary.average_log_likelihood;
  return {deviance + 2.0 * m, deviance + m * std::log(n)};
}

OrderSelection select_order_by(
    std::size_t k_max, std::size_t length, Criterion criterion,
    const std::function<LogLikelihoodSummary(std::size_t, std::size_t)>& fit) {
  if (k_max < 1) {
    throw std::invalid_argument("k_max must be at least 1");
  }
  if (k_max >= length) {
    throw std::invalid_argument("k_max must be below the series length");
  }
  OrderSelection selection;
  selection.criterion = criterion;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= k_max; ++k) {
    OrderScore score{k, fit(k, k_max), {}};
    score.criteria = information_criteria(score.summary);
    const double value = criterion == Criterion::aic ? score.criteria.aic : score.criteria.bic;
    if (value < best) {
      best = value;
      selection.order = k;
    }
    selection.scores.push_back(score);
  }
  return selection;
}

} // namespace te
