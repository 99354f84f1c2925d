#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

namespace te {

/// Maximised average log-likelihood of a fitted model, in nats per
/// effective sample.
struct LogLikelihoodSummary {
  double average_log_likelihood = 0.0;
  std::size_t effective_samples = 0;
  std::size_t parameter_count = 0;
};

struct InformationCriteria {
  double aic = 0.0;
  double bic = 0.0;
};

enum class Criterion { aic, bic };

Criterion parse_criterion(std::string_view name);

/// aic = -2 N l + 2 m,  bic = -2 N l + m log N, with N the effective sample count.
InformationCriteria information_criteria(const LogLikelihoodSummary& summary);

struct OrderScore {
  std::size_t order = 0;
  LogLikelihoodSummary summary;
  InformationCriteria criteria;
};

struct OrderSelection {
  std::size_t order = 0;
  Criterion criterion = Criterion::bic;
  std::vector<OrderScore> scores;
};

/// Scores the full model for each k in {1..k_max} on the common target range
/// {k_max, ..., n-1} and returns the argmin of the chosen criterion (smallest
/// k on ties). `fit(k, first_target)` returns the model's likelihood summary.
OrderSelection select_order_by(
    std::size_t k_max, std::size_t length, Criterion criterion,
    const std::function<LogLikelihoodSummary(std::size_t, std::size_t)>& fit);

} // namespace te
