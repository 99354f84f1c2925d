#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "te/simulator.hpp"

namespace te {

/// Kolmogorov-Smirnov distance sup |F_n - F| between the empirical law of a
/// sorted sample and a continuous CDF. Tied sample values are handled as a
/// single jump of the ECDF.
double ks_distance(std::span<const double> sorted_sample, const std::function<double(double)>& cdf);

/// Number of worker threads for ensembles: TE_NUM_THREADS if set and
/// positive, otherwise the hardware concurrency.
unsigned default_thread_count();

struct ReferenceLaw {
  enum class Kind { central, noncentral };
  Kind kind = Kind::central;
  std::size_t dof = 0;
  double lambda = 0.0;

  double cdf(double x) const;
};

/// Monte-Carlo law of the scaled plug-in statistic 2 (n - k) T over an
/// ensemble of toy-chain realisations, compared with its asymptotic law.
struct EcdfReport {
  ToyChainParams params;
  std::size_t length = 0;
  std::size_t order = 0;
  std::size_t reps = 0;
  double true_te = 0.0;
  ReferenceLaw reference;
  std::vector<double> sorted_statistics;
  /// KS distance of the statistic's ECDF to the reference law.
  double ks_distance = 0.0;
  /// KS distance of the chi-squared(dof) p-values to Uniform(0, 1).
  double p_value_ks_distance = 0.0;
  double mean_te_hat = 0.0;
  double mean_abs_error = 0.0;
};

/// Simulates `reps` realisations (stream i for realisation i), so the report
/// does not depend on the thread count. Throws std::invalid_argument if
/// reps < 100. threads == 0 means default_thread_count().
EcdfReport calibration_ensemble(const ToyChainParams& params, std::size_t n, std::size_t k,
                                std::size_t reps, unsigned threads = 0);

std::string to_json(const EcdfReport& report);
/// Columns: statistic, ecdf, reference_cdf; one row per distinct statistic.
void write_csv(const EcdfReport& report, std::ostream& out);

} // namespace te
