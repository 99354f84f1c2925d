#include "te/calibration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "json.hpp"

#include "te/inference.hpp"
#include "te/plugin.hpp"

namespace te {

double ks_distance(std::span<const double> sorted_sample, const std::function<double(double)>& cdf) {
  const double n = static_cast<double>(sorted_sample.size());
  if (sorted_sample.empty()) throw std::invalid_argument("KS distance of an empty sample");
  double distance = 0.0;
  for (std::size_t i = 0; i < sorted_sample.size();) {
    std::size_t j = i;
    while (j < sorted_sample.size() && sorted_sample[j] == sorted_sample[i]) ++j;
    const double f = cdf(sorted_sample[i]);
    distance = std::max({distance, std::abs(f - static_cast<double>(i) / n),
                         std::abs(f - static_cast<double>(j) / n)});
    i = j;
  }
  return distance;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("TE_NUM_THREADS")) {
    const long requested = std::strtol(env, nullptr, 10);
    if (requested > 0) return static_cast<unsigned>(requested);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double ReferenceLaw::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  const int d = static_cast<int>(dof);
  return kind == Kind::central ? chi2_cdf(x, d) : noncentral_chi2_cdf(x, d, lambda);
}

EcdfReport calibration_ensemble(const ToyChainParams& params, std::size_t n, std::size_t k,
                                std::size_t reps, unsigned threads) {
  validate(params);
  if (reps < 100) throw std::invalid_argument("calibration needs at least 100 realisations");
  if (k < 1 || n <= k + 1) throw std::invalid_argument("calibration needs n > k + 1 and k >= 1");

  EcdfReport report;
  report.params = params;
  report.length = n;
  report.order = k;
  report.reps = reps;
  report.true_te = exact_te(toy_chain_kernel(params), k);
  report.reference.dof = dof(2, 2, k).dof;
  const double n_eff = static_cast<double>(n - k);
  if (params.theta == 0.0) {
    report.reference.kind = ReferenceLaw::Kind::central;
  } else {
    report.reference.kind = ReferenceLaw::Kind::noncentral;
    report.reference.lambda = 2.0 * n_eff * report.true_te;
  }

  std::vector<double> estimates(reps);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < reps; i = next++) {
      const auto [x, y] = simulate_toy(params, n, i);
      estimates[i] = plugin_te(count_cells(x, y, k));
    }
  };
  const unsigned workers =
      std::min<unsigned>(threads == 0 ? default_thread_count() : threads, static_cast<unsigned>(reps));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  double sum = 0.0;
  double abs_error = 0.0;
  for (double te : estimates) {
    sum += te;
    abs_error += std::abs(te - report.true_te);
  }
  report.mean_te_hat = sum / static_cast<double>(reps);
  report.mean_abs_error = abs_error / static_cast<double>(reps);

  report.sorted_statistics.resize(reps);
  std::transform(estimates.begin(), estimates.end(), report.sorted_statistics.begin(),
                 [&](double te) { return 2.0 * n_eff * te; });
  std::sort(report.sorted_statistics.begin(), report.sorted_statistics.end());
  report.ks_distance =
      ks_distance(report.sorted_statistics, [&](double v) { return report.reference.cdf(v); });

  const int d = static_cast<int>(report.reference.dof);
  std::vector<double> p_values(reps);
  std::transform(report.sorted_statistics.begin(), report.sorted_statistics.end(), p_values.begin(),
                 [&](double s) { return chi2_sf(s, d); });
  std::sort(p_values.begin(), p_values.end());
  report.p_value_ks_distance =
      ks_distance(p_values, [](double p) { return std::clamp(p, 0.0, 1.0); });
  return report;
}

std::string to_json(const EcdfReport& report) {
  nlohmann::json j;
  j["theta"] = report.params.theta;
  j["phi"] = report.params.phi;
  j["seed"] = report.params.seed;
  j["n"] = report.length;
  j["k"] = report.order;
  j["reps"] = report.reps;
  j["true_te"] = report.true_te;
  j["reference"] = {
      {"kind", report.reference.kind == ReferenceLaw::Kind::central ? "chi2" : "noncentral_chi2"},
      {"dof", report.reference.dof},
      {"lambda", report.reference.lambda}};
  j["ks_distance"] = report.ks_distance;
  j["p_value_ks_distance"] = report.p_value_ks_distance;
  j["mean_te_hat"] = report.mean_te_hat;
  j["mean_abs_error"] = report.mean_abs_error;
  j["sorted_statistics"] = report.sorted_statistics;
  return j.dump(2);
}

void write_csv(const EcdfReport& report, std::ostream& out) {
  const auto& stats = report.sorted_statistics;
  const double total = static_cast<double>(stats.size());
  out.precision(17);
  out << "statistic,ecdf,reference_cdf\n";
  for (std::size_t i = 0; i < stats.size();) {
    std::size_t j = i;
    while (j < stats.size() && stats[j] == stats[i]) ++j;
    out << stats[i] << ',' << static_cast<double>(j) / total << ',' << report.reference.cdf(stats[i])
        << '\n';
    i = j;
  }
}

} // namespace te
