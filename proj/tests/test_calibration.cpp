#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "te/calibration.hpp"
#include "te/inference.hpp"
#include "te/plugin.hpp"
#include "te/simulator.hpp"

namespace te {
namespace {

TEST(KsDistance, UniformSample) {
  const std::vector<double> sample{0.1, 0.4, 0.7};
  auto uniform = [](double v) { return std::clamp(v, 0.0, 1.0); };
  // Steps: |1/3 - 0.1|, |0.4 - 1/3|, |2/3 - 0.4|, |0.7 - 2/3|, |1 - 0.7|.
  EXPECT_NEAR(ks_distance(sample, uniform), 0.3, 1e-15);
}

TEST(KsDistance, TiesFormOneJump) {
  const std::vector<double> sample{0.5, 0.5, 0.5, 0.5};
  auto uniform = [](double v) { return std::clamp(v, 0.0, 1.0); };
  EXPECT_NEAR(ks_distance(sample, uniform), 0.5, 1e-15);
  const std::vector<double> mixed{0.2, 0.2, 0.9, 0.9};
  EXPECT_NEAR(ks_distance(mixed, uniform), 0.4, 1e-15);
}

TEST(ReferenceLaw, Cdf) {
  ReferenceLaw central{ReferenceLaw::Kind::central, 2, 0.0};
  EXPECT_NEAR(central.cdf(5.991464547107979), 0.95, 1e-12);
  EXPECT_EQ(central.cdf(-1.0), 0.0);
  ReferenceLaw shifted{ReferenceLaw::Kind::noncentral, 1, 10.0};
  EXPECT_NEAR(shifted.cdf(4.0), noncentral_chi2_cdf(4.0, 1, 10.0), 1e-15);
}

TEST(Calibration, ReportFields) {
  const auto report = calibration_ensemble({0.4, 0.0, 3}, 256, 1, 200, 1);
  EXPECT_EQ(report.reps, 200u);
  EXPECT_EQ(report.sorted_statistics.size(), 200u);
  EXPECT_TRUE(std::is_sorted(report.sorted_statistics.begin(), report.sorted_statistics.end()));
  EXPECT_NEAR(report.true_te, toy_te_closed_form(0.4), 1e-10);
  EXPECT_EQ(report.reference.kind, ReferenceLaw::Kind::noncentral);
  EXPECT_EQ(report.reference.dof, 2u);
  EXPECT_NEAR(report.reference.lambda, 2.0 * 255 * report.true_te, 1e-9);

  const auto null = calibration_ensemble({0.0, 0.5, 3}, 256, 2, 100, 1);
  EXPECT_EQ(null.reference.kind, ReferenceLaw::Kind::central);
  EXPECT_EQ(null.reference.dof, 12u);
  EXPECT_NEAR(null.true_te, 0.0, 1e-15);
}

TEST(Calibration, RealisationsMatchDirectEstimates) {
  const ToyChainParams params{0.3, 0.2, 11};
  const auto report = calibration_ensemble(params, 300, 1, 100, 1);
  std::vector<double> direct;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto [x, y] = simulate_toy(params, 300, i);
    direct.push_back(2.0 * 299 * plugin_te(x, y, 1));
  }
  std::sort(direct.begin(), direct.end());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    EXPECT_DOUBLE_EQ(report.sorted_statistics[i], direct[i]);
  }
}

TEST(Calibration, IndependentOfThreadCount) {
  const auto one = calibration_ensemble({0.2, 0.3, 5}, 200, 1, 150, 1);
  const auto three = calibration_ensemble({0.2, 0.3, 5}, 200, 1, 150, 3);
  EXPECT_EQ(one.sorted_statistics, three.sorted_statistics);
  EXPECT_EQ(one.ks_distance, three.ks_distance);
  EXPECT_EQ(one.mean_te_hat, three.mean_te_hat);
}

TEST(Calibration, RejectsSmallEnsembles) {
  EXPECT_THROW(calibration_ensemble({0.2, 0.0, 0}, 100, 1, 99, 1), std::invalid_argument);
  EXPECT_THROW(calibration_ensemble({1.2, 0.0, 0}, 100, 1, 100, 1), std::invalid_argument);
}

TEST(Calibration, JsonAndCsv) {
  const auto report = calibration_ensemble({0.0, 0.0, 1}, 128, 1, 100, 1);
  const auto parsed = nlohmann::json::parse(to_json(report));
  EXPECT_EQ(parsed.at("reps").get<int>(), 100);
  EXPECT_EQ(parsed.at("n").get<int>(), 128);
  EXPECT_NEAR(parsed.at("ks_distance").get<double>(), report.ks_distance, 1e-15);

  std::ostringstream csv;
  write_csv(report, csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "statistic,ecdf,reference_cdf");
  double last_ecdf = 0.0;
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string a, b, c;
    std::getline(fields, a, ',');
    std::getline(fields, b, ',');
    std::getline(fields, c, ',');
    const double ecdf = std::stod(b);
    EXPECT_GT(ecdf, last_ecdf);
    last_ecdf = ecdf;
    ++rows;
  }
  EXPECT_DOUBLE_EQ(last_ecdf, 1.0);
  EXPECT_LE(rows, 100u);
}

TEST(Calibration, ConfidenceIntervalCoverage) {
  // 1000 realisations at theta = 0.4, n = 2048: the nominal 95% interval
  // should cover the true TE in 95 +- 2.5 % of runs.
  const ToyChainParams params{0.4, 0.0, 2024};
  const double truth = toy_te_closed_form(0.4);
  int covered = 0;
  const int runs = 1000;
  for (int i = 0; i < runs; ++i) {
    const auto [x, y] = simulate_toy(params, 2048, static_cast<std::uint64_t>(i));
    const auto result = te_test(plugin_te(x, y, 1), 2047, 2, 0.05);
    covered += result.ci_lower <= truth && truth <= result.ci_upper;
  }
  EXPECT_NEAR(covered / static_cast<double>(runs), 0.95, 0.025);
}

} // namespace
} // namespace te
