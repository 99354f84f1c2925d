#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "te/likelihood.hpp"
#include "te/plugin.hpp"
#include "te/rng.hpp"
#include "te/series.hpp"
#include "te/simulator.hpp"

namespace te {
namespace {

std::vector<int> to_vector(std::span<const Symbol> s) { return {s.begin(), s.end()}; }

TEST(Embed, WindowsMatchHandTally) {
  const CategoricalSeries x({0, 1, 0}, 2);
  const CategoricalSeries y({1, 1, 0}, 2);
  const auto e = embed(x, y, 1);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e.target(0)[0], 1);
  EXPECT_EQ(to_vector(e.x_history(0)), std::vector<int>{0});
  EXPECT_EQ(to_vector(e.y_history(0)), std::vector<int>{1});
  EXPECT_EQ(e.target(1)[0], 0);
  EXPECT_EQ(to_vector(e.x_history(1)), std::vector<int>{1});
  EXPECT_EQ(to_vector(e.y_history(1)), std::vector<int>{1});
}

TEST(Embed, CountIsLengthMinusOrder) {
  const CategoricalSeries x({0, 1, 1, 0, 1}, 2);
  EXPECT_EQ(embed(x, x, 2).size(), 3u);
  for (std::size_t k = 1; k < 5; ++k) EXPECT_EQ(embed(x, x, k).size(), 5 - k);
}

TEST(Embed, HistoriesAreOldestFirst) {
  const CategoricalSeries x({0, 1, 2, 3, 4}, 5);
  const CategoricalSeries y({4, 3, 2, 1, 0}, 5);
  const auto e = embed(x, y, 3);
  EXPECT_EQ(e.target(0)[0], 3);
  EXPECT_EQ(to_vector(e.x_history(0)), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(to_vector(e.y_history(1)), (std::vector<int>{3, 2, 1}));
}

TEST(Embed, Errors) {
  const CategoricalSeries x({0, 1, 0}, 2);
  const CategoricalSeries shorter({0, 1}, 2);
  EXPECT_THROW(embed(x, x, 3), std::invalid_argument);
  EXPECT_THROW(embed(x, x, 0), std::invalid_argument);
  EXPECT_THROW(embed(x, shorter, 1), std::invalid_argument);
  EXPECT_THROW(embed(x, x, 2, 1), std::invalid_argument);
}

TEST(Embed, IsPure) {
  const ContinuousSeries x({0.5, 1.5, -2.0, 3.0, 4.0, -1.0}, 2);
  const ContinuousSeries y({1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, 2);
  const auto a = embed(x, y, 1);
  const auto b = embed(x, y, 1);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(std::ranges::equal(a.target(i), b.target(i)));
    EXPECT_TRUE(std::ranges::equal(a.x_history(i), b.x_history(i)));
    EXPECT_TRUE(std::ranges::equal(a.y_history(i), b.y_history(i)));
  }
  EXPECT_EQ(a.target(1)[1], -1.0);
  EXPECT_EQ(a.y_history(1)[0], 3.0);
}

TEST(Series, Validation) {
  EXPECT_THROW(CategoricalSeries({0, 2}, 2), std::invalid_argument);
  EXPECT_THROW(CategoricalSeries({-1}, 2), std::invalid_argument);
  EXPECT_THROW(CategoricalSeries({}, 2), std::invalid_argument);
  EXPECT_THROW(ContinuousSeries({1.0, NAN}, 1), std::invalid_argument);
  EXPECT_THROW(ContinuousSeries({1.0, 2.0, 3.0}, 2), std::invalid_argument);
  EXPECT_EQ(CategoricalSeries::with_inferred_alphabet({0, 0, 0}).alphabet_size(), 2);
  EXPECT_EQ(CategoricalSeries::with_inferred_alphabet({0, 4, 1}).alphabet_size(), 5);
}

TEST(InformationCriteria, Examples) {
  const auto a = information_criteria({0.0, 100, 3});
  EXPECT_DOUBLE_EQ(a.aic, 6.0);
  EXPECT_NEAR(a.bic, 3.0 * std::log(100.0), 1e-12);
  EXPECT_NEAR(a.bic, 13.8155, 1e-4);
  const auto b = information_criteria({-1.0, 10, 0});
  EXPECT_DOUBLE_EQ(b.aic, 20.0);
  EXPECT_DOUBLE_EQ(b.bic, 20.0);
  EXPECT_THROW(information_criteria({0.0, 0, 1}), std::invalid_argument);
}

TEST(SelectOrder, ToyChainIsFirstOrder) {
  const auto [x, y] = simulate_toy({0.4, 0.6, 11}, 4096);
  const auto selection = select_order(x, y, 3, Criterion::bic);
  EXPECT_EQ(selection.order, 1u);
  ASSERT_EQ(selection.scores.size(), 3u);
  EXPECT_LT(selection.scores[0].criteria.bic, selection.scores[1].criteria.bic);
  EXPECT_LT(selection.scores[0].criteria.bic, selection.scores[2].criteria.bic);
  // Every candidate is scored on the same targets {k_max..n-1}.
  for (const auto& s : selection.scores) EXPECT_EQ(s.summary.effective_samples, 4096u - 3u);
}

TEST(SelectOrder, IndependentNoisePicksSmallestOrder) {
  StreamRng rng(3, 0);
  std::vector<Symbol> xs(4096), ys(4096);
  for (auto& v : xs) v = rng.bernoulli(0.5);
  for (auto& v : ys) v = rng.bernoulli(0.5);
  const CategoricalSeries x(xs, 2), y(ys, 2);
  EXPECT_EQ(select_order(x, y, 3, Criterion::bic).order, 1u);
}

TEST(SelectOrder, RejectsBadKMax) {
  const auto [x, y] = simulate_toy({0.4, 0.6, 1}, 50);
  EXPECT_THROW(select_order(x, y, 0, Criterion::bic), std::invalid_argument);
  EXPECT_THROW(select_order(x, y, 50, Criterion::aic), std::invalid_argument);
  EXPECT_THROW(parse_criterion("hqic"), std::invalid_argument);
}

} // namespace
} // namespace te
