#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "ingest.hpp"
#include "json.hpp"
#include "te/plugin.hpp"
#include "te/simulator.hpp"

namespace te::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int status = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "transfer-entropy");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("te_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream(path) << content;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST(Ingest, ReadsHeaderAndColumns) {
  std::istringstream in("a,b\n1,2.5\n3,-4\n");
  const auto table = read_table(in, {',', true});
  ASSERT_EQ(table.names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(table.rows(), 2u);
  EXPECT_EQ(table.columns[1][1], -4.0);
  EXPECT_EQ(resolve_column(table, "b"), 1u);
  EXPECT_EQ(resolve_column(table, "0"), 0u);
  EXPECT_THROW(resolve_column(table, "c"), std::runtime_error);
  EXPECT_THROW(resolve_column(table, "5"), std::runtime_error);
  EXPECT_TRUE(all_integer(table, {0}));
  EXPECT_FALSE(all_integer(table, {1}));
}

TEST(Ingest, ReportsBadLines) {
  std::istringstream ragged("1,2\n3\n");
  try {
    read_table(ragged, {});
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  std::istringstream text("1;2\n3;x\n");
  try {
    read_table(text, {';', false});
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  std::istringstream empty("");
  EXPECT_THROW(read_table(empty, {}), std::runtime_error);
}

TEST(Ingest, AlphabetViolationNamesRowAndColumn) {
  try {
    to_categorical({0, 1, 2, 3, 1}, 3, "x");
    FAIL();
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("row 4"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column x"), std::string::npos) << msg;
  }
  EXPECT_THROW(to_categorical({0, 1.5}, std::nullopt, "y"), std::runtime_error);
  EXPECT_THROW(to_categorical({0, -1}, std::nullopt, "y"), std::runtime_error);
  EXPECT_EQ(to_categorical({0, 0, 0}, std::nullopt, "y").alphabet_size(), 2);
  EXPECT_EQ(to_categorical({0, 4, 1}, std::nullopt, "y").alphabet_size(), 5);
}

TEST(Ingest, Quantize) {
  const auto s = quantize({0.0, 0.1, 0.5, 0.99, 1.0}, 4);
  EXPECT_EQ(s.alphabet_size(), 4);
  EXPECT_EQ(std::vector<Symbol>(s.values().begin(), s.values().end()),
            (std::vector<Symbol>{0, 0, 2, 3, 3}));
}

TEST_F(CliTest, SimulateIsReproducible) {
  const auto a = run({"simulate", "--theta", "0.4", "--phi", "0.1", "-n", "300", "--seed", "9"});
  const auto b = run({"simulate", "--theta", "0.4", "--phi", "0.1", "-n", "300", "--seed", "9"});
  const auto c = run({"simulate", "--theta", "0.4", "--phi", "0.1", "-n", "300", "--seed", "10"});
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(a.out.substr(0, 4), "x,y\n");
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 301);

  ASSERT_EQ(run({"simulate", "--theta", "0.4", "-n", "300", "--seed", "9", "-o", path("s.csv")}).status, 0);
  std::ifstream file(path("s.csv"));
  std::stringstream content;
  content << file.rdbuf();
  const auto [x, y] = simulate_toy({0.4, 0.0, 9}, 300);
  EXPECT_EQ(content.str().size(), 4 + 300 * 4u);
}

TEST_F(CliTest, EstimateMatchesLibrary) {
  const auto data = run({"simulate", "--theta", "0.4", "-n", "4096", "--seed", "3"}).out;
  const auto file = write("chain.csv", data);
  const auto r = run({"estimate", file, "--header", "--x", "x", "--y", "y"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto record = json::parse(r.out);
  const auto [x, y] = simulate_toy({0.4, 0.0, 3}, 4096);
  EXPECT_DOUBLE_EQ(record.at("te_hat").get<double>(), plugin_te(x, y, 1));
  EXPECT_EQ(record.at("model"), "discrete");
  EXPECT_EQ(record.at("dof"), 2);
  EXPECT_EQ(record.at("n_eff"), 4095);
  EXPECT_EQ(record.at("units"), "nats");
  EXPECT_FALSE(record.at("small_sample_warning").get<bool>());

  const auto bits = json::parse(run({"estimate", file, "--header", "--units", "bits"}).out);
  EXPECT_NEAR(bits.at("te_hat").get<double>(), plugin_te(x, y, 1) / std::log(2.0), 1e-15);

  const auto again = run({"estimate", file, "--header", "--x", "x", "--y", "y"});
  EXPECT_EQ(again.out, r.out);
}

TEST_F(CliTest, TestReportsInterval) {
  const auto file = write("chain.csv", run({"simulate", "--theta", "0.4", "-n", "4096", "--seed", "7"}).out);
  const auto r = run({"test", file, "--header", "--alpha", "0.1"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto record = json::parse(r.out);
  EXPECT_LT(record.at("p_value").get<double>(), 1e-10);
  EXPECT_LT(record.at("ci_lower").get<double>(), record.at("te_hat").get<double>());
  EXPECT_GT(record.at("ci_upper").get<double>(), record.at("te_hat").get<double>());
  EXPECT_DOUBLE_EQ(record.at("confidence").get<double>(), 0.9);

  const auto csv = run({"test", file, "--header", "--format", "csv"});
  ASSERT_EQ(csv.status, 0) << csv.err;
  EXPECT_NE(csv.out.find("p_value"), std::string::npos);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 2);
}

TEST_F(CliTest, SmallSampleWarning) {
  const auto file = write("tiny.csv", "0,1\n1,0\n2,1\n0,2\n1,1\n2,0\n");
  const auto r = run({"estimate", file, "-k", "2"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out).at("small_sample_warning").get<bool>());
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST_F(CliTest, VarModelAndConditioning) {
  std::ostringstream data;
  data << "x,y,z\n";
  double x = 0.0, y = 0.0;
  std::uint64_t state = 12345;
  auto noise = [&] {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
  };
  for (int t = 0; t < 2000; ++t) {
    const double nx = 0.3 * x + 0.6 * y + noise();
    y = noise();
    x = nx;
    data << x << ',' << y << ',' << noise() << '\n';
  }
  const auto file = write("var.csv", data.str());
  const auto r = run({"test", file, "--header", "--model", "var", "--x", "x", "--y", "y"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto record = json::parse(r.out);
  EXPECT_EQ(record.at("model"), "var");
  EXPECT_GT(record.at("te_hat").get<double>(), 0.1);
  const auto cond = run({"estimate", file, "--header", "--x", "x", "--y", "y", "--z", "z"});
  ASSERT_EQ(cond.status, 0) << cond.err;
  EXPECT_EQ(json::parse(cond.out).at("model"), "var");
}

TEST_F(CliTest, SelectOrder) {
  const auto file = write("chain.csv", run({"simulate", "--theta", "0.5", "-n", "5000", "--seed", "1"}).out);
  const auto r = run({"select-order", file, "--header", "--k-max", "3", "--criterion", "aic"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto record = json::parse(r.out);
  EXPECT_EQ(record.at("k"), 1);
  EXPECT_EQ(record.at("criterion"), "aic");
  ASSERT_EQ(record.at("scores").size(), 3u);
  for (const auto& s : record.at("scores")) EXPECT_EQ(s.at("n_eff"), 4997);
}

TEST_F(CliTest, Calibrate) {
  const auto r = run({"calibrate", "--theta", "0.0", "-n", "200", "--reps", "100", "--seed", "4",
                      "--threads", "2"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto record = json::parse(r.out);
  EXPECT_EQ(record.at("reps"), 100);
  EXPECT_EQ(record.at("reference").at("kind"), "chi2");
  const auto csv = run({"calibrate", "-n", "200", "--reps", "100", "--format", "csv"});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "statistic,ecdf,reference_cdf");
}

TEST_F(CliTest, ErrorsExitNonZero) {
  const auto file = write("bad.csv", "0,1\n1,0\n5,1\n0,1\n");
  const auto r = run({"estimate", file, "--alphabet-x", "3"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("row 3"), std::string::npos) << r.err;
  EXPECT_NE(run({"estimate", path("missing.csv")}).status, 0);
  EXPECT_NE(run({"frobnicate"}).status, 0);
  EXPECT_NE(run({"simulate", "--theta", "1.5"}).status, 0);
  EXPECT_NE(run({"select-order", file}).status, 0);
  EXPECT_NE(run({"calibrate", "--reps", "10"}).status, 0);
}

TEST_F(CliTest, ConfigFile) {
  const auto file = write("chain.csv", run({"simulate", "--theta", "0.4", "-n", "1000", "--seed", "2"}).out);
  const auto config = write("run.toml", "[estimate]\nheader = true\nunits = \"bits\"\norder = 2\n");
  const auto r = run({"--config", config, "estimate", file});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto record = json::parse(r.out);
  EXPECT_EQ(record.at("units"), "bits");
  EXPECT_EQ(record.at("k"), 2);
}

} // namespace
} // namespace te::cli
