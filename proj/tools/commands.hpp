#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace te::cli {

enum class Model { automatic, discrete, var };
enum class Units { nats, bits };
enum class Format { json, csv };

struct RunConfig {
  std::string subcommand;
  std::string input = "-";
  std::string output = "-";
  char delimiter = ',';
  bool header = false;
  std::vector<std::string> x_columns{"0"};
  std::vector<std::string> y_columns{"1"};
  std::vector<std::string> z_columns;
  Model model = Model::automatic;
  std::size_t order = 1;
  std::size_t k_max = 1;
  std::string criterion = "bic";
  std::optional<int> alphabet_x;
  std::optional<int> alphabet_y;
  std::optional<int> alphabet_z;
  std::optional<int> bins;
  bool demean = false;
  double alpha = 0.05;
  Units units = Units::nats;
  Format format = Format::json;
  double theta = 0.0;
  double phi = 0.0;
  std::size_t length = 1000;
  std::size_t reps = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

/// Entry point shared by the executable and the tests. Results go to `out`
/// (or the --output file), diagnostics to `err`. Returns the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run_estimate(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_test(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_select_order(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_calibrate(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace te::cli
