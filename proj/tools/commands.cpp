#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "ingest.hpp"
#include "te/calibration.hpp"
#include "te/inference.hpp"
#include "te/plugin.hpp"
#include "te/simulator.hpp"
#include "te/var.hpp"

namespace te::cli {

namespace {

using nlohmann::json;

// Everything the estimate and test subcommands report.
struct Estimate {
  std::string model;
  std::size_t order = 0;
  double te_hat = 0.0;
  std::size_t dof = 0;
  std::size_t n_eff = 0;
  bool small_sample_warning = false;
};

struct Inputs {
  Table table;
  std::vector<std::size_t> x, y, z;
};

Inputs load(const RunConfig& config) {
  Inputs in{read_table(config.input, {config.delimiter, config.header}), {}, {}, {}};
  for (const auto& c : config.x_columns) in.x.push_back(resolve_column(in.table, c));
  for (const auto& c : config.y_columns) in.y.push_back(resolve_column(in.table, c));
  for (const auto& c : config.z_columns) in.z.push_back(resolve_column(in.table, c));
  if (in.x.empty() || in.y.empty()) throw std::runtime_error("x and y columns are required");
  return in;
}

std::vector<std::size_t> all_columns(const Inputs& in) {
  std::vector<std::size_t> cols = in.x;
  cols.insert(cols.end(), in.y.begin(), in.y.end());
  cols.insert(cols.end(), in.z.begin(), in.z.end());
  return cols;
}

Model resolve_model(const RunConfig& config, const Inputs& in) {
  if (config.model != Model::automatic) return config.model;
  return all_integer(in.table, all_columns(in)) ? Model::discrete : Model::var;
}

CategoricalSeries discrete_column(const RunConfig& config, const Inputs& in, std::size_t column,
                                  std::optional<int> alphabet, const std::string& label,
                                  std::ostream& err) {
  const auto& values = in.table.columns[column];
  if (config.bins && !all_integer(in.table, {column})) {
    err << "warning: column " << label << " binned into " << *config.bins
        << " equal-width bins; estimates depend on the binning\n";
    return quantize(values, *config.bins);
  }
  return to_categorical(values, alphabet, label);
}

void check_length(const Inputs& in, std::size_t k) {
  if (in.table.rows() < k + 2) {
    throw std::runtime_error("series of length " + std::to_string(in.table.rows()) +
                             " is too short for order " + std::to_string(k) + " (need k + 2)");
  }
}

std::string label_of(const Inputs& in, std::size_t column) {
  return in.table.names.empty() ? std::to_string(column) : in.table.names[column];
}

Estimate estimate(const RunConfig& config, std::ostream& err) {
  const Inputs in = load(config);
  check_length(in, config.order);
  const std::size_t k = config.order;
  Estimate result;
  result.order = k;

  if (resolve_model(config, in) == Model::discrete) {
    if (in.x.size() != 1 || in.y.size() != 1 || in.z.size() > 1) {
      throw std::runtime_error("discrete model takes exactly one column each for x, y (and z)");
    }
    const auto x = discrete_column(config, in, in.x[0], config.alphabet_x, label_of(in, in.x[0]), err);
    const auto y = discrete_column(config, in, in.y[0], config.alphabet_y, label_of(in, in.y[0]), err);
    std::optional<CategoricalSeries> z;
    if (!in.z.empty()) {
      z = discrete_column(config, in, in.z[0], config.alphabet_z, label_of(in, in.z[0]), err);
    }
    const PluginDistribution dist = z ? count_cells(x, y, *z, k) : count_cells(x, y, k);
    result.model = "discrete";
    result.te_hat = plugin_te(dist);
    result.n_eff = dist.total();
    result.dof = dof(x.alphabet_size(), y.alphabet_size(), k,
                     z ? std::optional<int>(z->alphabet_size()) : std::nullopt)
                     .dof;
    result.small_sample_warning =
        static_cast<double>(dist.observed_contexts()) < dist.possible_contexts();
    if (result.small_sample_warning) {
      err << "warning: " << dist.observed_contexts() << " of " << dist.possible_contexts()
          << " history contexts observed; the chi-squared approximation may be poor\n";
    }
  } else {
    const auto x = to_continuous(in.table, in.x, config.demean);
    const auto y = to_continuous(in.table, in.y, config.demean);
    const GrangerResult g =
        in.z.empty() ? var_te(x, y, k)
                     : var_conditional_te(x, y, to_continuous(in.table, in.z, config.demean), k);
    result.model = "var";
    result.te_hat = g.te_hat;
    result.n_eff = g.effective_samples;
    result.dof = g.dof;
  }
  return result;
}

double unit_scale(Units units) { return units == Units::bits ? 1.0 / std::numbers::ln2 : 1.0; }
const char* unit_name(Units units) { return units == Units::bits ? "bits" : "nats"; }

// Writes to --output when given, otherwise to `out`.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

private:
  std::ofstream file_;
  std::ostream* stream_;
};

void emit(const json& record, const RunConfig& config, std::ostream& out) {
  Sink sink(config.output, out);
  if (config.format == Format::json) {
    *sink << record.dump(2) << '\n';
    return;
  }
  std::ostringstream header;
  std::ostringstream values;
  values.precision(17);
  bool first = true;
  for (const auto& [key, value] : record.items()) {
    if (value.is_structured()) continue;
    header << (first ? "" : ",") << key;
    values << (first ? "" : ",");
    if (value.is_string()) {
      values << value.get<std::string>();
    } else if (value.is_boolean()) {
      values << (value.get<bool>() ? "true" : "false");
    } else if (value.is_number_float()) {
      values << value.get<double>();
    } else {
      values << value.dump();
    }
    first = false;
  }
  *sink << header.str() << '\n' << values.str() << '\n';
}

json base_record(const Estimate& e, const RunConfig& config) {
  const double scale = unit_scale(config.units);
  const double statistic = 2.0 * static_cast<double>(e.n_eff) * e.te_hat;
  return json{{"model", e.model},
              {"k", e.order},
              {"units", unit_name(config.units)},
              {"te_hat", e.te_hat * scale},
              {"statistic", statistic},
              {"dof", e.dof},
              {"n_eff", e.n_eff},
              {"small_sample_warning", e.small_sample_warning}};
}

} // namespace

int run_estimate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  emit(base_record(estimate(config, err), config), config, out);
  return 0;
}

int run_test(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Estimate e = estimate(config, err);
  const TeTestResult t = te_test(e.te_hat, e.n_eff, e.dof, config.alpha);
  const double scale = unit_scale(config.units);
  json record = base_record(e, config);
  record["statistic"] = t.statistic;
  record["p_value"] = t.p_value;
  record["ci_lower"] = t.ci_lower * scale;
  record["ci_upper"] = t.ci_upper * scale;
  record["confidence"] = t.confidence;
  emit(record, config, out);
  return 0;
}

int run_select_order(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Inputs in = load(config);
  const Criterion criterion = parse_criterion(config.criterion);
  if (config.k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  check_length(in, config.k_max);
  OrderSelection selection;
  std::string model;
  if (resolve_model(config, in) == Model::discrete) {
    if (in.x.size() != 1 || in.y.size() != 1) {
      throw std::runtime_error("discrete model takes exactly one column each for x and y");
    }
    const auto x = discrete_column(config, in, in.x[0], config.alphabet_x, label_of(in, in.x[0]), err);
    const auto y = discrete_column(config, in, in.y[0], config.alphabet_y, label_of(in, in.y[0]), err);
    selection = select_order(x, y, config.k_max, criterion);
    model = "discrete";
  } else {
    selection = select_order(to_continuous(in.table, in.x, config.demean),
                             to_continuous(in.table, in.y, config.demean), config.k_max, criterion);
    model = "var";
  }
  json scores = json::array();
  for (const auto& s : selection.scores) {
    scores.push_back({{"k", s.order},
                      {"average_log_likelihood", s.summary.average_log_likelihood},
                      {"n_eff", s.summary.effective_samples},
                      {"parameters", s.summary.parameter_count},
                      {"aic", s.criteria.aic},
                      {"bic", s.criteria.bic}});
  }
  json record{{"model", model}, {"criterion", config.criterion}, {"k", selection.order},
              {"k_max", config.k_max}, {"scores", scores}};
  emit(record, config, out);
  return 0;
}

int run_simulate(const RunConfig& config, std::ostream& out, std::ostream&) {
  const ToyChainParams params{config.theta, config.phi, config.seed};
  const auto [x, y] = simulate_toy(params, config.length);
  Sink sink(config.output, out);
  std::ostringstream buffer;
  buffer << "x,y\n";
  for (std::size_t t = 0; t < x.size(); ++t) buffer << x[t] << ',' << y[t] << '\n';
  *sink << buffer.str();
  return 0;
}

int run_calibrate(const RunConfig& config, std::ostream& out, std::ostream&) {
  const ToyChainParams params{config.theta, config.phi, config.seed};
  const EcdfReport report =
      calibration_ensemble(params, config.length, config.order, config.reps, config.threads);
  Sink sink(config.output, out);
  if (config.format == Format::json) {
    *sink << to_json(report) << '\n';
  } else {
    write_csv(report, *sink);
  }
  return 0;
}

namespace {

void add_data_options(CLI::App& cmd, RunConfig& c) {
  cmd.add_option("input", c.input, "Delimited numeric input file ('-' for stdin)");
  cmd.add_option("--delimiter", c.delimiter, "Field delimiter");
  cmd.add_flag("--header", c.header, "First row holds column names");
  cmd.add_option("--x", c.x_columns, "Target column(s): index or name")->delimiter(',');
  cmd.add_option("--y", c.y_columns, "Source column(s): index or name")->delimiter(',');
  cmd.add_option("--z", c.z_columns, "Conditioning column(s): index or name")->delimiter(',');
  const std::map<std::string, Model> models{
      {"auto", Model::automatic}, {"discrete", Model::discrete}, {"var", Model::var}};
  cmd.add_option("--model", c.model, "discrete | var | auto")
      ->transform(CLI::CheckedTransformer(models, CLI::ignore_case));
  cmd.add_option("--alphabet-x", c.alphabet_x, "Alphabet size of x")->check(CLI::PositiveNumber);
  cmd.add_option("--alphabet-y", c.alphabet_y, "Alphabet size of y")->check(CLI::PositiveNumber);
  cmd.add_option("--alphabet-z", c.alphabet_z, "Alphabet size of z")->check(CLI::PositiveNumber);
  cmd.add_option("--bins", c.bins, "Equal-width bins for real-valued columns (discrete model)")
      ->check(CLI::Range(2, 1 << 16));
  cmd.add_flag("--demean", c.demean, "Remove column means before VAR fitting");
}

void add_output_options(CLI::App& cmd, RunConfig& c) {
  cmd.add_option("--output,-o", c.output, "Output file ('-' for stdout)");
  const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}};
  cmd.add_option("--format", c.format, "json | csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
}

void add_estimate_options(CLI::App& cmd, RunConfig& c) {
  add_data_options(cmd, c);
  add_output_options(cmd, c);
  cmd.add_option("-k,--order", c.order, "Number of lags")->check(CLI::PositiveNumber);
  const std::map<std::string, Units> units{{"nats", Units::nats}, {"bits", Units::bits}};
  cmd.add_option("--units", c.units, "nats | bits")
      ->transform(CLI::CheckedTransformer(units, CLI::ignore_case));
}

void add_chain_options(CLI::App& cmd, RunConfig& c) {
  cmd.add_option("--theta", c.theta, "Coupling y -> x, in [0, 1)");
  cmd.add_option("--phi", c.phi, "Coupling x -> y, in [0, 1)");
  cmd.add_option("-n", c.length, "Sequence length");
  cmd.add_option("--seed", c.seed, "RNG seed");
  add_output_options(cmd, c);
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transfer entropy estimation and inference"};
  app.set_config("--config", "", "TOML/INI configuration file");
  app.require_subcommand(1);
  RunConfig config;

  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate transfer entropy y -> x");
  add_estimate_options(*estimate_cmd, config);

  auto* test_cmd = app.add_subcommand("test", "Estimate, test zero TE and report a CI");
  add_estimate_options(*test_cmd, config);
  test_cmd->add_option("--alpha", config.alpha, "Significance level (CI has level 1 - alpha)")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12));

  auto* select_cmd = app.add_subcommand("select-order", "Choose k by AIC or BIC");
  add_data_options(*select_cmd, config);
  add_output_options(*select_cmd, config);
  select_cmd->add_option("--k-max", config.k_max, "Largest order considered")->required();
  select_cmd->add_option("--criterion", config.criterion, "aic | bic")
      ->check(CLI::IsMember({"aic", "bic"}));

  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate the coupled binary chain");
  add_chain_options(*simulate_cmd, config);

  auto* calibrate_cmd =
      app.add_subcommand("calibrate", "Monte-Carlo law of the plug-in statistic vs chi-squared");
  add_chain_options(*calibrate_cmd, config);
  calibrate_cmd->add_option("-k,--order", config.order, "Number of lags")->check(CLI::PositiveNumber);
  calibrate_cmd->add_option("--reps", config.reps, "Number of realisations");
  calibrate_cmd->add_option("--threads", config.threads, "Worker threads (0 = TE_NUM_THREADS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*estimate_cmd) return run_estimate(config, out, err);
    if (*test_cmd) return run_test(config, out, err);
    if (*select_cmd) return run_select_order(config, out, err);
    if (*simulate_cmd) return run_simulate(config, out, err);
    if (*calibrate_cmd) return run_calibrate(config, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

} // namespace te::cli
