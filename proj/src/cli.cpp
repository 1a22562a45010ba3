#include "beamselect/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "beamselect/bounds.hpp"
#include "beamselect/protocol.hpp"
#include "beamselect/selection.hpp"

namespace beamselect::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitComplexityGuard = 3;
constexpr int kExitIo = 4;

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> items;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

unsigned env_thread_cap() {
  const char* raw = std::getenv("BEAMSELECT_THREADS");
  if (!raw || !*raw) return 0;
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(raw, raw + std::string_view(raw).size(), value);
  if (ec != std::errc{} || *ptr != '\0' || value == 0) return 0;
  return value;
}

std::string join_sig(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ' ';
    s += format_sig(values[i]);
  }
  return s;
}

struct TrialPrinter {
  std::string algorithm;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> selected_one_based;
  double power = 0.0;
  std::vector<double> trace;           // greedy only
  const FeedbackBudget* budget = nullptr;  // distributed only

  void text(std::ostream& out) const {
    out << "algorithm: " << algorithm << '\n';
    out << "k: " << k << '\n';
    out << "seed: " << seed << '\n';
    out << "selected:";
    for (std::size_t i : selected_one_based) out << ' ' << i;
    out << '\n';
    out << "count: " << selected_one_based.size() << '\n';
    out << "fraction: "
        << format_sig(static_cast<double>(selected_one_based.size()) / static_cast<double>(k))
        << '\n';
    out << "power: " << format_sig(power) << '\n';
    if (power > 0.0) out << "power_db: " << format_sig(10.0 * std::log10(power)) << '\n';
    if (!trace.empty()) out << "trace: " << join_sig(trace) << '\n';
    if (budget)
      out << "feedback: broadcasts=" << budget->broadcasts << " bits_sent=" << budget->bits_sent
          << " rounds=" << budget->rounds << '\n';
  }

  void json(std::ostream& out) const {
    ordered_json j;
    j["algorithm"] = algorithm;
    j["k"] = k;
    j["seed"] = seed;
    j["selected"] = selected_one_based;
    j["count"] = selected_one_based.size();
    j["fraction"] = static_cast<double>(selected_one_based.size()) / static_cast<double>(k);
    j["power"] = power;
    if (power > 0.0) j["power_db"] = 10.0 * std::log10(power);
    if (!trace.empty()) j["trace"] = trace;
    if (budget) {
      j["feedback"] = {{"broadcasts", budget->broadcasts},
                       {"bits_sent", budget->bits_sent},
                       {"rounds", budget->rounds}};
    }
    out << j.dump(2) << '\n';
  }
};

std::vector<std::size_t> one_based(const SelectionVector& s) {
  std::vector<std::size_t> out;
  for (std::size_t i : s.indices()) out.push_back(i + 1);
  return out;
}

int cmd_bounds(const std::string& format, std::ostream& out) {
  const BoundConstants b = bound_constants();
  if (format == "json") {
    ordered_json j;
    j["r_star"] = b.r_star;
    j["alpha_star"] = b.alpha_star;
    j["f_max"] = b.f_max;
    j["upper_c"] = b.upper_c;
    j["lower_c"] = b.lower_c;
    j["gap_db"] = b.gap_db;
    j["fraction_ub"] = b.fraction_ub;
    out << j.dump(2) << '\n';
  } else {
    out << "r_star: " << format_sig(b.r_star) << '\n';
    out << "alpha_star: " << format_sig(b.alpha_star) << '\n';
    out << "f_max: " << format_sig(b.f_max) << '\n';
    out << "upper_c: " << format_sig(b.upper_c) << '\n';
    out << "lower_c: " << format_sig(b.lower_c) << '\n';
    out << "gap_db: " << format_sig(b.gap_db) << '\n';
    out << "fraction_ub: " << format_sig(b.fraction_ub) << '\n';
  }
  return 0;
}

struct TrialOptions {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::optional<double> r;
  std::optional<double> alpha;
  std::size_t exhaustive_cap = kDefaultExhaustiveCap;
  std::string format = "csv";
};

int cmd_trial(const TrialOptions& opt, std::ostream& out, std::ostream& err) {
  // Substream (K << 32 | 0) matches trial 0 of a sweep at the same K/seed.
  const ChannelRealization h =
      sample_channel(opt.k, {opt.seed, static_cast<std::uint64_t>(opt.k) << 32});

  double r = opt.r.value_or(0.0);
  double alpha = opt.alpha.value_or(0.0);
  const bool needs_thresholds = opt.algorithm == "sector" || opt.algorithm == "upper_bound" ||
                                opt.algorithm == "distributed";
  if (needs_thresholds && (!opt.r || !opt.alpha)) {
    const BoundConstants b = bound_constants();
    if (!opt.r) r = b.r_star;
    if (!opt.alpha) alpha = b.alpha_star;
  }

  TrialPrinter printer;
  printer.algorithm = opt.algorithm;
  printer.k = opt.k;
  printer.seed = opt.seed;

  FeedbackBudget budget;
  if (opt.algorithm == "distributed") {
    const DistributedSelection d = distributed_select(h, r, alpha);
    budget = d.budget;
    printer.budget = &budget;
    printer.selected_one_based = one_based(d.selected);
    printer.power = received_power(h, d.selected);
  } else if (opt.algorithm == "greedy") {
    const GreedyRun run = greedy_select_traced(h);
    printer.selected_one_based = one_based(run.outcome.selected);
    printer.power = run.outcome.power;
    printer.trace = run.power_trace;
  } else {
    SelectionOutcome outcome;
    if (opt.algorithm == "exhaustive") {
      try {
        outcome = exhaustive_select(h, opt.exhaustive_cap);
      } catch (const ComplexityGuardError& e) {
        err << "error: " << e.what() << '\n';
        return kExitComplexityGuard;
      }
    } else if (opt.algorithm == "sector") {
      outcome = with_fallback(sector_select(h, r, alpha), h, PowerMetric::received);
    } else if (opt.algorithm == "upper_bound") {
      outcome = with_fallback(amplitude_threshold_select(h, r), h, PowerMetric::coherent);
    } else {  // single_best, validated upstream
      outcome = single_best_select(h);
    }
    printer.selected_one_based = one_based(outcome.selected);
    printer.power = outcome.power;
  }

  if (opt.format == "json")
    printer.json(out);
  else
    printer.text(out);
  return 0;
}

struct SweepOptions {
  std::string k_list;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string algorithms;
  std::string format = "csv";
  std::string out_path;
  std::optional<double> r;
  std::optional<double> alpha;
  std::size_t exhaustive_cap = 12;
};

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  SweepConfig config;
  for (const std::string& item : split_list(opt.k_list)) {
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), k);
    if (ec != std::errc{} || ptr != item.data() + item.size() || k == 0) {
      err << "error: invalid --k-list entry '" << item << "'\n";
      return kExitUsage;
    }
    config.k_values.push_back(k);
  }
  std::sort(config.k_values.begin(), config.k_values.end());
  config.k_values.erase(std::unique(config.k_values.begin(), config.k_values.end()),
                        config.k_values.end());
  if (config.k_values.empty()) {
    err << "error: --k-list is empty\n";
    return kExitUsage;
  }

  if (!opt.algorithms.empty()) {
    for (const std::string& name : split_list(opt.algorithms)) {
      const auto algorithm = algorithm_from_name(name);
      if (!algorithm) {
        err << "error: unknown algorithm '" << name << "'\n";
        return kExitUsage;
      }
      config.algorithms.push_back(*algorithm);
    }
  }

  config.trials = opt.trials;
  config.master_seed = {opt.seed, 0};
  config.exhaustive_k_cap = opt.exhaustive_cap;
  config.threshold_r = opt.r;
  config.sector_alpha = opt.alpha;
  config.max_threads = env_thread_cap();

  const SweepResult result = run_sweep(config);
  for (const SweepSkip& skip : result.skipped)
    err << "note: skipped " << algorithm_name(skip.algorithm) << " at k=" << skip.k << " ("
        << skip.reason << ")\n";

  const std::string payload = opt.format == "json" ? to_json(result) : to_csv(result);
  if (opt.out_path.empty()) {
    out << payload;
    return 0;
  }
  std::ofstream file(opt.out_path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << opt.out_path << "'\n";
    return kExitIo;
  }
  file << payload;
  file.flush();
  if (!file) {
    err << "error: failed writing output file '" << opt.out_path << "'\n";
    return kExitIo;
  }
  return 0;
}

bool valid_format(const std::string& format) { return format == "csv" || format == "json"; }

}  // namespace

std::string format_sig(double value, int digits) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string to_csv(const SweepResult& result) {
  std::string s = "algorithm,k,mean_power,mean_power_over_k,mean_fraction,std_err,trials\n";
  for (const SweepCell& cell : result.cells) {
    s += algorithm_name(cell.algorithm);
    s += ',';
    s += std::to_string(cell.k);
    s += ',';
    s += format_sig(cell.mean_power);
    s += ',';
    s += format_sig(cell.mean_power / static_cast<double>(cell.k));
    s += ',';
    s += format_sig(cell.mean_fraction);
    s += ',';
    s += format_sig(cell.std_err_power);
    s += ',';
    s += std::to_string(cell.trials);
    s += '\n';
  }
  return s;
}

std::string to_json(const SweepResult& result) {
  ordered_json rows = ordered_json::array();
  for (const SweepCell& cell : result.cells) {
    ordered_json row;
    row["algorithm"] = algorithm_name(cell.algorithm);
    row["k"] = cell.k;
    row["mean_power"] = cell.mean_power;
    row["mean_power_over_k"] = cell.mean_power / static_cast<double>(cell.k);
    row["mean_fraction"] = cell.mean_fraction;
    row["std_err"] = cell.std_err_power;
    row["trials"] = cell.trials;
    rows.push_back(std::move(row));
  }
  return rows.dump(2) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Opportunistic collaborative beamforming node selection over Rayleigh fading"};
  app.require_subcommand(1);

  std::string bounds_format = "csv";
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "Print the asymptotic bound constants");
  bounds_cmd->add_option("--format", bounds_format, "csv (labeled text) or json");

  TrialOptions trial;
  CLI::App* trial_cmd =
      app.add_subcommand("trial", "Run one selection rule on one seeded realization");
  trial_cmd->add_option("--k", trial.k, "number of nodes")->required();
  trial_cmd->add_option("--seed", trial.seed, "master seed");
  trial_cmd->add_option("--algorithm", trial.algorithm,
                        "exhaustive|greedy|sector|upper_bound|single_best|distributed")
      ->required();
  double trial_r = 0.0, trial_alpha = 0.0;
  CLI::Option* trial_r_opt = trial_cmd->add_option("--r", trial_r, "amplitude threshold override");
  CLI::Option* trial_alpha_opt =
      trial_cmd->add_option("--alpha", trial_alpha, "sector half-angle override (radians)");
  trial_cmd->add_option("--exhaustive-cap", trial.exhaustive_cap,
                        "max K for the exhaustive search");
  trial_cmd->add_option("--format", trial.format, "csv (labeled text) or json");

  SweepOptions sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over node counts");
  sweep_cmd->add_option("--k-list", sweep.k_list, "comma-separated node counts")->required();
  sweep_cmd->add_option("--trials", sweep.trials, "trials per K (0 = auto by K)");
  sweep_cmd->add_option("--seed", sweep.seed, "master seed");
  sweep_cmd->add_option("--algorithms", sweep.algorithms,
                        "comma-separated subset of exhaustive,greedy,sector,upper_bound,single_best"
                        " (default: all)");
  sweep_cmd->add_option("--format", sweep.format, "csv or json");
  sweep_cmd->add_option("--out", sweep.out_path, "output path (default: stdout)");
  double sweep_r = 0.0, sweep_alpha = 0.0;
  CLI::Option* sweep_r_opt = sweep_cmd->add_option("--r", sweep_r, "amplitude threshold override");
  CLI::Option* sweep_alpha_opt =
      sweep_cmd->add_option("--alpha", sweep_alpha, "sector half-angle override (radians)");
  sweep_cmd->add_option("--exhaustive-cap", sweep.exhaustive_cap,
                        "skip exhaustive cells above this K");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (bounds_cmd->parsed()) {
      if (!valid_format(bounds_format)) {
        err << "error: --format must be csv or json\n";
        return kExitUsage;
      }
      return cmd_bounds(bounds_format, out);
    }
    if (trial_cmd->parsed()) {
      if (!valid_format(trial.format)) {
        err << "error: --format must be csv or json\n";
        return kExitUsage;
      }
      const bool known = trial.algorithm == "distributed" ||
                         algorithm_from_name(trial.algorithm).has_value();
      if (!known) {
        err << "error: unknown algorithm '" << trial.algorithm << "'\n";
        return kExitUsage;
      }
      if (trial.k == 0) {
        err << "error: --k must be >= 1\n";
        return kExitUsage;
      }
      if (*trial_r_opt) trial.r = trial_r;
      if (*trial_alpha_opt) trial.alpha = trial_alpha;
      return cmd_trial(trial, out, err);
    }
    if (sweep_cmd->parsed()) {
      if (!valid_format(sweep.format)) {
        err << "error: --format must be csv or json\n";
        return kExitUsage;
      }
      if (*sweep_r_opt) sweep.r = sweep_r;
      if (*sweep_alpha_opt) sweep.alpha = sweep_alpha;
      return cmd_sweep(sweep, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace beamselect::cli
