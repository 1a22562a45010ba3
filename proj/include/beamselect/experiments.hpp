#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beamselect/channel.hpp"

namespace beamselect {

enum class Algorithm { exhaustive, greedy, sector, upper_bound, single_best };

inline constexpr std::array<Algorithm, 5> kAllAlgorithms = {
    Algorithm::exhaustive, Algorithm::greedy, Algorithm::sector, Algorithm::upper_bound,
    Algorithm::single_best};

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

struct SweepConfig {
  std::vector<std::size_t> k_values;  ///< ascending node counts
  std::size_t trials = 0;             ///< per-K trial count; 0 picks a default by K
  RngSeed master_seed;
  std::vector<Algorithm> algorithms;   ///< empty means all
  std::size_t exhaustive_k_cap = 12;   ///< exhaustive cells above this are skipped
  std::optional<double> threshold_r;   ///< default: r_star from bound_constants
  std::optional<double> sector_alpha;  ///< default: alpha_star from bound_constants
  unsigned max_threads = 0;            ///< 0 = hardware concurrency
};

struct SweepCell {
  Algorithm algorithm{};
  std::size_t k = 0;
  double mean_power = 0.0;
  double mean_fraction = 0.0;
  double std_err_power = 0.0;
  std::size_t trials = 0;
};

struct SweepSkip {
  Algorithm algorithm{};
  std::size_t k = 0;
  std::string reason;
};

struct SweepResult {
  std::vector<SweepCell> cells;     ///< algorithm-major, K ascending within
  std::vector<SweepSkip> skipped;  ///< cells not run (exhaustive above cap)

  const SweepCell* find(Algorithm a, std::size_t k) const;
};

/// Runs the Monte Carlo sweep. All algorithms share the channel realization
/// of each (K, trial) cell; substreams are keyed by (K, trial), so the
/// result is bit-identical for a given config no matter how many worker
/// threads execute the trials. The upper_bound curve scores selections with
/// coherent_power, everything else with received_power; threshold rules run
/// behind the single-best fallback.
SweepResult run_sweep(const SweepConfig& config);

/// Exact expected power of the single-best baseline: the harmonic number
/// H_K = sum_{i=1..K} 1/i, since max of K unit-mean exponentials has mean H_K.
double harmonic_expectation(std::size_t k);

/// Least-squares slope of mean_power versus K for one algorithm over the
/// cells with k_min <= K <= k_max. Needs at least three cells.
double scaling_fit(const SweepResult& result, Algorithm algorithm, std::size_t k_min,
                   std::size_t k_max);

}  // namespace beamselect
