#include "beamselect/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>

#include "beamselect/bounds.hpp"
#include "beamselect/selection.hpp"

namespace beamselect {
namespace {

// Deterministic summation independent of accumulation order upstream:
// the vector is reduced pairwise in a fixed tree.
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t mid = v.size() / 2;
  return pairwise_sum(v.subspan(0, mid)) + pairwise_sum(v.subspan(mid));
}

std::size_t default_trials(std::size_t k) {
  if (k <= 100) return 10000;
  if (k <= 1000) return 1000;
  return 100;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n, std::memory_order_relaxed);
        return;
      }
    }
  };
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::jthread> pool;
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  pool.clear();  // join
  if (error) std::rethrow_exception(error);
}

struct CellAccumulator {
  std::vector<double> power;
  std::vector<double> fraction;
};

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::exhaustive: return "exhaustive";
    case Algorithm::greedy: return "greedy";
    case Algorithm::sector: return "sector";
    case Algorithm::upper_bound: return "upper_bound";
    case Algorithm::single_best: return "single_best";
  }
  return "unknown";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  for (Algorithm a : kAllAlgorithms)
    if (algorithm_name(a) == name) return a;
  return std::nullopt;
}

const SweepCell* SweepResult::find(Algorithm a, std::size_t k) const {
  for (const SweepCell& cell : cells)
    if (cell.algorithm == a && cell.k == k) return &cell;
  return nullptr;
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.k_values.empty()) throw std::invalid_argument("run_sweep: k_values must be nonempty");
  for (std::size_t i = 0; i < config.k_values.size(); ++i) {
    if (config.k_values[i] == 0) throw std::invalid_argument("run_sweep: K must be >= 1");
    if (i > 0 && config.k_values[i] <= config.k_values[i - 1])
      throw std::invalid_argument("run_sweep: k_values must be strictly ascending");
  }

  std::vector<Algorithm> algorithms;
  for (Algorithm a : config.algorithms)
    if (std::find(algorithms.begin(), algorithms.end(), a) == algorithms.end())
      algorithms.push_back(a);
  if (algorithms.empty())
    algorithms.assign(kAllAlgorithms.begin(), kAllAlgorithms.end());

  const bool needs_thresholds =
      std::find(algorithms.begin(), algorithms.end(), Algorithm::sector) != algorithms.end() ||
      std::find(algorithms.begin(), algorithms.end(), Algorithm::upper_bound) != algorithms.end();
  double r = config.threshold_r.value_or(0.0);
  double alpha = config.sector_alpha.value_or(0.0);
  if (needs_thresholds && (!config.threshold_r || !config.sector_alpha)) {
    const BoundConstants b = bound_constants();
    if (!config.threshold_r) r = b.r_star;
    if (!config.sector_alpha) alpha = b.alpha_star;
  }

  unsigned threads = config.max_threads != 0 ? config.max_threads
                                             : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;

  SweepResult result;
  // Cells are emitted algorithm-major so each curve is contiguous.
  std::vector<std::vector<CellAccumulator>> acc(algorithms.size());

  for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
    const std::size_t k = config.k_values[ki];
    const std::size_t trials = config.trials != 0 ? config.trials : default_trials(k);

    // the selection engine enumerates masks of at most 63 bits
    const std::size_t exhaustive_cap = std::min<std::size_t>(config.exhaustive_k_cap, 63);
    std::vector<int> active(algorithms.size(), 1);
    for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
      if (algorithms[ai] == Algorithm::exhaustive && k > exhaustive_cap) {
        active[ai] = 0;
        result.skipped.push_back({Algorithm::exhaustive, k,
                                  "K exceeds exhaustive cap " + std::to_string(exhaustive_cap)});
      }
      acc[ai].push_back(CellAccumulator{});
      if (active[ai]) {
        acc[ai].back().power.resize(trials);
        acc[ai].back().fraction.resize(trials);
      }
    }

    parallel_for(trials, threads, [&](std::size_t trial) {
      const RngSeed stream{config.master_seed.seed,
                           config.master_seed.stream_id +
                               ((static_cast<std::uint64_t>(k) << 32) | trial)};
      const ChannelRealization h = sample_channel(k, stream);

      double exhaustive_power = -1.0;
      double greedy_power = -1.0;
      double single_best_power = -1.0;
      for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
        if (!active[ai]) continue;
        SelectionOutcome out;
        switch (algorithms[ai]) {
          case Algorithm::exhaustive:
            out = exhaustive_select(h, exhaustive_cap);
            exhaustive_power = out.power;
            break;
          case Algorithm::greedy:
            out = greedy_select(h);
            greedy_power = out.power;
            break;
          case Algorithm::sector:
            out = with_fallback(sector_select(h, r, alpha), h, PowerMetric::received);
            break;
          case Algorithm::upper_bound:
            out = with_fallback(amplitude_threshold_select(h, r), h, PowerMetric::coherent);
            break;
          case Algorithm::single_best:
            out = single_best_select(h);
            single_best_power = out.power;
            break;
        }
        acc[ai][ki].power[trial] = out.power;
        acc[ai][ki].fraction[trial] =
            static_cast<double>(out.selected.count()) / static_cast<double>(k);
      }
      // Per-trial dominance holds by construction of the rules; a violation
      // here means a selection bug, not statistical noise.
      if (exhaustive_power >= 0.0 && greedy_power >= 0.0 && exhaustive_power < greedy_power)
        throw std::logic_error("run_sweep: exhaustive power below greedy");
      if (greedy_power >= 0.0 && single_best_power >= 0.0 && greedy_power < single_best_power)
        throw std::logic_error("run_sweep: greedy power below single best");
    });
  }

  for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
    for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
      CellAccumulator& cell = acc[ai][ki];
      if (cell.power.empty()) continue;  // skipped
      const std::size_t trials = cell.power.size();
      const double mean_power = pairwise_sum(cell.power) / static_cast<double>(trials);
      const double mean_fraction = pairwise_sum(cell.fraction) / static_cast<double>(trials);
      double std_err = 0.0;
      if (trials > 1) {
        std::vector<double> dev2(trials);
        for (std::size_t t = 0; t < trials; ++t) {
          const double d = cell.power[t] - mean_power;
          dev2[t] = d * d;
        }
        const double var = pairwise_sum(dev2) / static_cast<double>(trials - 1);
        std_err = std::sqrt(var / static_cast<double>(trials));
      }
      result.cells.push_back({algorithms[ai], config.k_values[ki], mean_power, mean_fraction,
                              std_err, trials});
    }
  }
  return result;
}

double harmonic_expectation(std::size_t k) {
  if (k == 0) throw std::invalid_argument("harmonic_expectation: K must be >= 1");
  double sum = 0.0;
  for (std::size_t i = k; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
  return sum;
}

double scaling_fit(const SweepResult& result, Algorithm algorithm, std::size_t k_min,
                   std::size_t k_max) {
  std::vector<double> ks, ps;
  for (const SweepCell& cell : result.cells) {
    if (cell.algorithm == algorithm && cell.k >= k_min && cell.k <= k_max) {
      ks.push_back(static_cast<double>(cell.k));
      ps.push_back(cell.mean_power);
    }
  }
  if (ks.size() < 3)
    throw std::invalid_argument("scaling_fit: need at least three K points in range");
  const double n = static_cast<double>(ks.size());
  double k_mean = 0.0, p_mean = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    k_mean += ks[i];
    p_mean += ps[i];
  }
  k_mean /= n;
  p_mean /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    num += (ks[i] - k_mean) * (ps[i] - p_mean);
    den += (ks[i] - k_mean) * (ks[i] - k_mean);
  }
  return num / den;
}

}  // namespace beamselect
