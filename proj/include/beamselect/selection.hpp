#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "beamselect/channel.hpp"
#include "beamselect/selection_vector.hpp"

namespace beamselect {

/// Result of one selection rule on one realization.
/// power always equals |composite|^2 bit for bit; iterations is the number
/// of greedy steps taken (0 for non-iterative rules).
struct SelectionOutcome {
  SelectionVector selected;
  std::complex<double> composite{0.0, 0.0};
  double power = 0.0;
  std::size_t iterations = 0;
};

/// Thrown when an exhaustive search would enumerate more subsets than the
/// configured cap allows.
class ComplexityGuardError : public std::runtime_error {
 public:
  ComplexityGuardError(std::size_t k, std::size_t cap)
      : std::runtime_error("exhaustive selection over K=" + std::to_string(k) +
                           " nodes exceeds the complexity cap K=" + std::to_string(cap)),
        k_(k),
        cap_(cap) {}
  std::size_t k() const { return k_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t k_;
  std::size_t cap_;
};

inline constexpr std::size_t kDefaultExhaustiveCap = 24;

/// Normalized received power P = |h^T s|^2 / (s^T s). Defined as
/// |composite_gain(h, s)|^2 so the two are identical to the last bit.
double received_power(const ChannelRealization& h, const SelectionVector& s);

/// Phase-ignoring power (sum of selected amplitudes)^2 / |s|, as if all
/// transmissions arrived coherently at zero phase. Upper-bounds
/// received_power on the same selection.
double coherent_power(const ChannelRealization& h, const SelectionVector& s);

/// Two-node simultaneous-transmission test: with rho = a2/a1 <= 1, both
/// nodes transmitting beats the best single node iff
/// cos(delta) >= (1 - rho^2) / (2 rho). Boundary equality counts as true.
bool two_node_rule(double a1, double a2, double delta);

/// Optimal rule: argmax of received_power over all 2^K - 1 nonempty
/// selections. Ties go to the smaller selected set, then the smaller bit
/// pattern (node 1 = lowest bit). Throws ComplexityGuardError for K above
/// the cap.
SelectionOutcome exhaustive_select(const ChannelRealization& h,
                                   std::size_t k_cap = kDefaultExhaustiveCap);

/// Amplitude-threshold rule s_k = 1 iff a_k >= r. May select nothing;
/// pair with with_fallback for a usable outcome.
SelectionVector amplitude_threshold_select(const ChannelRealization& h, double r);

/// Sector rule s_k = 1 iff a_k >= r and |phi_k| <= alpha, sector centered
/// at phase 0. alpha must lie in (0, pi].
SelectionVector sector_select(const ChannelRealization& h, double r, double alpha);

struct GreedyRun {
  SelectionOutcome outcome;
  std::vector<double> power_trace;  ///< P^(1), ..., P^(N), strictly increasing
};

/// Iterative greedy selection. Seeds with the largest-amplitude node, then
/// repeatedly admits the unselected node maximizing
///   cos(delta_i) - (P - a_i^2) / (2 a_i sqrt(N P)),
/// where delta_i is the phase of h_i relative to the running composite z,
/// as long as the strict improvement condition holds. O(K^2).
GreedyRun greedy_select_traced(const ChannelRealization& h);
SelectionOutcome greedy_select(const ChannelRealization& h);

/// Baseline: the single node with the largest amplitude (ties: lowest index).
SelectionOutcome single_best_select(const ChannelRealization& h);

/// Power functional used by with_fallback to score a threshold rule's set.
enum class PowerMetric { received, coherent };

/// Finite-K fix-up for the threshold rules: keep the rule's selection unless
/// it is empty or scores below the single best node under the given metric,
/// in which case fall back to single_best_select.
SelectionOutcome with_fallback(const SelectionVector& rule_output, const ChannelRealization& h,
                               PowerMetric metric);

}  // namespace beamselect
