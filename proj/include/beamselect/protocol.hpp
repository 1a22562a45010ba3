#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "beamselect/channel.hpp"
#include "beamselect/selection_vector.hpp"

namespace beamselect {

/// Signaling cost of one selection round.
struct FeedbackBudget {
  std::uint64_t bits_sent = 0;   ///< destination-to-node feedback bits
  std::uint64_t rounds = 0;      ///< time slots consumed
  std::uint64_t broadcasts = 0;  ///< peer broadcasts (distributed variant)
};

/// Timer-contention ordering: each node arms a timer inversely proportional
/// to its amplitude, so the strongest node fires first. Only the induced
/// ordering is modeled; collisions resolve to the lowest index.
struct TimerSchedule {
  std::vector<double> timeouts;  ///< 1 / a_k, +inf for a zero amplitude
  std::size_t winner = 0;        ///< argmin timeout = argmax amplitude
};

TimerSchedule timer_schedule(const ChannelRealization& h);

/// Centralized selection: the destination returns one transmit/don't bit per
/// node, so bits_sent = K in a single round.
FeedbackBudget centralized_feedback(const SelectionVector& s);

struct DistributedSelection {
  SelectionVector selected;
  FeedbackBudget budget;
};

/// Distributed variant: the strongest node wins the timer contention and
/// broadcasts its channel (one broadcast, no destination feedback); in the
/// next slot every node with a_k >= r and relative phase within +-alpha of
/// the winner transmits alongside it.
DistributedSelection distributed_select(const ChannelRealization& h, double r, double alpha);

}  // namespace beamselect
