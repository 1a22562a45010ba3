#include "beamselect/protocol.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace beamselect {

TimerSchedule timer_schedule(const ChannelRealization& h) {
  if (h.empty()) throw std::invalid_argument("timer_schedule: empty realization");
  TimerSchedule t;
  t.timeouts.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    t.timeouts[i] = h[i].amplitude > 0.0 ? 1.0 / h[i].amplitude
                                         : std::numeric_limits<double>::infinity();
    if (t.timeouts[i] < t.timeouts[t.winner]) t.winner = i;
  }
  return t;
}

FeedbackBudget centralized_feedback(const SelectionVector& s) {
  if (s.size() == 0) throw std::invalid_argument("centralized_feedback: empty selection vector");
  return {.bits_sent = s.size(), .rounds = 1, .broadcasts = 0};
}

DistributedSelection distributed_select(const ChannelRealization& h, double r, double alpha) {
  const TimerSchedule timers = timer_schedule(h);
  const std::size_t best = timers.winner;
  DistributedSelection out;
  out.selected = SelectionVector(h.size());
  out.selected.set(best);  // the winner transmits unconditionally
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i == best) continue;
    const double rel = wrap_phase(h[i].phase - h[best].phase);
    out.selected.set(i, h[i].amplitude >= r && std::abs(rel) <= alpha);
  }
  out.budget = {.bits_sent = 0, .rounds = 2, .broadcasts = 1};
  return out;
}

}  // namespace beamselect
