#include "beamselect/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace beamselect {
namespace {

// Sum of selected amplitudes in ascending index order.
double amplitude_sum(const ChannelRealization& h, const SelectionVector& s, std::size_t& n_out) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (s.test(i)) {
      sum += h[i].amplitude;
      ++n;
    }
  }
  n_out = n;
  return sum;
}

std::size_t strongest_node(const ChannelRealization& h) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < h.size(); ++i)
    if (h[i].amplitude > h[best].amplitude) best = i;
  return best;
}

SelectionOutcome make_outcome(const ChannelRealization& h, const SelectionVector& s,
                              PowerMetric metric, std::size_t iterations = 0) {
  SelectionOutcome out;
  out.selected = s;
  if (metric == PowerMetric::coherent) {
    std::size_t n = 0;
    const double sum = amplitude_sum(h, s, n);
    out.composite = {sum / std::sqrt(static_cast<double>(n)), 0.0};
  } else {
    out.composite = composite_gain(h, s);
  }
  out.power = std::norm(out.composite);
  out.iterations = iterations;
  return out;
}

}  // namespace

double received_power(const ChannelRealization& h, const SelectionVector& s) {
  return std::norm(composite_gain(h, s));
}

double coherent_power(const ChannelRealization& h, const SelectionVector& s) {
  if (s.size() != h.size())
    throw std::invalid_argument("coherent_power: selection length does not match realization");
  std::size_t n = 0;
  const double sum = amplitude_sum(h, s, n);
  if (n == 0) throw std::invalid_argument("coherent_power: empty selection");
  return sum * sum / static_cast<double>(n);
}

bool two_node_rule(double a1, double a2, double delta) {
  if (!(a2 > 0.0)) throw std::invalid_argument("two_node_rule: a2 must be positive");
  if (a2 > a1) throw std::invalid_argument("two_node_rule: requires a1 >= a2");
  const double rho = a2 / a1;
  return std::cos(delta) >= (1.0 - rho * rho) / (2.0 * rho);
}

SelectionOutcome exhaustive_select(const ChannelRealization& h, std::size_t k_cap) {
  const std::size_t k = h.size();
  if (k == 0) throw std::invalid_argument("exhaustive_select: empty realization");
  const std::size_t cap = std::min<std::size_t>(k_cap, 63);
  if (k > cap) throw ComplexityGuardError(k, cap);

  std::vector<std::complex<double>> gains(k);
  for (std::size_t i = 0; i < k; ++i) gains[i] = to_complex(h[i]);

  struct Best {
    double power = -1.0;
    std::size_t count = 0;
    std::uint64_t mask = 0;
  } best;

  // Depth-first include/exclude walk carrying the ascending-index partial
  // sum, so every subset is scored with exactly the rounding received_power
  // would produce for it.
  auto visit = [&](auto&& self, std::size_t idx, std::complex<double> sum, std::size_t count,
                   std::uint64_t mask) -> void {
    if (idx == k) {
      if (count == 0) return;
      const double power = std::norm(sum / std::sqrt(static_cast<double>(count)));
      if (power > best.power ||
          (power == best.power &&
           (count < best.count || (count == best.count && mask < best.mask)))) {
        best = {power, count, mask};
      }
      return;
    }
    self(self, idx + 1, sum, count, mask);
    self(self, idx + 1, sum + gains[idx], count + 1, mask | (std::uint64_t{1} << idx));
  };
  visit(visit, 0, {0.0, 0.0}, 0, 0);

  SelectionOutcome out = make_outcome(h, SelectionVector::from_mask(k, best.mask),
                                      PowerMetric::received);
  return out;
}

SelectionVector amplitude_threshold_select(const ChannelRealization& h, double r) {
  SelectionVector s(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) s.set(i, h[i].amplitude >= r);
  return s;
}

SelectionVector sector_select(const ChannelRealization& h, double r, double alpha) {
  if (!(alpha > 0.0) || alpha > std::numbers::pi)
    throw std::invalid_argument("sector_select: alpha must lie in (0, pi]");
  SelectionVector s(h.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    s.set(i, h[i].amplitude >= r && std::abs(h[i].phase) <= alpha);
  return s;
}

GreedyRun greedy_select_traced(const ChannelRealization& h) {
  const std::size_t k = h.size();
  if (k == 0) throw std::invalid_argument("greedy_select: empty realization");

  const std::size_t seed = strongest_node(h);
  SelectionVector selected(k);
  selected.set(seed);
  std::vector<char> used(k, 0);
  used[seed] = 1;

  // unit phasors e^{j phi_i}, hoisted out of the O(K^2) scan
  std::vector<double> unit_re(k), unit_im(k);
  for (std::size_t i = 0; i < k; ++i) {
    unit_re[i] = std::cos(h[i].phase);
    unit_im[i] = std::sin(h[i].phase);
  }

  std::complex<double> z = to_complex(h[seed]);
  double power = std::norm(z);
  std::vector<double> trace{power};
  std::size_t n = 1;

  while (n < k && power > 0.0) {
    const double z_abs = std::sqrt(power);
    const double sqrt_np = std::sqrt(static_cast<double>(n) * power);
    std::size_t pick = k;
    double pick_margin = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      if (used[i]) continue;
      const double a = h[i].amplitude;
      if (a <= 0.0) continue;  // a zero-amplitude node can never raise P
      const double cos_delta = (unit_re[i] * z.real() + unit_im[i] * z.imag()) / z_abs;
      const double margin = cos_delta - (power - a * a) / (2.0 * a * sqrt_np);
      if (margin > pick_margin) {
        pick_margin = margin;
        pick = i;
      }
    }
    // Positive margin is exactly the strict improvement condition
    // cos(delta) > (P - a^2) / (2 a sqrt(N P)).
    if (pick == k || !(pick_margin > 0.0)) break;
    z = (std::sqrt(static_cast<double>(n)) * z + to_complex(h[pick])) /
        std::sqrt(static_cast<double>(n + 1));
    power = std::norm(z);
    trace.push_back(power);
    selected.set(pick);
    used[pick] = 1;
    ++n;
  }

  GreedyRun run;
  run.outcome = make_outcome(h, selected, PowerMetric::received, n);
  run.power_trace = std::move(trace);
  return run;
}

SelectionOutcome greedy_select(const ChannelRealization& h) {
  return greedy_select_traced(h).outcome;
}

SelectionOutcome single_best_select(const ChannelRealization& h) {
  if (h.empty()) throw std::invalid_argument("single_best_select: empty realization");
  SelectionVector s(h.size());
  s.set(strongest_node(h));
  return make_outcome(h, s, PowerMetric::received);
}

SelectionOutcome with_fallback(const SelectionVector& rule_output, const ChannelRealization& h,
                               PowerMetric metric) {
  if (rule_output.size() != h.size())
    throw std::invalid_argument("with_fallback: selection length does not match realization");
  SelectionVector best(h.size());
  best.set(strongest_node(h));
  const auto metric_power = [&](const SelectionVector& s) {
    return metric == PowerMetric::coherent ? coherent_power(h, s) : received_power(h, s);
  };
  if (rule_output.none()) return make_outcome(h, best, metric);
  const double rule_power = metric_power(rule_output);
  // rule_power == 0 covers the all-zero-amplitude degenerate input, where
  // every rule is defined to return the lowest-index node.
  if (rule_power < metric_power(best) || rule_power == 0.0) return make_outcome(h, best, metric);
  return make_outcome(h, rule_output, metric);
}

}  // namespace beamselect
