#include "beamselect/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace beamselect {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// SplitMix64 finalizer. Mixing (seed, stream_id) through it twice gives an
// order-insensitive per-stream engine seed.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 53-bit uniform in [0, 1).
double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

double wrap_phase(double phi) {
  const double w = std::remainder(phi, kTwoPi);  // in [-pi, pi]
  return w <= -kPi ? kPi : w;
}

std::complex<double> to_complex(const ChannelGain& g) {
  return std::polar(g.amplitude, g.phase);
}

ChannelRealization sample_channel(std::size_t k, RngSeed rng) {
  if (k == 0) throw std::invalid_argument("sample_channel: K must be >= 1");
  std::mt19937_64 eng(mix64(mix64(rng.seed) ^ rng.stream_id));
  ChannelRealization h(k);
  for (ChannelGain& g : h) {
    // Box-Muller pair scaled to variance 1/2; (re, im) realizes CN(0,1).
    const double u1 = 1.0 - to_unit(eng());  // (0, 1], keeps log finite
    const double u2 = to_unit(eng());
    const double mag = std::sqrt(-std::log(u1));
    const double re = mag * std::cos(kTwoPi * u2);
    const double im = mag * std::sin(kTwoPi * u2);
    g.amplitude = std::hypot(re, im);
    g.phase = wrap_phase(std::atan2(im, re));
  }
  return h;
}

std::complex<double> composite_gain(const ChannelRealization& h, const SelectionVector& s) {
  if (s.size() != h.size())
    throw std::invalid_argument("composite_gain: selection length does not match realization");
  std::complex<double> sum{0.0, 0.0};
  std::size_t n = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (s.test(i)) {
      sum += to_complex(h[i]);
      ++n;
    }
  }
  if (n == 0) throw std::invalid_argument("composite_gain: empty selection");
  return sum / std::sqrt(static_cast<double>(n));
}

}  // namespace beamselect
