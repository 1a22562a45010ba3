#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "beamselect/selection_vector.hpp"

namespace beamselect {

/// One node's channel gain in polar form, h = amplitude * e^{j*phase}.
struct ChannelGain {
  double amplitude = 0.0;  ///< Rayleigh-distributed magnitude, >= 0
  double phase = 0.0;      ///< radians in (-pi, pi]
};

/// All K node gains for one fading trial.
using ChannelRealization = std::vector<ChannelGain>;

/// Master seed plus substream id. The same (seed, stream_id) pair always
/// reproduces the same realization bit for bit, so trials can be generated
/// in any order and on any number of threads.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// Wraps an angle to (-pi, pi]; the -pi boundary maps to +pi.
double wrap_phase(double phi);

std::complex<double> to_complex(const ChannelGain& g);

/// Draws K i.i.d. CN(0,1) gains. Each gain is built from two i.i.d. real
/// Gaussians (mean 0, variance 1/2) used as real and imaginary parts, then
/// converted to polar form, so the amplitude is Rayleigh with mean
/// sqrt(pi)/2 and the phase is uniform on (-pi, pi], independent of it.
ChannelRealization sample_channel(std::size_t k, RngSeed rng);

/// Normalized composite gain of the selected nodes,
/// z = (1/sqrt(|s|)) * sum_{k: s_k=1} a_k e^{j*phi_k}.
/// |z|^2 is the normalized received power of (h, s).
std::complex<double> composite_gain(const ChannelRealization& h, const SelectionVector& s);

}  // namespace beamselect
