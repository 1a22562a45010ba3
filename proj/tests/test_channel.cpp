#include "beamselect/channel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"

using namespace beamselect;

namespace {
const double kPi = oracles::kPi;

SelectionVector select_all(std::size_t k) {
  SelectionVector s(k);
  for (std::size_t i = 0; i < k; ++i) s.set(i);
  return s;
}
}  // namespace

TEST_CASE("wrap_phase maps to (-pi, pi]") {
  CHECK(wrap_phase(0.0) == 0.0);
  CHECK(wrap_phase(kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(2.0 * kPi) == doctest::Approx(0.0).epsilon(1e-12));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 10000; ++i) {
    const double w = wrap_phase(u(rng));
    CHECK(w > -kPi);
    CHECK(w <= kPi);
  }
}

TEST_CASE("sample_channel basic contract") {
  const ChannelRealization h = sample_channel(1, {42, 0});
  REQUIRE(h.size() == 1);
  CHECK(h[0].amplitude >= 0.0);
  CHECK(h[0].phase > -kPi);
  CHECK(h[0].phase <= kPi);
  CHECK_THROWS_AS(sample_channel(0, {42, 0}), std::invalid_argument);
}

TEST_CASE("sample_channel reproducibility and substream independence") {
  const ChannelRealization a = sample_channel(64, {123, 5});
  const ChannelRealization b = sample_channel(64, {123, 5});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].amplitude == b[i].amplitude);
    CHECK(a[i].phase == b[i].phase);
  }
  const ChannelRealization c = sample_channel(64, {123, 6});
  bool any_different = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].amplitude != c[i].amplitude) any_different = true;
  CHECK(any_different);
}

TEST_CASE("sample_channel marginals match the Rayleigh/uniform model") {
  // One long realization gives 10^6 i.i.d. draws.
  const std::size_t n = 1000000;
  const ChannelRealization h = sample_channel(n, {2024, 0});
  double amp_sum = 0.0, amp2_sum = 0.0, phase_sum = 0.0;
  std::size_t above = 0;
  for (const ChannelGain& g : h) {
    amp_sum += g.amplitude;
    amp2_sum += g.amplitude * g.amplitude;
    phase_sum += g.phase;
    if (g.amplitude >= 0.5316) ++above;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  CHECK(std::abs(amp_sum * inv_n - std::sqrt(kPi) / 2.0) < 0.003);
  // |h|^2 is exponential with unit mean
  CHECK(std::abs(amp2_sum * inv_n - 1.0) < 0.005);
  // Pr(a >= 0.5316) = e^{-0.5316^2}
  CHECK(std::abs(static_cast<double>(above) * inv_n - std::exp(-0.5316 * 0.5316)) < 0.003);
  CHECK(std::abs(static_cast<double>(above) * inv_n - 0.7538) < 0.003);
  // phase is symmetric around zero
  CHECK(std::abs(phase_sum * inv_n) < 0.01);
}

TEST_CASE("sample_channel amplitude/phase are uncorrelated") {
  const std::size_t n = 200000;
  const ChannelRealization h = sample_channel(n, {99, 1});
  double cov = 0.0, amp_mean = 0.0, phase_mean = 0.0;
  for (const ChannelGain& g : h) {
    amp_mean += g.amplitude;
    phase_mean += g.phase;
  }
  amp_mean /= static_cast<double>(n);
  phase_mean /= static_cast<double>(n);
  for (const ChannelGain& g : h) cov += (g.amplitude - amp_mean) * (g.phase - phase_mean);
  cov /= static_cast<double>(n);
  CHECK(std::abs(cov) < 0.01);
}

TEST_CASE("composite_gain identity and antiphase cases") {
  ChannelRealization h{{1.0, 0.0}};
  SelectionVector s(1);
  s.set(0);
  const std::complex<double> z = composite_gain(h, s);
  CHECK(z.real() == doctest::Approx(1.0));
  CHECK(z.imag() == doctest::Approx(0.0));

  ChannelRealization pair{{1.0, 0.0}, {1.0, kPi}};
  const std::complex<double> zero = composite_gain(pair, select_all(2));
  CHECK(std::abs(zero) < 1e-15);
}

TEST_CASE("composite_gain matches direct evaluation on the three-node instance") {
  const ChannelRealization h{{1.2, 0.0}, {0.9, 0.4}, {0.3, 2.8}};
  SelectionVector s(3);
  s.set(0);
  s.set(1);
  const std::complex<double> expected = oracles::composite_direct(h, {0, 1});
  const std::complex<double> actual = composite_gain(h, s);
  CHECK(actual.real() == doctest::Approx(expected.real()).epsilon(1e-14));
  CHECK(actual.imag() == doctest::Approx(expected.imag()).epsilon(1e-14));
  CHECK(std::norm(actual) == doctest::Approx(2.1198).epsilon(1e-4));
}

TEST_CASE("composite_gain rejects empty and mismatched selections") {
  const ChannelRealization h{{1.0, 0.0}, {2.0, 1.0}};
  CHECK_THROWS_AS(composite_gain(h, SelectionVector(2)), std::invalid_argument);
  CHECK_THROWS_AS(composite_gain(h, select_all(3)), std::invalid_argument);
}

TEST_CASE("composite_gain transforms: scale, rotation, joint permutation") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> amp(0.01, 3.0);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t k = 2 + rng() % 8;
    ChannelRealization h(k);
    SelectionVector s(k);
    for (std::size_t i = 0; i < k; ++i) {
      h[i] = {amp(rng), ph(rng)};
      s.set(i, unit(rng) < 0.6);
    }
    if (s.none()) s.set(0);
    const std::complex<double> base = composite_gain(h, s);

    const double c = 0.1 + 5.0 * unit(rng);
    ChannelRealization scaled = h;
    for (auto& g : scaled) g.amplitude *= c;
    const std::complex<double> zs = composite_gain(scaled, s);
    CHECK(std::abs(zs - c * base) <= 1e-12 * (1.0 + std::abs(base)) * c);

    const double theta = ph(rng);
    ChannelRealization rotated = h;
    for (auto& g : rotated) g.phase = wrap_phase(g.phase + theta);
    const std::complex<double> zr = composite_gain(rotated, s);
    const std::complex<double> expect = base * std::polar(1.0, theta);
    CHECK(std::abs(zr - expect) <= 1e-12 * (1.0 + std::abs(base)));
    CHECK(std::abs(std::abs(zr) - std::abs(base)) <= 1e-12 * (1.0 + std::abs(base)));

    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    ChannelRealization hp(k);
    SelectionVector sp(k);
    for (std::size_t i = 0; i < k; ++i) {
      hp[perm[i]] = h[i];
      sp.set(perm[i], s.test(i));
    }
    const std::complex<double> zp = composite_gain(hp, sp);
    CHECK(std::abs(zp - base) <= 1e-12 * (1.0 + std::abs(base)));
  }
}
