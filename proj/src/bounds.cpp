#include "beamselect/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace beamselect {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160272981674833411;

// erf(x) for small x via the cancellation-free confluent series
// erf(x) = (2/sqrt(pi)) x e^{-x^2} sum_n (2x^2)^n / (1*3*...*(2n+1)).
double erf_series(double x) {
  const double x2 = x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return (2.0 / kSqrtPi) * x * std::exp(-x2) * sum;
}

// sqrt(pi) e^{x^2} erfc(x) = 1 / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))));
// the denominator evaluated by modified Lentz.
double erfc_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 300; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-x * x) / (kSqrtPi * f);
}

}  // namespace

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x < 2.5) return 1.0 - erf_series(x);
  return erfc_continued_fraction(x);
}

double f_of_r(double r) {
  const double bracket = erfc(r) + (2.0 * r / kSqrtPi) * std::exp(-r * r);
  return std::exp(r * r) * bracket * bracket;
}

double sector_gain(double alpha) {
  if (!(alpha > 0.0) || alpha > kPi)
    throw std::invalid_argument("sector_gain: alpha must lie in (0, pi]");
  const double s = std::sin(alpha);
  return s * s / (4.0 * alpha);
}

std::pair<double, double> maximize_f() {
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.0, hi = 3.0;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double fc = f_of_r(c);
  double fd = f_of_r(d);
  while (hi - lo > 1e-10) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = f_of_r(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = f_of_r(d);
    }
  }
  const double r = 0.5 * (lo + hi);
  return {r, f_of_r(r)};
}

double maximize_alpha() {
  const auto residual = [](double a) { return std::cos(a) - std::sin(a) / (2.0 * a); };
  double lo = 0.1, hi = kPi - 0.1;  // residual is positive at lo, negative at hi
  for (int i = 0; i < 100 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

BoundConstants bound_constants() {
  BoundConstants b;
  const auto [r_star, f_max] = maximize_f();
  b.r_star = r_star;
  b.f_max = f_max;
  b.alpha_star = maximize_alpha();
  b.upper_c = (kPi / 4.0) * f_max;
  b.lower_c = sector_gain(b.alpha_star) * f_max;
  b.gap_db = 10.0 * std::log10(b.upper_c / b.lower_c);
  b.fraction_ub = std::exp(-r_star * r_star);
  return b;
}

}  // namespace beamselect
