#pragma once

#include <utility>

namespace beamselect {

/// Constants behind the asymptotic normalized-power bounds
///   lower_c <= lim P_opt / K <= upper_c.
struct BoundConstants {
  double r_star = 0.0;       ///< optimal amplitude threshold, argmax f(r)
  double f_max = 0.0;        ///< f(r_star)
  double alpha_star = 0.0;   ///< optimal sector half-angle, radians
  double upper_c = 0.0;      ///< (pi/4) * f_max, ~0.8521
  double lower_c = 0.0;      ///< sector_gain(alpha_star) * f_max, ~0.1965
  double gap_db = 0.0;       ///< 10 log10(upper_c / lower_c), ~6.37 dB
  double fraction_ub = 0.0;  ///< e^{-r_star^2}, asymptotic selected fraction ~0.7538
};

/// Complementary error function, (2/sqrt(pi)) * integral_x^inf e^{-t^2} dt.
/// Series below the crossover, continued fraction above; absolute error
/// under 1e-14 for |x| <= 6.
double erfc(double x);

/// f(r) = e^{r^2} [erfc(r) + (2r/sqrt(pi)) e^{-r^2}]^2, the threshold-rule
/// power factor. f(0) = 1; unimodal on [0, 3].
double f_of_r(double r);

/// Sector power factor sin^2(alpha) / (4 alpha) for alpha in (0, pi].
double sector_gain(double alpha);

/// Golden-section maximization of f on [0, 3]; returns (r_star, f_max).
std::pair<double, double> maximize_f();

/// Solves cos(alpha) = sin(alpha) / (2 alpha) on (0, pi) by bisection; the
/// root maximizes sector_gain.
double maximize_alpha();

BoundConstants bound_constants();

}  // namespace beamselect
