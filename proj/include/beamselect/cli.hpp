#pragma once

#include <iosfwd>
#include <string>

#include "beamselect/experiments.hpp"

namespace beamselect::cli {

/// Formats a double with the given number of significant digits, always
/// using '.' as the decimal separator regardless of locale.
std::string format_sig(double value, int digits = 9);

/// RFC-4180-style CSV of a sweep result: fixed column order
/// algorithm,k,mean_power,mean_power_over_k,mean_fraction,std_err,trials
/// with one header row and 9 significant digits per real value.
std::string to_csv(const SweepResult& result);

/// JSON array mirroring the CSV rows (same field order).
std::string to_json(const SweepResult& result);

/// Entry point behind the beamselect binary. Exit codes: 0 success,
/// 2 usage error (unknown algorithm, bad flag), 3 exhaustive complexity
/// guard, 4 output I/O failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace beamselect::cli
