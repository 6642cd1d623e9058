#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nvqaoa/experiment.hpp"

namespace nvqaoa::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kDegenerate = 3,
  kIo = 4,
};

/// Angle in radians from "0.3141", "0.1pi", "-pi" or "0.5*pi".
double parse_angle(std::string_view text);
/// "START:STOP:STEP", each part an angle.
Range parse_range(std::string_view text);
/// Radians with 17 significant digits.
std::string format_angle(double radians);
/// Multiple of pi, e.g. "0.25pi", with 17 significant digits.
std::string format_angle_pi(double radians);

/// Runs one command line (without the program name). Writes human-readable
/// output to `out` and diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nvqaoa::cli
