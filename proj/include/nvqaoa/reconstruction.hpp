#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nvqaoa/calibration.hpp"

namespace nvqaoa {

inline constexpr double kDefaultDegeneracyTolerance = 1e-9;

/// c_t = 2^-n sum_s I_s (-1)^{s.t}; the readout observable in the Z-string basis.
struct WalshCoefficients {
  std::vector<double> c;
};

/// Populations recovered from flip-pattern means. Not clipped or
/// renormalized: `norm` is the raw sum and equals the t = 0 correlator.
struct PopulationEstimate {
  std::vector<double> pops;
  std::vector<double> correlators;
  double norm = 0.0;
};

/// Unnormalized in-place Walsh-Hadamard transform: v_t <- sum_s (-1)^{s.t} v_s.
void walsh_hadamard(std::span<double> v);

WalshCoefficients walsh_coefficients(const CalibrationTable& cal);

/// Mean fluorescence for each flip pattern x: means_x = sum_s I_{s xor x} pops_s.
std::vector<double> forward_means(const CalibrationTable& cal, std::span<const double> pops);

/// Inverts forward_means. Throws DegenerateCalibrationError naming the first
/// t with |c_t| <= tolerance.
PopulationEstimate reconstruct(const CalibrationTable& cal, std::span<const double> means,
                               double tolerance = kDefaultDegeneracyTolerance);
PopulationEstimate reconstruct(const WalshCoefficients& coeffs, std::span<const double> means,
                               double tolerance = kDefaultDegeneracyTolerance);

}  // namespace nvqaoa
