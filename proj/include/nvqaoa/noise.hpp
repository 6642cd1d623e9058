#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nvqaoa/calibration.hpp"
#include "nvqaoa/circuits.hpp"
#include "nvqaoa/rng.hpp"
#include "nvqaoa/statevector.hpp"

namespace nvqaoa {

/// Trajectory-level error channels. All-zero values reproduce the exact
/// simulator.
struct NoiseConfig {
  /// Per gate and touched qubit: probability of a uniformly random X, Y or Z.
  double depolarizing_prob = 0.0;
  /// Rotation angles (RX, RY, RZ, RZZ) are scaled by (1 + overrotation_frac).
  double overrotation_frac = 0.0;
  /// RZ(phase_offset) on `phase_qubit` after every two-qubit gate.
  double phase_offset = 0.0;
  std::size_t phase_qubit = 0;
  /// Relative Gaussian spread of the calibration intensities.
  double calibration_sigma = 0.0;
  std::uint64_t seed = 0;
  /// Trajectories averaged when depolarizing_prob > 0.
  std::size_t trajectories = 1000;

  void validate() const;
  bool is_noiseless() const noexcept {
    return depolarizing_prob == 0.0 && overrotation_frac == 0.0 && phase_offset == 0.0 && calibration_sigma == 0.0;
  }
  /// True when gate noise needs more than one trajectory.
  bool is_stochastic() const noexcept { return depolarizing_prob > 0.0; }
  bool operator==(const NoiseConfig&) const = default;
};

StateVector apply_noisy_gate(const StateVector& s, const Gate& g, const NoiseConfig& cfg, Rng& rng);
void apply_noisy_gate_inplace(StateVector& s, const Gate& g, const NoiseConfig& cfg, Rng& rng);

/// One stochastic unraveling of `c` from |0...0>.
StateVector run_trajectory(const Circuit& c, const NoiseConfig& cfg, Rng& rng);

/// Calls `visit` for each trajectory state. A deterministic config yields a
/// single trajectory; otherwise `cfg.trajectories`, trajectory k drawing from
/// derive_seed(seed, {k}).
void for_each_trajectory(const Circuit& c, const NoiseConfig& cfg, std::uint64_t seed,
                         const std::function<void(const StateVector&)>& visit);

/// Trajectory-averaged computational-basis populations.
std::vector<double> noisy_populations(const Circuit& c, const NoiseConfig& cfg, std::uint64_t seed);

/// I_s * max(0, 1 + N(0, sigma)) independently per entry.
CalibrationTable perturb_calibration(const CalibrationTable& cal, double sigma, std::uint64_t seed);

NoiseConfig parse_noise_config(const std::string& json_text);
NoiseConfig load_noise_config(const std::string& path);
std::string to_json(const NoiseConfig& cfg);

}  // namespace nvqaoa
