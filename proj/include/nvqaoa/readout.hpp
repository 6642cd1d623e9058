#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nvqaoa/calibration.hpp"
#include "nvqaoa/circuits.hpp"
#include "nvqaoa/noise.hpp"
#include "nvqaoa/rng.hpp"

namespace nvqaoa {

struct Checkpoint {
  std::uint64_t shots;
  double mean;
};

/// Photon counts of one measured circuit. `counts` is filled only when raw
/// counts are retained; `total`, `running_mean` and `checkpoints` always are.
struct ShotRecord {
  std::vector<std::int64_t> counts;
  std::uint64_t num_shots = 0;
  std::int64_t total = 0;
  double running_mean = 0.0;
  std::vector<Checkpoint> checkpoints;
};

struct SampleOptions {
  std::uint64_t checkpoint_every = 1000;
  /// Per-shot sampling with every count stored. When false, each block of
  /// shots is drawn as a multinomial split over basis outcomes followed by one
  /// Poisson draw per outcome (same distribution for block sums).
  bool retain_counts = false;
};

/// Throws DimensionError / DomainError unless `pops` has length `dim`, sums
/// to 1 within 1e-9 and has no entry below -1e-9.
void validate_distribution(std::span<const double> pops, std::size_t dim);

/// <O> = sum_s I_s pops_s.
double observable_expectation(const CalibrationTable& cal, std::span<const double> pops);

/// Incremental shot accumulator for one circuit, so several circuits can be
/// measured in interleaved blocks from one random stream.
class ShotSampler {
public:
  ShotSampler(const CalibrationTable& cal, std::vector<double> pops, bool retain_counts);

  void sample(std::uint64_t shots, Rng& rng);
  /// Records (shots so far, running mean).
  void checkpoint();

  double mean() const noexcept { return record_.running_mean; }
  std::uint64_t shots() const noexcept { return record_.num_shots; }
  const ShotRecord& record() const noexcept { return record_; }
  ShotRecord take_record() { return std::move(record_); }

private:
  std::vector<double> intensities_;
  std::vector<double> pops_;
  std::vector<double> cumulative_;
  bool retain_counts_;
  ShotRecord record_;
};

/// Each shot: basis outcome s ~ pops, photon count ~ Poisson(I_s).
/// Checkpoints after every `checkpoint_every` shots; deterministic in `seed`.
ShotRecord sample_shots(const CalibrationTable& cal, std::span<const double> pops, std::uint64_t num_shots,
                        std::uint64_t seed, const SampleOptions& options = {});

/// Simulates `c` from |0...0> (through `noise` when given, trajectory seed
/// derived from `seed`) and samples its fluorescence.
ShotRecord measure_circuit(const Circuit& c, const CalibrationTable& cal, std::uint64_t num_shots, std::uint64_t seed,
                           const SampleOptions& options = {}, const NoiseConfig* noise = nullptr);

}  // namespace nvqaoa
