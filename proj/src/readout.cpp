#include "nvqaoa/readout.hpp"

#include <algorithm>
#include <cmath>

#include "nvqaoa/errors.hpp"

namespace nvqaoa {

void validate_distribution(std::span<const double> pops, std::size_t dim) {
  if (pops.size() != dim) throw DimensionError("population vector length does not match calibration");
  double sum = 0.0;
  for (double p : pops) {
    if (!std::isfinite(p)) throw DomainError("populations must be finite");
    if (p < -1e-9) throw DomainError("negative population");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw DomainError("populations must sum to 1");
}

double observable_expectation(const CalibrationTable& cal, std::span<const double> pops) {
  validate_distribution(pops, cal.size());
  double total = 0.0;
  for (std::size_t s = 0; s < pops.size(); ++s) total += cal[s] * pops[s];
  return total;
}

ShotSampler::ShotSampler(const CalibrationTable& cal, std::vector<double> pops, bool retain_counts)
    : intensities_(cal.intensities().begin(), cal.intensities().end()), pops_(std::move(pops)),
      retain_counts_(retain_counts) {
  validate_distribution(pops_, intensities_.size());
  double sum = 0.0;
  for (auto& p : pops_) {
    p = std::max(p, 0.0);
    sum += p;
  }
  for (auto& p : pops_) p /= sum;
  cumulative_.resize(pops_.size());
  double acc = 0.0;
  for (std::size_t s = 0; s < pops_.size(); ++s) {
    acc += pops_[s];
    cumulative_[s] = acc;
  }
  cumulative_.back() = 1.0;
}

void ShotSampler::sample(std::uint64_t shots, Rng& rng) {
  if (shots == 0) return;
  if (retain_counts_) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    record_.counts.reserve(record_.counts.size() + shots);
    for (std::uint64_t k = 0; k < shots; ++k) {
      const double u = unit(rng);
      const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      const auto s = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                                                                      static_cast<std::ptrdiff_t>(pops_.size()) - 1));
      std::int64_t n = 0;
      if (intensities_[s] > 0.0) n = std::poisson_distribution<std::int64_t>(intensities_[s])(rng);
      record_.counts.push_back(n);
      record_.total += n;
    }
  } else {
    // Multinomial split of the block over outcomes, then the sum of k_s
    // Poisson(I_s) counts as one Poisson(k_s I_s) draw.
    auto remaining = static_cast<std::int64_t>(shots);
    double remaining_prob = 1.0;
    for (std::size_t s = 0; s < pops_.size() && remaining > 0; ++s) {
      std::int64_t ks = remaining;
      if (s + 1 < pops_.size()) {
        const double p = remaining_prob > 0.0 ? std::clamp(pops_[s] / remaining_prob, 0.0, 1.0) : 1.0;
        ks = p >= 1.0 ? remaining : (p <= 0.0 ? 0 : std::binomial_distribution<std::int64_t>(remaining, p)(rng));
      }
      remaining -= ks;
      remaining_prob -= pops_[s];
      const double mu = static_cast<double>(ks) * intensities_[s];
      if (mu > 0.0) record_.total += std::poisson_distribution<std::int64_t>(mu)(rng);
    }
  }
  record_.num_shots += shots;
  record_.running_mean = static_cast<double>(record_.total) / static_cast<double>(record_.num_shots);
}

void ShotSampler::checkpoint() { record_.checkpoints.push_back({record_.num_shots, record_.running_mean}); }

ShotRecord sample_shots(const CalibrationTable& cal, std::span<const double> pops, std::uint64_t num_shots,
                        std::uint64_t seed, const SampleOptions& options) {
  if (num_shots == 0) throw DomainError("number of shots must be positive");
  if (options.checkpoint_every == 0) throw DomainError("checkpoint interval must be positive");
  ShotSampler sampler(cal, std::vector<double>(pops.begin(), pops.end()), options.retain_counts);
  Rng rng = make_rng(seed);
  while (sampler.shots() < num_shots) {
    const auto block = std::min(options.checkpoint_every, num_shots - sampler.shots());
    sampler.sample(block, rng);
    if (block == options.checkpoint_every) sampler.checkpoint();
  }
  return sampler.take_record();
}

ShotRecord measure_circuit(const Circuit& c, const CalibrationTable& cal, std::uint64_t num_shots, std::uint64_t seed,
                           const SampleOptions& options, const NoiseConfig* noise) {
  if (c.num_qubits() != cal.num_qubits()) throw DimensionError("circuit and calibration register sizes differ");
  std::vector<double> pops;
  if (noise != nullptr) {
    pops = noisy_populations(c, *noise, derive_seed(seed, {0}));
  } else {
    pops = populations(simulate(c));
  }
  return sample_shots(cal, pops, num_shots, derive_seed(seed, {1}), options);
}

}  // namespace nvqaoa
