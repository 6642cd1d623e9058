#include "nvqaoa/reconstruction.hpp"

#include <cmath>

#include "nvqaoa/errors.hpp"
#include "nvqaoa/readout.hpp"

namespace nvqaoa {

void walsh_hadamard(std::span<double> v) {
  const std::size_t dim = v.size();
  if (dim == 0 || (dim & (dim - 1)) != 0) throw DimensionError("Walsh-Hadamard length must be a power of two");
  for (std::size_t h = 1; h < dim; h <<= 1U) {
    for (std::size_t i = 0; i < dim; i += h << 1U) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

WalshCoefficients walsh_coefficients(const CalibrationTable& cal) {
  WalshCoefficients out{std::vector<double>(cal.intensities().begin(), cal.intensities().end())};
  walsh_hadamard(out.c);
  const double scale = 1.0 / static_cast<double>(out.c.size());
  for (auto& v : out.c) v *= scale;
  return out;
}

std::vector<double> forward_means(const CalibrationTable& cal, std::span<const double> pops) {
  validate_distribution(pops, cal.size());
  const std::size_t dim = cal.size();
  std::vector<double> means(dim, 0.0);
  for (std::size_t x = 0; x < dim; ++x) {
    double total = 0.0;
    for (std::size_t s = 0; s < dim; ++s) total += cal[s ^ x] * pops[s];
    means[x] = total;
  }
  return means;
}

PopulationEstimate reconstruct(const WalshCoefficients& coeffs, std::span<const double> means, double tolerance) {
  const std::size_t dim = coeffs.c.size();
  if (means.size() != dim) throw DimensionError("means vector length does not match calibration");
  std::size_t num_bits = 0;
  while ((std::size_t{1} << num_bits) < dim) ++num_bits;
  for (std::size_t t = 0; t < dim; ++t) {
    if (!(std::abs(coeffs.c[t]) > tolerance)) throw DegenerateCalibrationError(t, num_bits, coeffs.c[t]);
  }

  PopulationEstimate est;
  est.correlators.assign(means.begin(), means.end());
  walsh_hadamard(est.correlators);
  for (std::size_t t = 0; t < dim; ++t) est.correlators[t] /= static_cast<double>(dim) * coeffs.c[t];

  est.pops = est.correlators;
  walsh_hadamard(est.pops);
  for (auto& p : est.pops) p /= static_cast<double>(dim);
  est.norm = est.correlators[0];
  return est;
}

PopulationEstimate reconstruct(const CalibrationTable& cal, std::span<const double> means, double tolerance) {
  return reconstruct(walsh_coefficients(cal), means, tolerance);
}

}  // namespace nvqaoa
