#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace nvqaoa {

/// Mean photon count per shot I_s for each prepared basis state |s>, indexed
/// by basis index. Entries are finite and nonnegative; the length is 2^n.
/// Degeneracy (vanishing Walsh coefficients) is detected at reconstruction.
class CalibrationTable {
public:
  explicit CalibrationTable(std::vector<double> intensities);

  /// I = (5, 3, 2, 1) photons/shot for |00>, |01>, |10>, |11>.
  static CalibrationTable default_two_qubit();

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return intensities_.size(); }
  std::span<const double> intensities() const noexcept { return intensities_; }
  double operator[](std::size_t s) const { return intensities_[s]; }

  bool operator==(const CalibrationTable&) const = default;

private:
  std::size_t num_qubits_;
  std::vector<double> intensities_;
};

/// Reads `<bitstring> <value>` lines ('#' comments allowed) that must cover
/// every basis state of one register size exactly once. Returns values in
/// basis-index order.
std::vector<double> parse_bit_table(std::istream& in, const std::string& source);
std::vector<double> load_bit_table(const std::string& path);
/// Writes `<bitstring> <value>` lines with 17 significant digits.
std::string bit_table_to_text(std::span<const double> values);

CalibrationTable parse_calibration(std::istream& in, const std::string& source = "<calibration>");
CalibrationTable load_calibration(const std::string& path);

}  // namespace nvqaoa
