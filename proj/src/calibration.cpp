#include "nvqaoa/calibration.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>

#include "nvqaoa/errors.hpp"
#include "nvqaoa/graph.hpp"

namespace nvqaoa {

CalibrationTable::CalibrationTable(std::vector<double> intensities) : num_qubits_(0), intensities_(std::move(intensities)) {
  const std::size_t dim = intensities_.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) throw DimensionError("calibration table length must be a power of two >= 2");
  while ((std::size_t{1} << num_qubits_) < dim) ++num_qubits_;
  if (num_qubits_ > kMaxQubits) throw CapacityError("calibration table exceeds 24 qubits");
  for (double v : intensities_) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("calibration intensities must be finite and nonnegative");
  }
}

CalibrationTable CalibrationTable::default_two_qubit() { return CalibrationTable({5.0, 3.0, 2.0, 1.0}); }

std::vector<double> parse_bit_table(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> width;
  std::vector<double> values;
  std::vector<bool> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    std::string bits;
    double value = 0.0;
    if (!(row >> bits >> value)) throw ParseError(source, lineno, "expected '<bitstring> <value>'");
    std::string rest;
    if (row >> rest) throw ParseError(source, lineno, "trailing text");
    BitString b;
    try {
      b = BitString::parse(bits);
    } catch (const DomainError&) {
      throw ParseError(source, lineno, "invalid bit string '" + bits + "'");
    }
    if (b.size() == 0 || b.size() > kMaxQubits) throw ParseError(source, lineno, "bit string length must be in [1, 24]");
    if (!width) {
      width = b.size();
      values.assign(std::size_t{1} << *width, 0.0);
      seen.assign(values.size(), false);
    } else if (b.size() != *width) {
      throw ParseError(source, lineno, "inconsistent bit string length");
    }
    if (!std::isfinite(value)) throw ParseError(source, lineno, "value must be finite");
    const auto k = b.to_index();
    if (seen[k]) throw ParseError(source, lineno, "duplicate entry for " + bits);
    seen[k] = true;
    values[k] = value;
  }
  if (!width) throw ParseError(source, lineno, "no entries");
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (!seen[k]) throw ParseError(source, lineno, "missing entry for " + BitString::from_index(k, *width).to_string());
  }
  return values;
}

std::vector<double> load_bit_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_bit_table(in, path);
}

std::string bit_table_to_text(std::span<const double> values) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < values.size()) ++n;
  std::string out;
  char buf[64];
  for (std::size_t k = 0; k < values.size(); ++k) {
    std::snprintf(buf, sizeof buf, " %.17g\n", values[k]);
    out += BitString::from_index(k, n).to_string();
    out += buf;
  }
  return out;
}

CalibrationTable parse_calibration(std::istream& in, const std::string& source) {
  auto values = parse_bit_table(in, source);
  for (double v : values) {
    if (v < 0.0) throw ParseError(source, 0, "calibration intensities must be nonnegative");
  }
  if (values.size() < 2) throw ParseError(source, 0, "calibration needs at least one qubit (two states)");
  return CalibrationTable(std::move(values));
}

CalibrationTable load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open calibration file '" + path + "'");
  return parse_calibration(in, path);
}

}  // namespace nvqaoa
