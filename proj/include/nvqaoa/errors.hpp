#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nvqaoa {

/// Vector or register sizes that do not agree.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A value outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Request exceeds the dense-simulation cap.
class CapacityError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// Qubit or vertex index outside the register.
class IndexError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (graph, calibration, means, noise config).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A Walsh coefficient c_t of the calibration vanishes, so the readout map
/// cannot be inverted. Carries the offending index t and its bit width.
class DegenerateCalibrationError : public std::runtime_error {
public:
  DegenerateCalibrationError(std::size_t t_index, std::size_t num_bits, double value);

  std::size_t t_index() const noexcept { return t_index_; }
  std::size_t num_bits() const noexcept { return num_bits_; }
  double value() const noexcept { return value_; }

private:
  std::size_t t_index_;
  std::size_t num_bits_;
  double value_;
};

}  // namespace nvqaoa
