#include "nvqaoa/errors.hpp"

#include "nvqaoa/graph.hpp"

namespace nvqaoa {

DegenerateCalibrationError::DegenerateCalibrationError(std::size_t t_index, std::size_t num_bits,
                                                       double value)
    : std::runtime_error("degenerate calibration: Walsh coefficient c_t vanishes at t=" +
                         BitString::from_index(t_index, num_bits).to_string() + " (c_t = " +
                         std::to_string(value) + ")"),
      t_index_(t_index),
      num_bits_(num_bits),
      value_(value) {}

}  // namespace nvqaoa
