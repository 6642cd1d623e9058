#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nvqaoa {

using Objective = std::function<double(std::span<const double>)>;

struct MinimizeResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct NelderMeadOptions {
  double alpha = 1.0;  // reflection
  double gamma = 2.0;  // expansion
  double rho = 0.5;    // contraction
  double sigma = 0.5;  // shrink
  /// Stop once the spread of simplex values and the simplex diameter are both below these.
  double f_tol = 1e-12;
  double x_tol = 1e-9;
  std::size_t max_evaluations = 5000;
};

/// Downhill simplex started from x0 with vertices x0 + steps[i] e_i.
MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, std::span<const double> steps,
                           const NelderMeadOptions& options = {});

struct CoordinateDescentOptions {
  double min_step = 1e-3;
  std::size_t max_evaluations = 100000;
};

/// Pattern search along coordinate axes: move to the better of x +/- step_i
/// whenever it strictly improves; after a sweep with no move, halve every
/// step. Stops when all steps are below `min_step`.
MinimizeResult coordinate_descent(const Objective& f, std::vector<double> x0, std::vector<double> steps,
                                  const CoordinateDescentOptions& options = {});

}  // namespace nvqaoa
