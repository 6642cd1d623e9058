#include "nvqaoa/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nvqaoa/errors.hpp"

namespace nvqaoa {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, std::span<const double> steps,
                           const NelderMeadOptions& options) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw DimensionError("Nelder-Mead needs at least one dimension");
  if (steps.size() != dim) throw DimensionError("initial step count does not match dimension");

  MinimizeResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<Vertex> simplex;
  simplex.reserve(dim + 1);
  simplex.push_back({x0, eval(x0)});
  for (std::size_t i = 0; i < dim; ++i) {
    auto x = x0;
    x[i] += steps[i];
    simplex.push_back({x, eval(x)});
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  std::vector<double> centroid(dim);
  auto along = [&](double t, const std::vector<double>& from) {
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < dim; ++i) x[i] = centroid[i] + t * (from[i] - centroid[i]);
    return x;
  };

  while (result.evaluations < options.max_evaluations) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);

    double diameter = 0.0;
    for (std::size_t k = 1; k <= dim; ++k) {
      for (std::size_t i = 0; i < dim; ++i) diameter = std::max(diameter, std::abs(simplex[k].x[i] - simplex[0].x[i]));
    }
    if (simplex.back().f - simplex.front().f <= options.f_tol && diameter <= options.x_tol) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[k].x[i];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    Vertex& worst = simplex.back();
    const double second_worst = simplex[dim - 1].f;
    Vertex reflected{along(-options.alpha, worst.x), 0.0};
    reflected.f = eval(reflected.x);

    if (reflected.f < simplex.front().f) {
      Vertex expanded{along(-options.alpha * options.gamma, worst.x), 0.0};
      expanded.f = eval(expanded.x);
      worst = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
      continue;
    }
    if (reflected.f < second_worst) {
      worst = std::move(reflected);
      continue;
    }
    const bool outside = reflected.f < worst.f;
    Vertex contracted{outside ? along(-options.alpha * options.rho, worst.x) : along(options.rho, worst.x), 0.0};
    contracted.f = eval(contracted.x);
    if (contracted.f < (outside ? reflected.f : worst.f)) {
      worst = std::move(contracted);
      continue;
    }
    for (std::size_t k = 1; k <= dim; ++k) {
      for (std::size_t i = 0; i < dim; ++i) {
        simplex[k].x[i] = simplex[0].x[i] + options.sigma * (simplex[k].x[i] - simplex[0].x[i]);
      }
      simplex[k].f = eval(simplex[k].x);
    }
  }

  std::stable_sort(simplex.begin(), simplex.end(), by_value);
  result.x = simplex.front().x;
  result.f = simplex.front().f;
  return result;
}

MinimizeResult coordinate_descent(const Objective& f, std::vector<double> x0, std::vector<double> steps,
                                  const CoordinateDescentOptions& options) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw DimensionError("coordinate descent needs at least one dimension");
  if (steps.size() != dim) throw DimensionError("initial step count does not match dimension");
  if (!(options.min_step > 0.0)) throw DomainError("minimum step must be positive");

  MinimizeResult result;
  result.x = std::move(x0);
  result.f = f(result.x);
  result.evaluations = 1;

  auto largest = [&] { return *std::max_element(steps.begin(), steps.end()); };
  while (largest() >= options.min_step) {
    bool moved = false;
    for (std::size_t i = 0; i < dim; ++i) {
      if (steps[i] < options.min_step) continue;
      auto best_x = result.x;
      double best_f = result.f;
      for (double sign : {1.0, -1.0}) {
        if (result.evaluations >= options.max_evaluations) break;
        auto x = result.x;
        x[i] += sign * steps[i];
        const double v = f(x);
        ++result.evaluations;
        if (v < best_f) {
          best_f = v;
          best_x = std::move(x);
        }
      }
      if (best_f < result.f) {
        result.x = std::move(best_x);
        result.f = best_f;
        moved = true;
      }
    }
    if (result.evaluations >= options.max_evaluations) return result;
    if (!moved) {
      for (auto& s : steps) s *= 0.5;
    }
  }
  result.converged = true;
  return result;
}

}  // namespace nvqaoa
