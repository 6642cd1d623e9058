#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nvqaoa/calibration.hpp"
#include "nvqaoa/circuits.hpp"
#include "nvqaoa/graph.hpp"
#include "nvqaoa/noise.hpp"

namespace nvqaoa {

/// Inclusive grid start, start + step, ..., up to stop (radians).
struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  void validate() const;
  std::size_t count() const;
  double at(std::size_t i) const { return start + static_cast<double>(i) * step; }
  std::vector<double> values() const;
};

/// beta in [0.1 pi, 0.6 pi] step 0.025 pi (21 values).
Range default_beta_range();
/// gamma in [0.1 pi, 2.1 pi] step 0.05 pi (41 values).
Range default_gamma_range();

enum class ScanMode { ideal, sampled };

struct ScanConfig {
  Graph graph{1};
  std::size_t p = 1;
  Range beta = default_beta_range();
  Range gamma = default_gamma_range();
  std::uint64_t shots = 300000;
  std::size_t realizations = 4;
  ScanMode mode = ScanMode::ideal;
  NoiseConfig noise;
  /// Required in sampled mode; its size must match the graph.
  std::optional<CalibrationTable> calibration;
  std::uint64_t master_seed = 0;
  std::uint64_t checkpoint_every = 1000;
  /// Reconstruct with the configured table instead of measured intensities.
  bool exact_calibration = false;
  /// Worker threads for run_scan; 0 means hardware concurrency.
  std::size_t threads = 1;

  /// Default grid, 3e5 shots, 4 realizations; default calibration for two qubits.
  static ScanConfig standard(Graph g);
  void validate() const;
  /// Ideal mode is exact, so it uses a single realization.
  std::size_t effective_realizations() const { return mode == ScanMode::ideal ? 1 : realizations; }
};

struct PointRecord {
  double beta = 0.0;
  double gamma = 0.0;
  std::size_t realization = 0;
  std::vector<double> pops;
  double norm = 0.0;
  double F_measured = 0.0;
  double F_ideal = 0.0;
  double abs_diff = 0.0;
  bool valid = true;
  std::string error;
};

/// Reconstruction state after a given number of shots per sub-circuit.
struct ConvergenceSample {
  std::uint64_t shots = 0;
  std::vector<double> pops;
  double norm = 0.0;
  bool valid = true;
};

struct PointMeasurement {
  PointRecord record;
  std::vector<ConvergenceSample> trace;
};

/// Points in beta-major, then gamma, then realization order.
struct LandscapeGrid {
  std::size_t n_beta = 0;
  std::size_t n_gamma = 0;
  std::size_t realizations = 1;
  /// max - min of the cost diagonal; normalizes landscape_error.
  double cost_range = 1.0;
  std::vector<PointRecord> points;

  std::size_t invalid_count() const;
};

/// -1/2 + 1/2 sin(4 beta) sin(gamma): the single-edge, p = 1 landscape.
double closed_form_cost_k2(double beta, double gamma);

/// Exact <psi(beta, gamma)| H_C |psi(beta, gamma)>.
double ideal_cost(const Graph& g, const QaoaParams& params);

/// Sampled-mode protocol for one parameter point: 2^n calibration circuits
/// and 2^n flip-pattern ansatz circuits, measured round-robin in blocks of
/// `checkpoint_every` shots, then Walsh-Hadamard reconstruction. The random
/// stream is derived from (master_seed, point_index, realization). A
/// degenerate measured calibration marks the record invalid.
PointMeasurement measure_point(const ScanConfig& cfg, const QaoaParams& params, std::size_t point_index,
                               std::size_t realization, bool with_trace = false);

/// Dispatches on cfg.mode: ideal evaluates the (noise-aware) exact state
/// without shots, sampled runs measure_point.
PointRecord evaluate_point(const ScanConfig& cfg, const QaoaParams& params, std::size_t point_index,
                           std::size_t realization);

LandscapeGrid run_scan(const ScanConfig& cfg);

/// Mean over (beta, gamma) of |mean_realizations(F_measured) - F_ideal|,
/// divided by the cost range. Invalid records are skipped.
double landscape_error(const LandscapeGrid& grid);

enum class Strategy { grid_then_refine, simplex };

struct Evaluation {
  QaoaParams params;
  double F = 0.0;
};

struct OptimizeResult {
  QaoaParams best_params;
  double best_F = 0.0;
  std::vector<Evaluation> trace;
};

/// Coarse scan of cfg's (beta, gamma) grid with shared layer angles, then
/// per-layer refinement by coordinate descent or Nelder-Mead.
OptimizeResult optimize(const ScanConfig& cfg, Strategy strategy);

/// `%.10g`, with "nan" / "inf" spelled out.
std::string format_real(double v, int significant = 10);

/// Header `beta,gamma,realization,F_measured,F_ideal,abs_diff,norm,pops`.
void write_landscape_csv(const LandscapeGrid& grid, std::ostream& out);

/// JSON text with landscape_error, grid dimensions, config echo and seed.
std::string summary_json(const ScanConfig& cfg, const LandscapeGrid& grid);

}  // namespace nvqaoa
