#include "nvqaoa/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "nvqaoa/errors.hpp"
#include "nvqaoa/minimize.hpp"
#include "nvqaoa/readout.hpp"
#include "nvqaoa/reconstruction.hpp"
#include "nvqaoa/rng.hpp"

namespace nvqaoa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieTolerance = 1e-12;

// Shared per-scan data so the cost diagonal is enumerated once.
struct ScanContext {
  std::vector<double> diag;
};

ScanContext make_context(const Graph& g) {
  ScanContext ctx;
  ctx.diag = diagonal_costs(g);
  return ctx;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) total += a[k] * b[k];
  return total;
}

double cost_range_of(std::span<const double> diag) {
  const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
  const double range = *hi - *lo;
  return range > 0.0 ? range : 1.0;
}

// Population vector after a trailing X^x layer: pops'_{s xor x} = pops_s.
std::vector<double> flipped_populations(std::span<const double> pops, std::size_t x) {
  std::vector<double> out(pops.size());
  for (std::size_t s = 0; s < pops.size(); ++s) out[s ^ x] = pops[s];
  return out;
}

std::vector<double> basis_distribution(std::size_t dim, std::size_t s) {
  std::vector<double> p(dim, 0.0);
  p[s] = 1.0;
  return p;
}

double ideal_cost_with(const ScanContext& ctx, const Graph& g, const QaoaParams& params) {
  return expectation_diagonal(simulate(build_ansatz(g, params)), ctx.diag);
}

PointMeasurement measure_point_with(const ScanContext& ctx, const ScanConfig& cfg, const QaoaParams& params,
                                    std::size_t point_index, std::size_t realization, bool with_trace) {
  const std::size_t n = cfg.graph.num_vertices();
  const std::size_t dim = std::size_t{1} << n;
  const CalibrationTable& device = *cfg.calibration;
  const std::uint64_t base = derive_seed(cfg.master_seed, {point_index, realization});

  PointMeasurement out;
  PointRecord& rec = out.record;
  rec.beta = params.betas.front();
  rec.gamma = params.gammas.front();
  rec.realization = realization;
  rec.F_ideal = ideal_cost_with(ctx, cfg.graph, params);

  // Calibration circuits see a possibly drifted device; the ansatz readout sees the configured one.
  const CalibrationTable reference = cfg.noise.calibration_sigma > 0.0
                                         ? perturb_calibration(device, cfg.noise.calibration_sigma, derive_seed(base, {3}))
                                         : device;

  const auto ansatz_pops = noisy_populations(build_ansatz(cfg.graph, params), cfg.noise, derive_seed(base, {1}));

  std::vector<ShotSampler> cal_samplers;
  if (!cfg.exact_calibration) {
    cal_samplers.reserve(dim);
    for (std::size_t s = 0; s < dim; ++s) cal_samplers.emplace_back(reference, basis_distribution(dim, s), false);
  }
  std::vector<ShotSampler> flip_samplers;
  flip_samplers.reserve(dim);
  for (std::size_t x = 0; x < dim; ++x) flip_samplers.emplace_back(device, flipped_populations(ansatz_pops, x), false);

  std::vector<double> cal_means(dim);
  std::vector<double> flip_means(dim);
  auto estimate = [&]() -> PopulationEstimate {
    for (std::size_t x = 0; x < dim; ++x) flip_means[x] = flip_samplers[x].mean();
    if (cfg.exact_calibration) return reconstruct(reference, flip_means);
    for (std::size_t s = 0; s < dim; ++s) cal_means[s] = cal_samplers[s].mean();
    return reconstruct(CalibrationTable(cal_means), flip_means);
  };

  Rng rng = make_rng(derive_seed(base, {2}));
  std::uint64_t done = 0;
  while (done < cfg.shots) {
    const std::uint64_t block = std::min(cfg.checkpoint_every, cfg.shots - done);
    for (auto& sampler : cal_samplers) sampler.sample(block, rng);
    for (auto& sampler : flip_samplers) sampler.sample(block, rng);
    done += block;
    if (with_trace && block == cfg.checkpoint_every) {
      ConvergenceSample sample{done, {}, 0.0, true};
      try {
        auto est = estimate();
        sample.pops = std::move(est.pops);
        sample.norm = est.norm;
      } catch (const DegenerateCalibrationError&) {
        sample.valid = false;
        sample.pops.assign(dim, std::numeric_limits<double>::quiet_NaN());
        sample.norm = std::numeric_limits<double>::quiet_NaN();
      }
      out.trace.push_back(std::move(sample));
    }
  }

  try {
    auto est = estimate();
    rec.F_measured = dot(ctx.diag, est.pops);
    rec.pops = std::move(est.pops);
    rec.norm = est.norm;
    rec.abs_diff = std::abs(rec.F_measured - rec.F_ideal);
  } catch (const DegenerateCalibrationError& e) {
    rec.valid = false;
    rec.error = e.what();
    rec.pops.assign(dim, std::numeric_limits<double>::quiet_NaN());
    rec.norm = rec.F_measured = rec.abs_diff = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

PointRecord evaluate_point_with(const ScanContext& ctx, const ScanConfig& cfg, const QaoaParams& params,
                                std::size_t point_index, std::size_t realization) {
  if (cfg.mode == ScanMode::sampled) {
    return measure_point_with(ctx, cfg, params, point_index, realization, false).record;
  }
  PointRecord rec;
  rec.beta = params.betas.front();
  rec.gamma = params.gammas.front();
  rec.realization = realization;
  const auto circuit = build_ansatz(cfg.graph, params);
  const StateVector exact = simulate(circuit);
  rec.F_ideal = expectation_diagonal(exact, ctx.diag);
  if (cfg.noise.is_noiseless()) {
    rec.pops = populations(exact);
  } else {
    rec.pops = noisy_populations(circuit, cfg.noise, derive_seed(cfg.master_seed, {point_index, realization, 1}));
  }
  rec.F_measured = dot(ctx.diag, rec.pops);
  rec.norm = 0.0;
  for (double p : rec.pops) rec.norm += p;
  rec.abs_diff = std::abs(rec.F_measured - rec.F_ideal);
  return rec;
}

template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

bool lexicographically_less(const QaoaParams& a, const QaoaParams& b) {
  if (a.betas != b.betas) return a.betas < b.betas;
  return a.gammas < b.gammas;
}

}  // namespace

void Range::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) throw DomainError("range values must be finite");
  if (!(step > 0.0)) throw DomainError("range step must be positive");
  if (stop < start) throw DomainError("range stop must not precede start");
}

std::size_t Range::count() const {
  validate();
  return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
}

std::vector<double> Range::values() const {
  std::vector<double> out(count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i);
  return out;
}

Range default_beta_range() { return {0.1 * kPi, 0.6 * kPi, 0.025 * kPi}; }
Range default_gamma_range() { return {0.1 * kPi, 2.1 * kPi, 0.05 * kPi}; }

ScanConfig ScanConfig::standard(Graph g) {
  ScanConfig cfg;
  if (g.num_vertices() == 2) cfg.calibration = CalibrationTable::default_two_qubit();
  cfg.graph = std::move(g);
  return cfg;
}

void ScanConfig::validate() const {
  if (graph.num_vertices() > kMaxQubits) throw CapacityError("graph exceeds 24 vertices");
  if (p == 0) throw DomainError("layer count must be at least 1");
  beta.validate();
  gamma.validate();
  if (realizations == 0) throw DomainError("realizations must be positive");
  if (checkpoint_every == 0) throw DomainError("checkpoint interval must be positive");
  noise.validate();
  if (mode == ScanMode::sampled) {
    if (shots == 0) throw DomainError("shots must be positive");
    if (!calibration) throw DomainError("sampled mode needs a calibration table");
  }
  if (calibration && calibration->num_qubits() != graph.num_vertices()) {
    throw DimensionError("calibration table size does not match graph");
  }
}

std::size_t LandscapeGrid::invalid_count() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const PointRecord& p) { return !p.valid; }));
}

double closed_form_cost_k2(double beta, double gamma) { return -0.5 + 0.5 * std::sin(4.0 * beta) * std::sin(gamma); }

double ideal_cost(const Graph& g, const QaoaParams& params) {
  return ideal_cost_with(make_context(g), g, params);
}

PointMeasurement measure_point(const ScanConfig& cfg, const QaoaParams& params, std::size_t point_index,
                               std::size_t realization, bool with_trace) {
  cfg.validate();
  if (cfg.mode != ScanMode::sampled) throw DomainError("measure_point requires sampled mode");
  params.validate();
  return measure_point_with(make_context(cfg.graph), cfg, params, point_index, realization, with_trace);
}

PointRecord evaluate_point(const ScanConfig& cfg, const QaoaParams& params, std::size_t point_index,
                           std::size_t realization) {
  cfg.validate();
  params.validate();
  return evaluate_point_with(make_context(cfg.graph), cfg, params, point_index, realization);
}

LandscapeGrid run_scan(const ScanConfig& cfg) {
  cfg.validate();
  const ScanContext ctx = make_context(cfg.graph);
  LandscapeGrid grid;
  grid.n_beta = cfg.beta.count();
  grid.n_gamma = cfg.gamma.count();
  grid.realizations = cfg.effective_realizations();
  grid.cost_range = cost_range_of(ctx.diag);
  grid.points.resize(grid.n_beta * grid.n_gamma * grid.realizations);

  parallel_for(grid.points.size(), cfg.threads, [&](std::size_t slot) {
    const std::size_t realization = slot % grid.realizations;
    const std::size_t point_index = slot / grid.realizations;
    const std::size_t ib = point_index / grid.n_gamma;
    const std::size_t ig = point_index % grid.n_gamma;
    const auto params = QaoaParams::uniform(cfg.beta.at(ib), cfg.gamma.at(ig), cfg.p);
    PointRecord rec;
    try {
      rec = evaluate_point_with(ctx, cfg, params, point_index, realization);
    } catch (const std::exception& e) {
      rec.beta = params.betas.front();
      rec.gamma = params.gammas.front();
      rec.realization = realization;
      rec.valid = false;
      rec.error = e.what();
      rec.norm = rec.F_measured = rec.F_ideal = rec.abs_diff = std::numeric_limits<double>::quiet_NaN();
    }
    grid.points[slot] = std::move(rec);
  });
  return grid;
}

double landscape_error(const LandscapeGrid& grid) {
  if (grid.points.empty()) throw DomainError("landscape_error needs a non-empty grid");
  const std::size_t r = std::max<std::size_t>(grid.realizations, 1);
  if (grid.points.size() % r != 0) throw DimensionError("point count is not a multiple of the realization count");
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t i = 0; i < grid.points.size(); i += r) {
    double sum = 0.0;
    std::size_t valid = 0;
    for (std::size_t k = i; k < i + r; ++k) {
      if (!grid.points[k].valid) continue;
      sum += grid.points[k].F_measured;
      ++valid;
    }
    if (valid == 0) continue;
    total += std::abs(sum / static_cast<double>(valid) - grid.points[i].F_ideal);
    ++counted;
  }
  if (counted == 0) throw DomainError("landscape_error: no valid points");
  return total / static_cast<double>(counted) / grid.cost_range;
}

OptimizeResult optimize(const ScanConfig& cfg, Strategy strategy) {
  cfg.validate();
  const ScanContext ctx = make_context(cfg.graph);
  OptimizeResult result;
  const std::size_t p = cfg.p;

  auto evaluate = [&](const QaoaParams& params) {
    // Sampled evaluations draw from their own substream index.
    const std::size_t index = (std::size_t{1} << 40U) + result.trace.size();
    const PointRecord rec = evaluate_point_with(ctx, cfg, params, index, 0);
    const double F = rec.valid ? rec.F_measured : std::numeric_limits<double>::infinity();
    result.trace.push_back({params, F});
    return F;
  };
  auto to_params = [p](std::span<const double> v) {
    QaoaParams params;
    params.betas.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(p));
    params.gammas.assign(v.begin() + static_cast<std::ptrdiff_t>(p), v.end());
    return params;
  };

  const auto betas = cfg.beta.values();
  const auto gammas = cfg.gamma.values();
  QaoaParams start = QaoaParams::uniform(betas.front(), gammas.front(), p);
  double start_F = std::numeric_limits<double>::infinity();
  for (double b : betas) {
    for (double g : gammas) {
      const auto params = QaoaParams::uniform(b, g, p);
      const double F = evaluate(params);
      if (F < start_F - kTieTolerance) {
        start_F = F;
        start = params;
      }
    }
  }

  std::vector<double> x0(start.betas);
  x0.insert(x0.end(), start.gammas.begin(), start.gammas.end());
  std::vector<double> steps(p, cfg.beta.step);
  steps.insert(steps.end(), p, cfg.gamma.step);
  const Objective objective = [&](std::span<const double> v) { return evaluate(to_params(v)); };

  if (strategy == Strategy::grid_then_refine) {
    coordinate_descent(objective, x0, steps);
  } else {
    nelder_mead(objective, x0, steps);
  }

  // Best over every evaluation; near-ties go to the lexicographically smallest angles.
  const Evaluation* best = &result.trace.front();
  for (const auto& e : result.trace) {
    if (e.F < best->F - kTieTolerance ||
        (std::abs(e.F - best->F) <= kTieTolerance && lexicographically_less(e.params, best->params))) {
      best = &e;
    }
  }
  result.best_params = best->params;
  result.best_F = best->F;
  return result;
}

std::string format_real(double v, int significant) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, v);
  return buf;
}

void write_landscape_csv(const LandscapeGrid& grid, std::ostream& out) {
  out << "beta,gamma,realization,F_measured,F_ideal,abs_diff,norm,pops\n";
  for (const auto& p : grid.points) {
    out << format_real(p.beta) << ',' << format_real(p.gamma) << ',' << p.realization << ','
        << format_real(p.F_measured) << ',' << format_real(p.F_ideal) << ',' << format_real(p.abs_diff) << ','
        << format_real(p.norm) << ',';
    for (std::size_t k = 0; k < p.pops.size(); ++k) {
      if (k > 0) out << '|';
      out << format_real(p.pops[k]);
    }
    out << '\n';
  }
}

std::string summary_json(const ScanConfig& cfg, const LandscapeGrid& grid) {
  nlohmann::ordered_json j;
  const std::size_t invalid = grid.invalid_count();
  if (invalid < grid.points.size()) {
    j["landscape_error"] = landscape_error(grid);
  } else {
    j["landscape_error"] = nullptr;
  }
  j["n_beta"] = grid.n_beta;
  j["n_gamma"] = grid.n_gamma;
  j["realizations"] = grid.realizations;
  j["points"] = grid.points.size();
  j["invalid_points"] = invalid;
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    if (!grid.points[i].valid) failures.push_back({{"index", i}, {"error", grid.points[i].error}});
  }
  j["failures"] = failures;
  j["cost_range"] = grid.cost_range;

  nlohmann::ordered_json c;
  c["num_vertices"] = cfg.graph.num_vertices();
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& e : cfg.graph.edges()) edges.push_back({e.u, e.v, e.weight});
  c["edges"] = edges;
  c["p"] = cfg.p;
  c["beta"] = {cfg.beta.start, cfg.beta.stop, cfg.beta.step};
  c["gamma"] = {cfg.gamma.start, cfg.gamma.stop, cfg.gamma.step};
  c["mode"] = cfg.mode == ScanMode::ideal ? "ideal" : "sampled";
  c["shots"] = cfg.shots;
  c["checkpoint_every"] = cfg.checkpoint_every;
  c["exact_calibration"] = cfg.exact_calibration;
  if (cfg.calibration) {
    c["calibration"] = std::vector<double>(cfg.calibration->intensities().begin(), cfg.calibration->intensities().end());
  }
  c["noise"] = nlohmann::ordered_json::parse(to_json(cfg.noise));
  j["config"] = c;
  j["seed"] = cfg.master_seed;
  return j.dump(2) + "\n";
}

}  // namespace nvqaoa
