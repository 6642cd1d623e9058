#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "nvqaoa/calibration.hpp"
#include "nvqaoa/errors.hpp"
#include "nvqaoa/graph.hpp"
#include "nvqaoa/noise.hpp"
#include "nvqaoa/readout.hpp"
#include "nvqaoa/reconstruction.hpp"

namespace fs = std::filesystem;

namespace nvqaoa::cli {

namespace {

constexpr double kPi = std::numbers::pi;

/// Bad flags or configuration; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Failure writing outputs; maps to exit code 4.
class OutputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw UsageError("empty number");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("invalid number '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw UsageError("invalid number '" + s + "'");
  return v;
}

std::uint64_t parse_seed(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw UsageError("invalid seed '" + text + "'");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw UsageError("invalid seed '" + text + "'");
  }
}

/// --seed, then NVQAOA_SEED, then 0.
std::uint64_t resolve_seed(const std::string& flag) {
  if (!flag.empty()) return parse_seed(flag);
  if (const char* env = std::getenv("NVQAOA_SEED"); env != nullptr && *env != '\0') return parse_seed(env);
  return 0;
}

std::string absolute(const std::string& path) { return fs::absolute(path).lexically_normal().string(); }

std::string range_text(const Range& r) {
  return format_angle(r.start) + ":" + format_angle(r.stop) + ":" + format_angle(r.step);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw OutputError("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw OutputError("write failed for '" + path.string() + "'");
}

void prepare_out_dir(const std::string& dir, const std::vector<std::string>& files, bool force) {
  if (dir.empty()) throw UsageError("--out is required");
  if (!force) {
    for (const auto& f : files) {
      if (fs::exists(fs::path(dir) / f)) {
        throw UsageError("output '" + (fs::path(dir) / f).string() + "' exists; pass --force to overwrite");
      }
    }
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create output directory '" + dir + "': " + ec.message());
}

/// Options shared by the commands that run the measurement model.
struct ModelOptions {
  std::string graph;
  std::size_t p = 1;
  std::string mode = "ideal";
  std::uint64_t shots = 300000;
  std::size_t realizations = 4;
  std::string seed;
  std::string cal;
  std::string noise;
  std::uint64_t checkpoint_every = 1000;
  bool exact_cal = false;
};

void add_model_options(CLI::App* app, ModelOptions& o, bool mode_default_sampled) {
  if (mode_default_sampled) o.mode = "sampled";
  app->add_option("--graph", o.graph, "graph file")->required();
  app->add_option("--p", o.p, "QAOA layers")->check(CLI::PositiveNumber);
  app->add_option("--mode", o.mode, "ideal | sampled")->check(CLI::IsMember({"ideal", "sampled"}));
  app->add_option("--shots", o.shots, "shots per sub-circuit")->check(CLI::PositiveNumber);
  app->add_option("--realizations", o.realizations, "repetitions per parameter point")->check(CLI::PositiveNumber);
  app->add_option("--seed", o.seed, "master seed (falls back to NVQAOA_SEED)");
  app->add_option("--cal", o.cal, "calibration table file");
  app->add_option("--noise", o.noise, "noise config (JSON)");
  app->add_option("--checkpoint-every", o.checkpoint_every, "shots per checkpoint block")->check(CLI::PositiveNumber);
  app->add_flag("--exact-cal", o.exact_cal, "reconstruct with the configured calibration instead of measuring it");
}

ScanConfig build_config(const ModelOptions& o) {
  ScanConfig cfg;
  try {
    cfg.graph = load_graph(o.graph);
    if (!o.cal.empty()) cfg.calibration = load_calibration(o.cal);
    if (!o.noise.empty()) cfg.noise = load_noise_config(o.noise);
  } catch (const IoError& e) {
    throw UsageError(e.what());
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  cfg.p = o.p;
  cfg.mode = o.mode == "sampled" ? ScanMode::sampled : ScanMode::ideal;
  cfg.shots = o.shots;
  cfg.realizations = o.realizations;
  cfg.master_seed = resolve_seed(o.seed);
  cfg.checkpoint_every = o.checkpoint_every;
  cfg.exact_calibration = o.exact_cal;
  if (!cfg.calibration && cfg.mode == ScanMode::sampled) {
    if (cfg.graph.num_vertices() != 2) throw UsageError("sampled mode needs --cal for graphs with other than 2 vertices");
    cfg.calibration = CalibrationTable::default_two_qubit();
  }
  return cfg;
}

std::vector<std::string> resolved_model_args(const ModelOptions& o, const ScanConfig& cfg) {
  std::vector<std::string> a = {"--graph", absolute(o.graph), "--p", std::to_string(cfg.p), "--mode", o.mode,
                                "--shots", std::to_string(cfg.shots), "--realizations",
                                std::to_string(cfg.realizations), "--seed", std::to_string(cfg.master_seed),
                                "--checkpoint-every", std::to_string(cfg.checkpoint_every)};
  if (!o.cal.empty()) a.insert(a.end(), {"--cal", absolute(o.cal)});
  if (!o.noise.empty()) a.insert(a.end(), {"--noise", absolute(o.noise)});
  if (o.exact_cal) a.emplace_back("--exact-cal");
  return a;
}

std::string manifest_text(const std::string& command, const std::vector<std::string>& args, std::uint64_t seed,
                          const std::vector<std::string>& artifacts, double seconds) {
  std::ostringstream m;
  m << "# nvqaoa run manifest; re-run with: nvqaoa rerun --manifest <this file> --out <dir>\n";
  m << "tool_version = " << kToolVersion << "\n";
  m << "command = " << command << "\n";
  m << "seed = " << seed << "\n";
  m << "arg = " << command << "\n";
  for (const auto& a : args) m << "arg = " << a << "\n";
  for (const auto& a : artifacts) m << "artifact = " << a << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  m << "duration_seconds = " << buf << "\n";
  return m.str();
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string svg_heatmap(const LandscapeGrid& grid) {
  const std::size_t cell = 12;
  const std::size_t r = std::max<std::size_t>(grid.realizations, 1);
  std::vector<double> values(grid.n_beta * grid.n_gamma, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double sum = 0.0;
    std::size_t valid = 0;
    for (std::size_t k = i * r; k < (i + 1) * r; ++k) {
      if (grid.points[k].valid) {
        sum += grid.points[k].F_measured;
        ++valid;
      }
    }
    if (valid > 0) values[i] = sum / static_cast<double>(valid);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi > lo ? hi - lo : 1.0;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << grid.n_gamma * cell << "\" height=\""
    << grid.n_beta * cell << "\">\n";
  s << "<!-- x: gamma ascending, y: beta ascending upward, gray: F (dark = low) -->\n";
  for (std::size_t ib = 0; ib < grid.n_beta; ++ib) {
    for (std::size_t ig = 0; ig < grid.n_gamma; ++ig) {
      const double v = values[ib * grid.n_gamma + ig];
      const int level = std::isnan(v) ? 0 : static_cast<int>(std::lround(255.0 * (v - lo) / span));
      const std::string fill = std::isnan(v) ? "rgb(255,0,0)"
                                             : "rgb(" + std::to_string(level) + "," + std::to_string(level) + "," +
                                                   std::to_string(level) + ")";
      s << "<rect x=\"" << ig * cell << "\" y=\"" << (grid.n_beta - 1 - ib) * cell << "\" width=\"" << cell
        << "\" height=\"" << cell << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

// ---------------------------------------------------------------- landscape

struct LandscapeOptions {
  ModelOptions model;
  std::string beta = "0.1pi:0.6pi:0.025pi";
  std::string gamma = "0.1pi:2.1pi:0.05pi";
  std::string out;
  std::size_t threads = 0;
  bool force = false;
  bool svg = false;
};

int cmd_landscape(const LandscapeOptions& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  ScanConfig cfg = build_config(o.model);
  cfg.beta = parse_range(o.beta);
  cfg.gamma = parse_range(o.gamma);
  cfg.threads = o.threads;
  try {
    cfg.validate();
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }

  std::vector<std::string> files = {"landscape.csv", "summary.txt", "manifest.txt"};
  if (o.svg) files.emplace_back("landscape.svg");
  prepare_out_dir(o.out, files, o.force);

  const LandscapeGrid grid = run_scan(cfg);
  std::ostringstream csv;
  write_landscape_csv(grid, csv);
  const fs::path dir(o.out);
  write_file(dir / "landscape.csv", csv.str());
  write_file(dir / "summary.txt", summary_json(cfg, grid));
  if (o.svg) write_file(dir / "landscape.svg", svg_heatmap(grid));

  auto args = resolved_model_args(o.model, cfg);
  args.insert(args.end(), {"--beta", range_text(cfg.beta), "--gamma", range_text(cfg.gamma), "--out", absolute(o.out)});
  if (o.svg) args.emplace_back("--svg");
  std::vector<std::string> artifacts;
  for (const auto& f : files) artifacts.push_back((dir / f).string());
  write_file(dir / "manifest.txt", manifest_text("landscape", args, cfg.master_seed, artifacts, elapsed_since(t0)));

  const std::size_t invalid = grid.invalid_count();
  out << "points: " << grid.points.size() << " (" << grid.n_beta << " beta x " << grid.n_gamma << " gamma x "
      << grid.realizations << " realizations)\n";
  out << "invalid points: " << invalid << "\n";
  if (invalid < grid.points.size()) out << "landscape_error: " << format_real(landscape_error(grid), 6) << "\n";
  out << "wrote " << (dir / "landscape.csv").string() << "\n";
  if (static_cast<double>(invalid) > 0.01 * static_cast<double>(grid.points.size())) {
    return kDegenerate;
  }
  return kOk;
}

// ----------------------------------------------------------------- optimize

struct OptimizeOptions {
  ModelOptions model;
  std::string beta = "0.1pi:0.6pi:0.025pi";
  std::string gamma = "0.1pi:2.1pi:0.05pi";
  std::string strategy = "grid";
  std::string out;
  bool force = false;
};

int cmd_optimize(const OptimizeOptions& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  ScanConfig cfg = build_config(o.model);
  cfg.beta = parse_range(o.beta);
  cfg.gamma = parse_range(o.gamma);
  try {
    cfg.validate();
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }
  if (!o.out.empty()) prepare_out_dir(o.out, {"trace.csv", "manifest.txt"}, o.force);

  const auto strategy = o.strategy == "simplex" ? Strategy::simplex : Strategy::grid_then_refine;
  const OptimizeResult res = optimize(cfg, strategy);
  const CutReport cuts = brute_force(cfg.graph);

  char buf[64];
  for (std::size_t k = 0; k < res.best_params.depth(); ++k) {
    out << "best_beta[" << k << "] = " << format_angle(res.best_params.betas[k]) << " ("
        << format_angle_pi(res.best_params.betas[k]) << ")\n";
    out << "best_gamma[" << k << "] = " << format_angle(res.best_params.gammas[k]) << " ("
        << format_angle_pi(res.best_params.gammas[k]) << ")\n";
  }
  std::snprintf(buf, sizeof buf, "%.6f", res.best_F);
  out << "F=" << buf << "\n";
  out << "evaluations = " << res.trace.size() << "\n";
  out << "best_cut_cost = " << format_real(cuts.best_cost) << "\n";
  out << "optimal_cuts = {";
  for (std::size_t i = 0; i < cuts.best_strings.size(); ++i) out << (i ? "," : "") << cuts.best_strings[i].to_string();
  out << "}\n";
  if (cfg.graph.edges().empty()) {
    out << "note: degenerate problem (no edges); every cut costs 0\n";
  } else {
    std::snprintf(buf, sizeof buf, "%.6f", res.best_F / cuts.best_cost);
    out << "approximation_ratio = " << buf << "\n";
  }

  if (!o.out.empty()) {
    const fs::path dir(o.out);
    std::ostringstream csv;
    csv << "evaluation,F";
    for (std::size_t k = 0; k < cfg.p; ++k) csv << ",beta" << k;
    for (std::size_t k = 0; k < cfg.p; ++k) csv << ",gamma" << k;
    csv << "\n";
    for (std::size_t i = 0; i < res.trace.size(); ++i) {
      const auto& e = res.trace[i];
      csv << i << ',' << format_real(e.F);
      for (double b : e.params.betas) csv << ',' << format_real(b);
      for (double g : e.params.gammas) csv << ',' << format_real(g);
      csv << "\n";
    }
    write_file(dir / "trace.csv", csv.str());
    auto args = resolved_model_args(o.model, cfg);
    args.insert(args.end(), {"--beta", range_text(cfg.beta), "--gamma", range_text(cfg.gamma), "--strategy",
                             o.strategy, "--out", absolute(o.out)});
    write_file(dir / "manifest.txt",
               manifest_text("optimize", args, cfg.master_seed, {(dir / "trace.csv").string()}, elapsed_since(t0)));
  }
  return kOk;
}

// -------------------------------------------------------------- reconstruct

struct ReconstructOptions {
  std::string cal;
  std::string means;
  double tolerance = kDefaultDegeneracyTolerance;
};

int cmd_reconstruct(const ReconstructOptions& o, std::ostream& out) {
  CalibrationTable cal({0.0, 0.0});
  std::vector<double> means;
  try {
    cal = load_calibration(o.cal);
    means = load_bit_table(o.means);
  } catch (const IoError& e) {
    throw UsageError(e.what());
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (means.size() != cal.size()) throw UsageError("means file and calibration cover different register sizes");
  const PopulationEstimate est = reconstruct(cal, means, o.tolerance);
  const std::size_t n = cal.num_qubits();
  out << "populations:\n";
  for (std::size_t s = 0; s < est.pops.size(); ++s) {
    out << "  " << BitString::from_index(s, n).to_string() << " " << format_real(est.pops[s], 12) << "\n";
  }
  out << "correlators:\n";
  for (std::size_t t = 0; t < est.correlators.size(); ++t) {
    out << "  " << BitString::from_index(t, n).to_string() << " " << format_real(est.correlators[t], 12) << "\n";
  }
  out << "norm = " << format_real(est.norm, 12) << "\n";
  return kOk;
}

// -------------------------------------------------------------- convergence

struct ConvergenceOptions {
  ModelOptions model;
  std::string beta = "0.15pi";
  std::string gamma = "1.5pi";
  std::string out;
  bool force = false;
};

int cmd_convergence(const ConvergenceOptions& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  if (o.model.mode != "sampled") throw UsageError("convergence requires --mode sampled (shot noise is what converges)");
  ScanConfig cfg = build_config(o.model);
  const double beta = parse_angle(o.beta);
  const double gamma = parse_angle(o.gamma);
  try {
    cfg.validate();
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }
  prepare_out_dir(o.out, {"convergence.csv", "manifest.txt"}, o.force);

  const auto params = QaoaParams::uniform(beta, gamma, cfg.p);
  std::vector<std::vector<ConvergenceSample>> traces;
  for (std::size_t r = 0; r < cfg.realizations; ++r) traces.push_back(measure_point(cfg, params, 0, r, true).trace);

  const std::size_t n = cfg.graph.num_vertices();
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t rows = traces.front().size();
  std::ostringstream csv;
  csv << "shots";
  for (std::size_t s = 0; s < dim; ++s) csv << ",p" << BitString::from_index(s, n).to_string();
  csv << ",norm";
  for (std::size_t s = 0; s < dim; ++s) csv << ",std_p" << BitString::from_index(s, n).to_string();
  csv << ",std_norm\n";
  for (std::size_t i = 0; i < rows; ++i) {
    // Columns 0..dim-1 are populations, column dim is the norm.
    std::vector<double> mean(dim + 1, 0.0);
    std::vector<double> sq(dim + 1, 0.0);
    std::size_t valid = 0;
    for (const auto& trace : traces) {
      const auto& sample = trace[i];
      if (!sample.valid) continue;
      ++valid;
      for (std::size_t c = 0; c <= dim; ++c) {
        const double v = c < dim ? sample.pops[c] : sample.norm;
        mean[c] += v;
        sq[c] += v * v;
      }
    }
    csv << traces.front()[i].shots;
    std::vector<double> stddev(dim + 1, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t c = 0; c <= dim; ++c) {
      if (valid == 0) {
        mean[c] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      const double m = mean[c] / static_cast<double>(valid);
      stddev[c] = valid > 1 ? std::sqrt(std::max(0.0, (sq[c] - static_cast<double>(valid) * m * m) /
                                                            static_cast<double>(valid - 1)))
                            : 0.0;
      mean[c] = m;
    }
    for (double v : mean) csv << ',' << format_real(v);
    for (double v : stddev) csv << ',' << format_real(v);
    csv << "\n";
  }

  const fs::path dir(o.out);
  write_file(dir / "convergence.csv", csv.str());
  auto args = resolved_model_args(o.model, cfg);
  args.insert(args.end(), {"--beta", format_angle(beta), "--gamma", format_angle(gamma), "--out", absolute(o.out)});
  write_file(dir / "manifest.txt", manifest_text("convergence", args, cfg.master_seed,
                                                 {(dir / "convergence.csv").string()}, elapsed_since(t0)));
  out << "checkpoints: " << rows << "\n";
  out << "wrote " << (dir / "convergence.csv").string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- calibrate

struct CalibrateOptions {
  std::string cal;
  std::uint64_t shots = 300000;
  std::string seed;
  std::string noise;
  std::string out;
  bool force = false;
};

int cmd_calibrate(const CalibrateOptions& o, std::ostream& out) {
  CalibrationTable device({0.0, 0.0});
  NoiseConfig noise;
  try {
    device = load_calibration(o.cal);
    if (!o.noise.empty()) noise = load_noise_config(o.noise);
  } catch (const IoError& e) {
    throw UsageError(e.what());
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (fs::exists(o.out) && !o.force) throw UsageError("output '" + o.out + "' exists; pass --force to overwrite");
  const std::uint64_t seed = resolve_seed(o.seed);
  const CalibrationTable reference =
      noise.calibration_sigma > 0.0 ? perturb_calibration(device, noise.calibration_sigma, derive_seed(seed, {1}))
                                    : device;
  const auto circuits = calibration_circuits(device.num_qubits());
  std::vector<double> measured;
  for (std::size_t s = 0; s < circuits.size(); ++s) {
    measured.push_back(measure_circuit(circuits[s], reference, o.shots, derive_seed(seed, {0, s})).running_mean);
  }
  write_file(o.out, "# measured calibration, " + std::to_string(o.shots) + " shots per state, seed " +
                        std::to_string(seed) + "\n" + bit_table_to_text(measured));
  const auto c = walsh_coefficients(CalibrationTable(measured));
  out << "walsh coefficients:\n";
  for (std::size_t t = 0; t < c.c.size(); ++t) {
    out << "  " << BitString::from_index(t, device.num_qubits()).to_string() << " " << format_real(c.c[t]) << "\n";
  }
  out << "wrote " << o.out << "\n";
  return kOk;
}

// ------------------------------------------------------------------ circuit

struct CircuitOptions {
  std::string graph;
  std::size_t p = 1;
  std::string beta = "0.15pi";
  std::string gamma = "1.5pi";
  std::string flips;
  bool native = false;
};

int cmd_circuit(const CircuitOptions& o, std::ostream& out) {
  Graph g(1);
  try {
    g = load_graph(o.graph);
  } catch (const IoError& e) {
    throw UsageError(e.what());
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  const auto params = QaoaParams::uniform(parse_angle(o.beta), parse_angle(o.gamma), o.p);
  Circuit c = o.native ? build_ansatz_native(g, params) : build_ansatz(g, params);
  if (!o.flips.empty()) {
    try {
      c = append_flips(c, FlipPattern{BitString::parse(o.flips)});
    } catch (const std::logic_error& e) {
      throw UsageError(std::string("--flips: ") + e.what());
    }
  }
  out << to_text(c);
  return kOk;
}

// -------------------------------------------------------------------- rerun

struct RerunOptions {
  std::string manifest;
  std::string out;
  std::size_t threads = 0;
  bool threads_set = false;
  bool force = false;
};

std::vector<std::string> manifest_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open manifest '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("arg = ", 0) == 0) args.push_back(line.substr(6));
  }
  if (args.empty()) throw UsageError("manifest '" + path + "' lists no arguments");
  return args;
}

std::vector<std::string> with_overrides(std::vector<std::string> args, const RerunOptions& o) {
  auto set_flag = [&](const std::string& flag, const std::string& value) {
    const auto it = std::find(args.begin(), args.end(), flag);
    if (it != args.end() && std::next(it) != args.end()) {
      *std::next(it) = value;
    } else {
      args.insert(args.end(), {flag, value});
    }
  };
  if (!o.out.empty()) set_flag("--out", o.out);
  if (o.threads_set && args.front() == "landscape") set_flag("--threads", std::to_string(o.threads));
  if (o.force) args.emplace_back("--force");
  return args;
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw UsageError("empty angle");
  const bool has_pi = s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0;
  if (!has_pi) return parse_double(s);
  s.resize(s.size() - 2);
  if (!s.empty() && s.back() == '*') s.pop_back();
  if (s.empty() || s == "+") return kPi;
  if (s == "-") return -kPi;
  return parse_double(s) * kPi;
}

Range parse_range(std::string_view text) {
  const std::string s(text);
  const auto a = s.find(':');
  const auto b = a == std::string::npos ? std::string::npos : s.find(':', a + 1);
  if (a == std::string::npos || b == std::string::npos || s.find(':', b + 1) != std::string::npos) {
    throw UsageError("range must be START:STOP:STEP, got '" + s + "'");
  }
  Range r{parse_angle(s.substr(0, a)), parse_angle(s.substr(a + 1, b - a - 1)), parse_angle(s.substr(b + 1))};
  try {
    r.validate();
  } catch (const std::logic_error& e) {
    throw UsageError("range '" + s + "': " + e.what());
  }
  return r;
}

std::string format_angle(double radians) { return format_real(radians, 17); }

std::string format_angle_pi(double radians) { return format_real(radians / kPi, 17) + "pi"; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"NV-center QAOA MAX-CUT simulator", "nvqaoa"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  LandscapeOptions landscape;
  auto* sc_land = app.add_subcommand("landscape", "scan the (beta, gamma) cost landscape");
  add_model_options(sc_land, landscape.model, false);
  sc_land->add_option("--beta", landscape.beta, "beta range START:STOP:STEP");
  sc_land->add_option("--gamma", landscape.gamma, "gamma range START:STOP:STEP");
  sc_land->add_option("--out", landscape.out, "output directory")->required();
  sc_land->add_option("--threads", landscape.threads, "worker threads (0 = all cores)");
  sc_land->add_flag("--force", landscape.force, "overwrite existing outputs");
  sc_land->add_flag("--svg", landscape.svg, "also write a grayscale heatmap");

  OptimizeOptions optimize_opts;
  auto* sc_opt = app.add_subcommand("optimize", "minimize the expected cost");
  add_model_options(sc_opt, optimize_opts.model, false);
  sc_opt->add_option("--beta", optimize_opts.beta, "coarse beta grid START:STOP:STEP");
  sc_opt->add_option("--gamma", optimize_opts.gamma, "coarse gamma grid START:STOP:STEP");
  sc_opt->add_option("--strategy", optimize_opts.strategy, "grid | simplex")->check(CLI::IsMember({"grid", "simplex"}));
  sc_opt->add_option("--out", optimize_opts.out, "optional directory for trace.csv and manifest");
  sc_opt->add_flag("--force", optimize_opts.force, "overwrite existing outputs");

  ReconstructOptions recon;
  auto* sc_rec = app.add_subcommand("reconstruct", "populations from flip-pattern means");
  sc_rec->add_option("--cal", recon.cal, "calibration table file")->required();
  sc_rec->add_option("--means", recon.means, "means file, one '<bitpattern> <mean>' per flip pattern")->required();
  sc_rec->add_option("--tolerance", recon.tolerance, "degeneracy tolerance for |c_t|");

  ConvergenceOptions conv;
  auto* sc_conv = app.add_subcommand("convergence", "reconstructed populations vs accumulated shots");
  add_model_options(sc_conv, conv.model, true);
  sc_conv->add_option("--beta", conv.beta, "beta angle");
  sc_conv->add_option("--gamma", conv.gamma, "gamma angle");
  sc_conv->add_option("--out", conv.out, "output directory")->required();
  sc_conv->add_flag("--force", conv.force, "overwrite existing outputs");

  CalibrateOptions calib;
  auto* sc_cal = app.add_subcommand("calibrate", "measure calibration intensities from shots");
  sc_cal->add_option("--cal", calib.cal, "true device calibration table")->required();
  sc_cal->add_option("--shots", calib.shots, "shots per basis state")->check(CLI::PositiveNumber);
  sc_cal->add_option("--seed", calib.seed, "seed (falls back to NVQAOA_SEED)");
  sc_cal->add_option("--noise", calib.noise, "noise config (calibration_sigma is used)");
  sc_cal->add_option("--out", calib.out, "output calibration file")->required();
  sc_cal->add_flag("--force", calib.force, "overwrite existing output");

  CircuitOptions circ;
  auto* sc_circ = app.add_subcommand("circuit", "print the ansatz circuit, one gate per line");
  sc_circ->add_option("--graph", circ.graph, "graph file")->required();
  sc_circ->add_option("--p", circ.p, "QAOA layers")->check(CLI::PositiveNumber);
  sc_circ->add_option("--beta", circ.beta, "beta angle");
  sc_circ->add_option("--gamma", circ.gamma, "gamma angle");
  sc_circ->add_option("--flips", circ.flips, "trailing flip pattern, e.g. 11");
  sc_circ->add_flag("--native", circ.native, "expand RZZ into CNOT, RZ, CNOT");

  RerunOptions rerun;
  auto* sc_rerun = app.add_subcommand("rerun", "repeat a run from its manifest");
  sc_rerun->add_option("--manifest", rerun.manifest, "manifest.txt of a previous run")->required();
  sc_rerun->add_option("--out", rerun.out, "output directory override");
  auto* threads_opt = sc_rerun->add_option("--threads", rerun.threads, "worker threads override");
  sc_rerun->add_flag("--force", rerun.force, "overwrite existing outputs");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*sc_land) return cmd_landscape(landscape, out);
    if (*sc_opt) return cmd_optimize(optimize_opts, out);
    if (*sc_rec) return cmd_reconstruct(recon, out);
    if (*sc_conv) return cmd_convergence(conv, out);
    if (*sc_cal) return cmd_calibrate(calib, out);
    if (*sc_circ) return cmd_circuit(circ, out);
    if (*sc_rerun) {
      rerun.threads_set = threads_opt->count() > 0;
      return run(with_overrides(manifest_args(rerun.manifest), rerun), out, err);
    }
  } catch (const DegenerateCalibrationError& e) {
    err << "error: " << e.what() << "\n";
    return kDegenerate;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}

}  // namespace nvqaoa::cli
