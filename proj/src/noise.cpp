#include "nvqaoa/noise.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "nvqaoa/errors.hpp"

namespace nvqaoa {

void NoiseConfig::validate() const {
  if (!(depolarizing_prob >= 0.0 && depolarizing_prob <= 1.0)) throw DomainError("depolarizing_prob must lie in [0, 1]");
  if (!std::isfinite(overrotation_frac)) throw DomainError("overrotation_frac must be finite");
  if (!std::isfinite(phase_offset)) throw DomainError("phase_offset must be finite");
  if (!(calibration_sigma >= 0.0) || !std::isfinite(calibration_sigma)) throw DomainError("calibration_sigma must be >= 0");
  if (trajectories == 0) throw DomainError("trajectories must be positive");
}

void apply_noisy_gate_inplace(StateVector& s, const Gate& g, const NoiseConfig& cfg, Rng& rng) {
  Gate scaled = g;
  if (scaled.has_angle()) scaled.angle *= 1.0 + cfg.overrotation_frac;
  s.apply(scaled);

  if (cfg.depolarizing_prob > 0.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pauli(0, 2);
    const std::size_t touched[2] = {g.q0, g.q1};
    const std::size_t count = g.is_two_qubit() ? 2 : 1;
    for (std::size_t i = 0; i < count; ++i) {
      if (unit(rng) >= cfg.depolarizing_prob) continue;
      const std::size_t q = touched[i];
      // Y and Z via RY(pi) = -iY and RZ(pi) = -iZ; the phase is global.
      switch (pauli(rng)) {
        case 0: s.apply(Gate::x(q)); break;
        case 1: s.apply(Gate::ry(q, std::numbers::pi)); break;
        default: s.apply(Gate::rz(q, std::numbers::pi)); break;
      }
    }
  }

  if (cfg.phase_offset != 0.0 && g.is_two_qubit() && cfg.phase_qubit < s.num_qubits()) {
    s.apply(Gate::rz(cfg.phase_qubit, cfg.phase_offset));
  }
}

StateVector apply_noisy_gate(const StateVector& s, const Gate& g, const NoiseConfig& cfg, Rng& rng) {
  StateVector out = s;
  apply_noisy_gate_inplace(out, g, cfg, rng);
  return out;
}

StateVector run_trajectory(const Circuit& c, const NoiseConfig& cfg, Rng& rng) {
  StateVector s = init_zero(c.num_qubits());
  for (const auto& g : c.gates()) apply_noisy_gate_inplace(s, g, cfg, rng);
  return s;
}

void for_each_trajectory(const Circuit& c, const NoiseConfig& cfg, std::uint64_t seed,
                         const std::function<void(const StateVector&)>& visit) {
  cfg.validate();
  if (!cfg.is_stochastic()) {
    Rng rng = make_rng(seed);
    visit(run_trajectory(c, cfg, rng));
    return;
  }
  for (std::size_t k = 0; k < cfg.trajectories; ++k) {
    Rng rng = make_stream(seed, {k});
    visit(run_trajectory(c, cfg, rng));
  }
}

std::vector<double> noisy_populations(const Circuit& c, const NoiseConfig& cfg, std::uint64_t seed) {
  std::vector<double> acc(std::size_t{1} << c.num_qubits(), 0.0);
  std::size_t count = 0;
  for_each_trajectory(c, cfg, seed, [&](const StateVector& s) {
    const auto a = s.amplitudes();
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += std::norm(a[k]);
    ++count;
  });
  if (count > 1) {
    for (auto& v : acc) v /= static_cast<double>(count);
  }
  return acc;
}

CalibrationTable perturb_calibration(const CalibrationTable& cal, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("calibration sigma must be >= 0");
  if (sigma == 0.0) return cal;
  Rng rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  std::vector<double> out(cal.intensities().begin(), cal.intensities().end());
  for (auto& v : out) v = std::max(0.0, v * (1.0 + gauss(rng)));
  return CalibrationTable(std::move(out));
}

NoiseConfig parse_noise_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("<noise>", 0, e.what());
  }
  if (!j.is_object()) throw ParseError("<noise>", 0, "noise config must be a JSON object");
  NoiseConfig cfg;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "depolarizing_prob") cfg.depolarizing_prob = value.get<double>();
      else if (key == "overrotation_frac") cfg.overrotation_frac = value.get<double>();
      else if (key == "phase_offset") cfg.phase_offset = value.get<double>();
      else if (key == "phase_qubit") cfg.phase_qubit = value.get<std::size_t>();
      else if (key == "calibration_sigma") cfg.calibration_sigma = value.get<double>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "trajectories") cfg.trajectories = value.get<std::size_t>();
      else throw ParseError("<noise>", 0, "unknown key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("<noise>", 0, "bad value for '" + key + "': " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

NoiseConfig load_noise_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open noise config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_noise_config(buf.str());
}

std::string to_json(const NoiseConfig& cfg) {
  nlohmann::ordered_json j;
  j["depolarizing_prob"] = cfg.depolarizing_prob;
  j["overrotation_frac"] = cfg.overrotation_frac;
  j["phase_offset"] = cfg.phase_offset;
  j["phase_qubit"] = cfg.phase_qubit;
  j["calibration_sigma"] = cfg.calibration_sigma;
  j["seed"] = cfg.seed;
  j["trajectories"] = cfg.trajectories;
  return j.dump();
}

}  // namespace nvqaoa
