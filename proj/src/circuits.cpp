#include "nvqaoa/circuits.hpp"

#include <cmath>
#include <cstdio>

#include "nvqaoa/errors.hpp"

namespace nvqaoa {

QaoaParams QaoaParams::uniform(double beta, double gamma, std::size_t p) {
  return {std::vector<double>(p, beta), std::vector<double>(p, gamma)};
}

void QaoaParams::validate() const {
  if (betas.size() != gammas.size()) throw DimensionError("beta and gamma vectors differ in length");
  if (betas.empty()) throw DomainError("ansatz depth must be at least 1");
  for (std::size_t k = 0; k < betas.size(); ++k) {
    if (!std::isfinite(betas[k]) || !std::isfinite(gammas[k])) throw DomainError("QAOA angles must be finite");
  }
}

Circuit::Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) throw CapacityError("qubit count must be in [1, 24]");
}

Circuit& Circuit::append(const Gate& g) {
  g.validate(num_qubits_);
  gates_.push_back(g);
  return *this;
}

namespace {

Circuit build(const Graph& g, const QaoaParams& params, bool native) {
  params.validate();
  const std::size_t n = g.num_vertices();
  Circuit c(n);
  for (std::size_t q = 0; q < n; ++q) c.append(Gate::h(q));
  const auto edges = g.edges();
  for (std::size_t layer = 0; layer < params.depth(); ++layer) {
    const double gamma = params.gammas[layer];
    for (const auto& e : edges) {
      const double theta = gamma * e.weight;
      if (native) {
        c.append(Gate::cnot(e.u, e.v));
        c.append(Gate::rz(e.v, theta));
        c.append(Gate::cnot(e.u, e.v));
      } else {
        c.append(Gate::rzz(e.u, e.v, theta));
      }
    }
    for (std::size_t q = 0; q < n; ++q) c.append(Gate::rx(q, 2.0 * params.betas[layer]));
  }
  return c;
}

}  // namespace

Circuit build_ansatz(const Graph& g, const QaoaParams& params) { return build(g, params, false); }

Circuit build_ansatz_native(const Graph& g, const QaoaParams& params) { return build(g, params, true); }

Circuit append_flips(const Circuit& c, const FlipPattern& f) {
  if (f.pattern.size() != c.num_qubits()) throw DimensionError("flip pattern length does not match register");
  Circuit out = c;
  for (std::size_t q = 0; q < f.pattern.size(); ++q) {
    if (f.pattern[q]) out.append(Gate::x(q));
  }
  return out;
}

std::vector<Circuit> calibration_circuits(std::size_t n) {
  if (n < 1 || n > kMaxQubits) throw CapacityError("qubit count must be in [1, 24]");
  std::vector<Circuit> out;
  const std::uint64_t dim = std::uint64_t{1} << n;
  out.reserve(dim);
  for (std::uint64_t s = 0; s < dim; ++s) out.push_back(append_flips(Circuit(n), FlipPattern::from_index(s, n)));
  return out;
}

StateVector simulate(const Circuit& c) { return simulate(c, init_zero(c.num_qubits())); }

StateVector simulate(const Circuit& c, StateVector initial) {
  if (initial.num_qubits() != c.num_qubits()) throw DimensionError("initial state size does not match circuit");
  for (const auto& g : c.gates()) initial.apply(g);
  return initial;
}

std::string to_text(const Circuit& c) {
  std::string out;
  char buf[64];
  for (const auto& g : c.gates()) {
    out += gate_name(g.kind);
    out += ' ';
    out += std::to_string(g.q0);
    if (g.is_two_qubit()) {
      out += ',';
      out += std::to_string(g.q1);
    }
    if (g.has_angle()) {
      std::snprintf(buf, sizeof buf, ",%.17g", g.angle);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace nvqaoa
