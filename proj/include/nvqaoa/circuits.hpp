#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nvqaoa/graph.hpp"
#include "nvqaoa/statevector.hpp"

namespace nvqaoa {

/// Variational angles for a depth-p ansatz, in radians.
struct QaoaParams {
  std::vector<double> betas;
  std::vector<double> gammas;

  /// Same (beta, gamma) on each of `p` layers.
  static QaoaParams uniform(double beta, double gamma, std::size_t p = 1);

  std::size_t depth() const noexcept { return betas.size(); }
  /// Throws DimensionError / DomainError on unequal lengths, p = 0 or non-finite entries.
  void validate() const;
};

class Circuit {
public:
  explicit Circuit(std::size_t num_qubits);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

  /// Validates the gate against the register before appending.
  Circuit& append(const Gate& g);

  bool operator==(const Circuit&) const = default;

private:
  std::size_t num_qubits_;
  std::vector<Gate> gates_;
};

/// Trailing X^x layer applied just before readout.
struct FlipPattern {
  BitString pattern;

  static FlipPattern from_index(std::uint64_t index, std::size_t num_qubits) {
    return {BitString::from_index(index, num_qubits)};
  }
};

/// H on every qubit, then per layer RZZ(gamma * w_ij) on each edge in
/// ascending (i, j) order followed by RX(2 beta) on every qubit.
Circuit build_ansatz(const Graph& g, const QaoaParams& params);
/// As build_ansatz with each RZZ expanded to CNOT(i->j), RZ_j, CNOT(i->j), i < j.
Circuit build_ansatz_native(const Graph& g, const QaoaParams& params);
Circuit append_flips(const Circuit& c, const FlipPattern& f);
/// Circuit k prepares basis state |k> from |0...0> with X gates only.
std::vector<Circuit> calibration_circuits(std::size_t n);

/// Runs the circuit from |0...0>.
StateVector simulate(const Circuit& c);
/// Runs the circuit on a given initial state.
StateVector simulate(const Circuit& c, StateVector initial);

/// One gate per line: `GATE q[,q2][,angle]`, angles with 17 significant digits.
std::string to_text(const Circuit& c);

}  // namespace nvqaoa
