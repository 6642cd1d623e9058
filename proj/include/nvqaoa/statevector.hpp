#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace nvqaoa {

using Complex = std::complex<double>;

enum class GateKind { H, X, RX, RY, RZ, CNOT, RZZ };

std::string_view gate_name(GateKind kind);

/// One gate of the native set. Single-qubit gates use `q0`; CNOT uses
/// q0 = control, q1 = target; RZZ acts symmetrically on (q0, q1).
/// Rotation conventions: R_P(theta) = exp(-i theta P / 2),
/// RZZ(theta) = exp(-i theta Z x Z / 2).
struct Gate {
  GateKind kind = GateKind::H;
  std::size_t q0 = 0;
  std::size_t q1 = 0;
  double angle = 0.0;

  static Gate h(std::size_t q) { return {GateKind::H, q, 0, 0.0}; }
  static Gate x(std::size_t q) { return {GateKind::X, q, 0, 0.0}; }
  static Gate rx(std::size_t q, double theta) { return {GateKind::RX, q, 0, theta}; }
  static Gate ry(std::size_t q, double theta) { return {GateKind::RY, q, 0, theta}; }
  static Gate rz(std::size_t q, double theta) { return {GateKind::RZ, q, 0, theta}; }
  static Gate cnot(std::size_t control, std::size_t target) { return {GateKind::CNOT, control, target, 0.0}; }
  static Gate rzz(std::size_t a, std::size_t b, double theta) { return {GateKind::RZZ, a, b, theta}; }

  bool is_two_qubit() const noexcept { return kind == GateKind::CNOT || kind == GateKind::RZZ; }
  bool has_angle() const noexcept {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ || kind == GateKind::RZZ;
  }
  /// Rotations negate their angle; H, X and CNOT are self-inverse.
  Gate inverse() const;
  /// Throws IndexError / DomainError if the gate does not fit an n-qubit register.
  void validate(std::size_t num_qubits) const;

  bool operator==(const Gate&) const = default;
};

/// Dense pure state on n qubits. Qubit 0 is the most significant bit of the
/// basis index.
class StateVector {
public:
  /// Takes ownership of amplitudes; length must be 2^n with n in [1, 24] and
  /// the vector normalized within 1e-9.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex amplitude(std::size_t index) const { return amps_.at(index); }
  double norm() const;

  /// In-place application; used by simulators that own their state.
  void apply(const Gate& g);

private:
  friend StateVector init_zero(std::size_t n);
  StateVector(std::size_t n, std::vector<Complex> amps) : num_qubits_(n), amps_(std::move(amps)) {}

  std::size_t num_qubits_;
  std::vector<Complex> amps_;
};

/// |0...0> on n qubits; throws CapacityError outside [1, 24].
StateVector init_zero(std::size_t n);
StateVector apply_gate(const StateVector& s, const Gate& g);
std::vector<double> populations(const StateVector& s);
/// Sum_k d_k |a_k|^2, i.e. the expectation of a diagonal observable.
double expectation_diagonal(const StateVector& s, std::span<const double> d);
Complex inner_product(const StateVector& a, const StateVector& b);
/// |<a|b>|, insensitive to global phase.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace nvqaoa
