#include "nvqaoa/statevector.hpp"

#include <cmath>
#include <cstdint>

#include "nvqaoa/errors.hpp"
#include "nvqaoa/graph.hpp"

namespace nvqaoa {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Applies a 2x2 unitary [[u00,u01],[u10,u11]] to the qubit with bit mask `mask`.
void apply_single(std::vector<Complex>& a, std::size_t mask, Complex u00, Complex u01, Complex u10, Complex u11) {
  const std::size_t dim = a.size();
  for (std::size_t k = 0; k < dim; ++k) {
    if (k & mask) continue;
    const Complex a0 = a[k];
    const Complex a1 = a[k | mask];
    a[k] = u00 * a0 + u01 * a1;
    a[k | mask] = u10 * a0 + u11 * a1;
  }
}

}  // namespace

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::RZZ: return "RZZ";
  }
  return "?";
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (has_angle()) g.angle = -angle;
  return g;
}

void Gate::validate(std::size_t num_qubits) const {
  if (q0 >= num_qubits) throw IndexError("gate target outside register");
  if (is_two_qubit()) {
    if (q1 >= num_qubits) throw IndexError("gate target outside register");
    if (q0 == q1) throw IndexError("two-qubit gate targets must be distinct");
  }
  if (has_angle() && !std::isfinite(angle)) throw DomainError("gate angle must be finite");
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) throw DimensionError("amplitude count must be a power of two >= 2");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if (n > kMaxQubits) throw CapacityError("register exceeds 24 qubits");
  double sum = 0.0;
  for (const auto& z : amplitudes) sum += std::norm(z);
  if (std::abs(sum - 1.0) > 1e-9) throw DomainError("state vector must be normalized");
  return StateVector(n, std::move(amplitudes));
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& z : amps_) sum += std::norm(z);
  return std::sqrt(sum);
}

void StateVector::apply(const Gate& g) {
  g.validate(num_qubits_);
  const std::size_t mask0 = std::size_t{1} << (num_qubits_ - 1 - g.q0);
  const double c = std::cos(g.angle / 2.0);
  const double s = std::sin(g.angle / 2.0);
  const Complex i{0.0, 1.0};
  switch (g.kind) {
    case GateKind::H:
      apply_single(amps_, mask0, kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
      break;
    case GateKind::X:
      for (std::size_t k = 0; k < amps_.size(); ++k) {
        if (!(k & mask0)) std::swap(amps_[k], amps_[k | mask0]);
      }
      break;
    case GateKind::RX:
      apply_single(amps_, mask0, c, -i * s, -i * s, c);
      break;
    case GateKind::RY:
      apply_single(amps_, mask0, c, -s, s, c);
      break;
    case GateKind::RZ: {
      const Complex lo{c, -s};
      const Complex hi{c, s};
      for (std::size_t k = 0; k < amps_.size(); ++k) amps_[k] *= (k & mask0) ? hi : lo;
      break;
    }
    case GateKind::CNOT: {
      const std::size_t mask1 = std::size_t{1} << (num_qubits_ - 1 - g.q1);
      for (std::size_t k = 0; k < amps_.size(); ++k) {
        if ((k & mask0) && !(k & mask1)) std::swap(amps_[k], amps_[k | mask1]);
      }
      break;
    }
    case GateKind::RZZ: {
      const std::size_t mask1 = std::size_t{1} << (num_qubits_ - 1 - g.q1);
      const Complex same{c, -s};
      const Complex diff{c, s};
      for (std::size_t k = 0; k < amps_.size(); ++k) {
        const bool parity = ((k & mask0) != 0) != ((k & mask1) != 0);
        amps_[k] *= parity ? diff : same;
      }
      break;
    }
  }
}

StateVector init_zero(std::size_t n) {
  if (n < 1 || n > kMaxQubits) throw CapacityError("qubit count must be in [1, 24]");
  std::vector<Complex> amps(std::size_t{1} << n, Complex{0.0, 0.0});
  amps[0] = 1.0;
  return StateVector(n, std::move(amps));
}

StateVector apply_gate(const StateVector& s, const Gate& g) {
  StateVector out = s;
  out.apply(g);
  return out;
}

std::vector<double> populations(const StateVector& s) {
  std::vector<double> p;
  p.reserve(s.dimension());
  for (const auto& z : s.amplitudes()) p.push_back(std::norm(z));
  return p;
}

double expectation_diagonal(const StateVector& s, std::span<const double> d) {
  if (d.size() != s.dimension()) throw DimensionError("diagonal length does not match state dimension");
  double total = 0.0;
  const auto a = s.amplitudes();
  for (std::size_t k = 0; k < d.size(); ++k) total += d[k] * std::norm(a[k]);
  return total;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("state dimensions differ");
  Complex total{0.0, 0.0};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t k = 0; k < x.size(); ++k) total += std::conj(x[k]) * y[k];
  return total;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::abs(inner_product(a, b)); }

}  // namespace nvqaoa
