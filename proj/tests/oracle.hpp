#pragma once

// Independent reference computations for tests: dense Kronecker-product
// matrices, explicit enumeration and Gaussian elimination. Nothing here calls
// into the simulator's gate kernels or the Walsh-Hadamard routines.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using Matrix = std::vector<std::vector<cd>>;

inline Matrix identity(std::size_t d) {
  Matrix m(d, std::vector<cd>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1.0;
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t ra = a.size(), rb = b.size();
  Matrix m(ra * rb, std::vector<cd>(ra * rb, 0.0));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ra; ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < rb; ++l) m[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
  return m;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t d = a.size();
  Matrix m(d, std::vector<cd>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j) m[i][j] += a[i][k] * b[k][j];
  return m;
}

inline std::vector<cd> apply(const Matrix& m, const std::vector<cd>& v) {
  std::vector<cd> out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

/// Embeds a one-qubit matrix on qubit q of n (qubit 0 leftmost factor).
inline Matrix on(std::size_t q, const Matrix& g, std::size_t n) {
  Matrix m = q == 0 ? g : identity(2);
  for (std::size_t k = 1; k < n; ++k) m = kron(m, k == q ? g : identity(2));
  return m;
}

inline Matrix hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{r, r}, {r, -r}};
}

inline Matrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline Matrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

/// exp(-i theta X / 2) from the series definition cos I - i sin X.
inline Matrix rx(double theta) {
  const cd c = std::cos(theta / 2), s = cd(0, -std::sin(theta / 2));
  return {{c, s}, {s, c}};
}

/// exp(-i theta Z_a Z_b / 2) as a diagonal built from the ZZ matrix product.
inline Matrix rzz(std::size_t a, std::size_t b, double theta, std::size_t n) {
  const Matrix zz = matmul(on(a, pauli_z(), n), on(b, pauli_z(), n));
  Matrix m = identity(zz.size());
  for (std::size_t i = 0; i < zz.size(); ++i) m[i][i] = std::exp(cd(0, -theta / 2) * zz[i][i]);
  return m;
}

/// Cost of the string with basis index k, enumerating bits MSB-first.
inline double cost_of_index(const std::vector<std::vector<double>>& adj, std::size_t k) {
  const std::size_t n = adj.size();
  double c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int xi = static_cast<int>((k >> (n - 1 - i)) & 1U);
      const int xj = static_cast<int>((k >> (n - 1 - j)) & 1U);
      c -= adj[i][j] * (xi + xj - 2 * xi * xj);
    }
  }
  return c;
}

/// Dense-matrix QAOA state for shared (beta, gamma) per layer.
inline std::vector<cd> ansatz_state(const std::vector<std::vector<double>>& adj, const std::vector<double>& betas,
                                    const std::vector<double>& gammas) {
  const std::size_t n = adj.size();
  std::vector<cd> psi(std::size_t{1} << n, 0.0);
  psi[0] = 1.0;
  for (std::size_t q = 0; q < n; ++q) psi = oracle::apply(on(q, hadamard(), n), psi);
  for (std::size_t l = 0; l < betas.size(); ++l) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (adj[i][j] != 0.0) psi = oracle::apply(rzz(i, j, gammas[l] * adj[i][j], n), psi);
    for (std::size_t q = 0; q < n; ++q) psi = oracle::apply(on(q, rx(2 * betas[l]), n), psi);
  }
  return psi;
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t d = b.size();
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14) throw std::runtime_error("singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < d; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < d; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(d);
  for (std::size_t r = d; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < d; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

/// Random probability vector of length d.
inline std::vector<double> random_distribution(std::size_t d, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(d);
  double sum = 0.0;
  for (auto& v : p) sum += (v = e(rng));
  for (auto& v : p) v /= sum;
  return p;
}

}  // namespace oracle
