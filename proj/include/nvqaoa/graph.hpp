#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nvqaoa {

/// Largest register / vertex count handled by dense enumeration.
inline constexpr std::size_t kMaxQubits = 24;

/// Bit string over the vertices of a graph. Vertex 0 is the most significant
/// bit of the basis index, so "01" has index 1 and "10" has index 2.
class BitString {
public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits);

  static BitString from_index(std::uint64_t index, std::size_t length);
  /// Parses a string of '0'/'1' characters.
  static BitString parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  std::uint64_t to_index() const;
  std::string to_string() const;
  BitString flipped() const;

  auto operator<=>(const BitString&) const = default;
  bool operator==(const BitString&) const = default;

private:
  std::vector<std::uint8_t> bits_;
};

struct Edge {
  std::size_t u;
  std::size_t v;
  double weight;
};

/// Undirected MAX-CUT instance with nonnegative edge weights, stored as a
/// symmetric adjacency matrix with zero diagonal.
class Graph {
public:
  /// Edgeless graph on `num_vertices` vertices.
  explicit Graph(std::size_t num_vertices);
  /// Validates symmetry, zero diagonal and nonnegative finite weights.
  explicit Graph(std::vector<std::vector<double>> adjacency);

  /// Throws DomainError on self loops, duplicate edges or bad weights.
  static Graph from_edges(std::size_t num_vertices, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  double weight(std::size_t i, std::size_t j) const;
  const std::vector<std::vector<double>>& adjacency() const noexcept { return adj_; }

  /// Nonzero edges with u < v, ordered by (u, v) ascending.
  std::vector<Edge> edges() const;
  bool is_unweighted() const;

private:
  std::size_t n_;
  std::vector<std::vector<double>> adj_;
};

Graph complete_graph(std::size_t n);

/// Result of exhaustive enumeration. `cost_table[k]` is the cost of the
/// string with basis index k; `best_strings` is sorted lexicographically.
struct CutReport {
  std::vector<BitString> best_strings;
  double best_cost = 0.0;
  std::vector<double> cost_table;

  double cost_of(const BitString& x) const;
};

double cut_value(const Graph& g, const BitString& x);
double cost(const Graph& g, const BitString& x);
/// Cost in spin variables z_i = 2 x_i - 1; entries must be -1 or +1.
double cost_spin(const Graph& g, std::span<const int> z);
CutReport brute_force(const Graph& g);
/// Diagonal of the cost Hamiltonian in the computational basis.
std::vector<double> diagonal_costs(const Graph& g);

/// Reads the text graph format:
///   n <num_vertices>
///   u v [w]
/// with '#' comment lines. `source` labels error messages.
Graph parse_graph(std::istream& in, const std::string& source = "<graph>");
Graph load_graph(const std::string& path);

}  // namespace nvqaoa
