#include "nvqaoa/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "nvqaoa/errors.hpp"

namespace nvqaoa {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw DomainError("bit string entries must be 0 or 1");
  }
}

BitString BitString::from_index(std::uint64_t index, std::size_t length) {
  if (length > 63) throw CapacityError("bit string too long for a basis index");
  if (length < 64 && (index >> length) != 0) throw IndexError("basis index does not fit in bit string");
  std::vector<std::uint8_t> bits(length);
  for (std::size_t i = 0; i < length; ++i) {
    bits[i] = static_cast<std::uint8_t>((index >> (length - 1 - i)) & 1U);
  }
  return BitString(std::move(bits));
}

BitString BitString::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw DomainError("invalid bit character in '" + std::string(text) + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitString(std::move(bits));
}

std::uint64_t BitString::to_index() const {
  if (bits_.size() > 63) throw CapacityError("bit string too long for a basis index");
  std::uint64_t index = 0;
  for (auto b : bits_) index = (index << 1U) | b;
  return index;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

BitString BitString::flipped() const {
  std::vector<std::uint8_t> bits(bits_);
  for (auto& b : bits) b ^= 1U;
  return BitString(std::move(bits));
}

Graph::Graph(std::size_t num_vertices)
    : n_(num_vertices), adj_(num_vertices, std::vector<double>(num_vertices, 0.0)) {
  if (n_ == 0) throw DomainError("graph needs at least one vertex");
}

Graph::Graph(std::vector<std::vector<double>> adjacency) : n_(adjacency.size()), adj_(std::move(adjacency)) {
  if (n_ == 0) throw DomainError("graph needs at least one vertex");
  for (std::size_t i = 0; i < n_; ++i) {
    if (adj_[i].size() != n_) throw DimensionError("adjacency matrix must be square");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (adj_[i][i] != 0.0) throw DomainError("adjacency diagonal must be zero");
    for (std::size_t j = 0; j < n_; ++j) {
      const double w = adj_[i][j];
      if (!std::isfinite(w) || w < 0.0) throw DomainError("edge weights must be finite and nonnegative");
      if (w != adj_[j][i]) throw DomainError("adjacency matrix must be symmetric");
    }
  }
}

Graph Graph::from_edges(std::size_t num_vertices, std::span<const Edge> edges) {
  Graph g(num_vertices);
  for (const auto& e : edges) {
    if (e.u >= num_vertices || e.v >= num_vertices) throw IndexError("edge endpoint outside vertex range");
    if (e.u == e.v) throw DomainError("self loops are not allowed");
    if (!std::isfinite(e.weight) || e.weight < 0.0) throw DomainError("edge weights must be finite and nonnegative");
    if (g.adj_[e.u][e.v] != 0.0) throw DomainError("duplicate edge");
    g.adj_[e.u][e.v] = e.weight;
    g.adj_[e.v][e.u] = e.weight;
  }
  return g;
}

double Graph::weight(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw IndexError("vertex index out of range");
  return adj_[i][j];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (adj_[i][j] != 0.0) out.push_back({i, j, adj_[i][j]});
    }
  }
  return out;
}

bool Graph::is_unweighted() const {
  for (const auto& row : adj_) {
    for (double w : row) {
      if (w != 0.0 && w != 1.0) return false;
    }
  }
  return true;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  }
  return Graph::from_edges(n, edges);
}

double CutReport::cost_of(const BitString& x) const {
  const auto k = x.to_index();
  if (k >= cost_table.size()) throw IndexError("bit string outside cost table");
  return cost_table[k];
}

double cut_value(const Graph& g, const BitString& x) {
  if (x.size() != g.num_vertices()) throw DimensionError("bit string length does not match vertex count");
  double total = 0.0;
  for (const auto& e : g.edges()) {
    const double xi = x[e.u];
    const double xj = x[e.v];
    total += e.weight * (xi + xj - 2.0 * xi * xj);
  }
  return total;
}

double cost(const Graph& g, const BitString& x) { return -cut_value(g, x); }

double cost_spin(const Graph& g, std::span<const int> z) {
  if (z.size() != g.num_vertices()) throw DimensionError("spin vector length does not match vertex count");
  for (int zi : z) {
    if (zi != -1 && zi != 1) throw DomainError("spin entries must be -1 or +1");
  }
  double total = 0.0;
  for (const auto& e : g.edges()) total += e.weight * (1.0 - z[e.u] * z[e.v]);
  return -0.5 * total;
}

std::vector<double> diagonal_costs(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kMaxQubits) throw CapacityError("vertex count exceeds enumeration cap of 24");
  const std::uint64_t dim = std::uint64_t{1} << n;
  const auto edges = g.edges();
  std::vector<double> diag(dim, 0.0);
  for (std::uint64_t k = 0; k < dim; ++k) {
    double c = 0.0;
    for (const auto& e : edges) {
      const auto bu = (k >> (n - 1 - e.u)) & 1U;
      const auto bv = (k >> (n - 1 - e.v)) & 1U;
      if (bu != bv) c -= e.weight;
    }
    diag[k] = c;
  }
  return diag;
}

CutReport brute_force(const Graph& g) {
  CutReport report;
  report.cost_table = diagonal_costs(g);
  report.best_cost = *std::min_element(report.cost_table.begin(), report.cost_table.end());
  // Index order is lexicographic order for fixed-length strings.
  for (std::uint64_t k = 0; k < report.cost_table.size(); ++k) {
    if (report.cost_table[k] == report.best_cost) {
      report.best_strings.push_back(BitString::from_index(k, g.num_vertices()));
    }
  }
  return report;
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

Graph parse_graph(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError(source, lineno, "missing 'n <num_vertices>' header");
  std::istringstream header(line);
  std::string tag;
  long long n = 0;
  if (!(header >> tag >> n) || tag != "n" || n <= 0) {
    throw ParseError(source, lineno, "expected 'n <num_vertices>' with a positive count");
  }
  std::string rest;
  if (header >> rest) throw ParseError(source, lineno, "trailing text after vertex count");

  std::vector<Edge> edges;
  std::vector<std::vector<bool>> seen(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  while (next_content_line(in, line, lineno)) {
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v)) throw ParseError(source, lineno, "expected 'u v [w]'");
    double w = 1.0;
    if (!(row >> w)) {
      if (!row.eof()) throw ParseError(source, lineno, "invalid edge weight");
      w = 1.0;
    } else if (row >> rest) {
      throw ParseError(source, lineno, "trailing text after edge weight");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(source, lineno, "vertex index out of range");
    if (u == v) throw ParseError(source, lineno, "self loop");
    if (!std::isfinite(w) || w < 0.0) throw ParseError(source, lineno, "edge weight must be finite and nonnegative");
    const auto a = static_cast<std::size_t>(std::min(u, v));
    const auto b = static_cast<std::size_t>(std::max(u, v));
    if (seen[a][b]) throw ParseError(source, lineno, "duplicate edge");
    seen[a][b] = true;
    edges.push_back({a, b, w});
  }
  // Zero-weight edges are legal in the file but carry no cost.
  std::erase_if(edges, [](const Edge& e) { return e.weight == 0.0; });
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file '" + path + "'");
  return parse_graph(in, path);
}

}  // namespace nvqaoa
