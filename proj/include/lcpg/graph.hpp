#ifndef LCPG_GRAPH_HPP
#define LCPG_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lcpg/error.hpp"

namespace lcpg {

/// Vertex subset as a bitmask; bit i is vertex i (0-based).
using VertexMask = std::uint64_t;
using Edge = std::pair<std::size_t, std::size_t>;

inline constexpr VertexMask bit(std::size_t i) { return VertexMask{1} << i; }
inline constexpr VertexMask full_mask(std::size_t n) { return n >= 64 ? ~VertexMask{0} : bit(n) - 1; }
inline int popcount(VertexMask m) { return std::popcount(m); }

inline std::vector<std::size_t> mask_to_list(VertexMask m) {
  std::vector<std::size_t> out;
  while (m != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

/// Simple undirected graph stored as dense adjacency bit rows.
///
/// Vertices are 0-based inside the library. The text formats and the CLI use
/// 1-based labels; conversion happens only in the parsers and writers below.
/// A Graph is immutable once constructed.
class Graph {
 public:
  static constexpr std::size_t kMaxVertices = 64;

  Graph() = default;

  /// Builds a graph on n vertices from 0-based edges. Duplicates collapse.
  Graph(std::size_t n, std::span<const Edge> edges) : n_(n), rows_(n, 0) {
    if (n > kMaxVertices) {
      throw LimitError("graph has " + std::to_string(n) + " vertices; at most 64 are supported");
    }
    for (const auto& [u, v] : edges) {
      if (u >= n || v >= n) {
        throw InputError("edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                         ") references a vertex outside 1.." + std::to_string(n));
      }
      if (u == v) throw InputError("self-loop at vertex " + std::to_string(u + 1));
      rows_[u] |= bit(v);
      rows_[v] |= bit(u);
    }
  }

  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t size() const { return n_; }
  VertexMask vertices() const { return full_mask(n_); }
  bool adjacent(std::size_t i, std::size_t j) const { return (rows_[i] >> j) & 1U; }
  VertexMask neighbors(std::size_t i) const { return rows_[i]; }
  VertexMask closed_neighbors(std::size_t i) const { return rows_[i] | bit(i); }
  int degree(std::size_t i) const { return popcount(rows_[i]); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (auto r : rows_) twice += static_cast<std::size_t>(popcount(r));
    return twice / 2;
  }

  /// Edges (i, j) with i < j in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < n_; ++i) {
      for (auto j : mask_to_list(rows_[i] & ~full_mask(i + 1))) out.emplace_back(i, j);
    }
    return out;
  }

  std::vector<int> degrees() const {
    std::vector<int> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = degree(i);
    return d;
  }

  Eigen::MatrixXd adjacency_matrix() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (auto j : mask_to_list(rows_[i])) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    }
    return a;
  }

  bool is_regular() const {
    if (n_ == 0) return true;
    const int d0 = degree(0);
    for (std::size_t i = 1; i < n_; ++i) {
      if (degree(i) != d0) return false;
    }
    return true;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<VertexMask> rows_;
};

/// Non-negative vertex weights; defaults to all ones.
struct VertexWeights {
  std::vector<double> values;

  static VertexWeights ones(std::size_t n) { return {std::vector<double>(n, 1.0)}; }

  void validate(std::size_t n) const {
    if (values.size() != n) throw InputError("weight vector length does not match vertex count");
    for (double w : values) {
      if (!(w >= 0.0)) throw InputError("vertex weights must be non-negative");
    }
  }

  friend bool operator==(const VertexWeights&, const VertexWeights&) = default;
};

struct DegreeData {
  std::vector<int> degrees;
  Eigen::MatrixXd diagonal;  // D
};

inline DegreeData degree_data(const Graph& g) {
  DegreeData out{g.degrees(), Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.size()),
                                                    static_cast<Eigen::Index>(g.size()))};
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.diagonal(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = out.degrees[i];
  }
  return out;
}

/// Builds a graph from 1-based vertex pairs.
inline Graph from_edge_list(std::size_t n, std::span<const Edge> edges_one_based) {
  if (n < 1) throw InputError("vertex count must be positive");
  std::vector<Edge> edges;
  edges.reserve(edges_one_based.size());
  for (const auto& [u, v] : edges_one_based) {
    if (u < 1 || v < 1 || u > n || v > n) {
      throw InputError("vertex index out of range in edge (" + std::to_string(u) + "," +
                       std::to_string(v) + ")");
    }
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    edges.emplace_back(u - 1, v - 1);
  }
  return Graph(n, edges);
}

inline Graph from_edge_list(std::size_t n, std::initializer_list<Edge> edges_one_based) {
  return from_edge_list(n, std::span<const Edge>(edges_one_based.begin(), edges_one_based.size()));
}

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

inline bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

inline std::size_t parse_index(std::istringstream& in, std::size_t line_no) {
  long long v = 0;
  if (!(in >> v) || v < 0) throw InputError("line " + std::to_string(line_no) + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

inline void expect_end(std::istringstream& in, std::size_t line_no) {
  std::string rest;
  if (in >> rest) throw InputError("line " + std::to_string(line_no) + ": unexpected trailing token '" + rest + "'");
}

}  // namespace detail

/// Parses DIMACS `col` text: `c` comments, one `p edge n m` line, then `e u v` lines.
inline Graph parse_dimacs(std::string_view text) {
  std::size_t n = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  const auto lines = detail::split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto line = lines[k];
    const std::size_t line_no = k + 1;
    if (detail::is_blank(line)) continue;
    std::istringstream in{std::string(line)};
    std::string tag;
    in >> tag;
    if (tag == "c") continue;
    if (tag == "p") {
      if (have_header) throw InputError("line " + std::to_string(line_no) + ": duplicate 'p' line");
      std::string format;
      in >> format;
      if (format != "edge" && format != "col") {
        throw InputError("line " + std::to_string(line_no) + ": expected 'p edge n m'");
      }
      n = detail::parse_index(in, line_no);
      (void)detail::parse_index(in, line_no);
      detail::expect_end(in, line_no);
      if (n < 1) throw InputError("line " + std::to_string(line_no) + ": vertex count must be positive");
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) throw InputError("line " + std::to_string(line_no) + ": 'e' line before 'p' line");
      const auto u = detail::parse_index(in, line_no);
      const auto v = detail::parse_index(in, line_no);
      detail::expect_end(in, line_no);
      if (u < 1 || v < 1 || u > n || v > n) {
        throw InputError("line " + std::to_string(line_no) + ": vertex index out of range");
      }
      edges.emplace_back(u, v);
    } else {
      throw InputError("line " + std::to_string(line_no) + ": malformed DIMACS line");
    }
  }
  if (!have_header) throw InputError("missing 'p edge n m' line");
  return from_edge_list(n, edges);
}

struct GraphFile {
  Graph graph;
  VertexWeights weights;
};

/// Parses the edge-list format: header `n m`, then m lines `u v`, plus optional
/// `w i value` lines. `#` starts a comment line. Absent weights default to 1.
inline GraphFile parse_edge_list(std::string_view text) {
  std::size_t n = 0, m = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::vector<std::pair<std::size_t, double>> weight_lines;
  const auto lines = detail::split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto line = lines[k];
    const std::size_t line_no = k + 1;
    if (detail::is_blank(line)) continue;
    std::istringstream in{std::string(line)};
    std::string first;
    in >> first;
    if (first.starts_with('#')) continue;
    if (first == "w") {
      if (!have_header) throw InputError("line " + std::to_string(line_no) + ": weight line before header");
      const auto i = detail::parse_index(in, line_no);
      double value = 0.0;
      if (!(in >> value)) throw InputError("line " + std::to_string(line_no) + ": expected 'w i value'");
      detail::expect_end(in, line_no);
      if (i < 1 || i > n) throw InputError("line " + std::to_string(line_no) + ": vertex index out of range");
      if (!(value >= 0.0)) throw InputError("line " + std::to_string(line_no) + ": negative vertex weight");
      weight_lines.emplace_back(i - 1, value);
      continue;
    }
    std::istringstream whole{std::string(line)};
    if (!have_header) {
      n = detail::parse_index(whole, line_no);
      m = detail::parse_index(whole, line_no);
      detail::expect_end(whole, line_no);
      if (n < 1) throw InputError("line " + std::to_string(line_no) + ": vertex count must be positive");
      have_header = true;
      continue;
    }
    const auto u = detail::parse_index(whole, line_no);
    const auto v = detail::parse_index(whole, line_no);
    detail::expect_end(whole, line_no);
    edges.emplace_back(u, v);
  }
  if (!have_header) throw InputError("missing 'n m' header line");
  if (edges.size() != m) {
    throw InputError("header announces " + std::to_string(m) + " edges but " + std::to_string(edges.size()) +
                     " were given");
  }
  GraphFile out{from_edge_list(n, edges), VertexWeights::ones(n)};
  for (const auto& [i, value] : weight_lines) out.weights.values[i] = value;
  return out;
}

/// Dispatches on the first meaningful line: `c`/`p`/`e` means DIMACS.
inline GraphFile parse_graph_text(std::string_view text) {
  for (const auto line : detail::split_lines(text)) {
    if (detail::is_blank(line)) continue;
    std::istringstream in{std::string(line)};
    std::string first;
    in >> first;
    if (first.starts_with('#')) continue;
    if (first == "c" || first == "p" || first == "e") {
      Graph g = parse_dimacs(text);
      auto w = VertexWeights::ones(g.size());
      return {std::move(g), std::move(w)};
    }
    break;
  }
  return parse_edge_list(text);
}

inline std::string to_edge_list(const Graph& g, const VertexWeights* weights = nullptr) {
  std::ostringstream out;
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
  if (weights != nullptr) {
    out.precision(17);
    for (std::size_t i = 0; i < weights->values.size(); ++i) {
      if (weights->values[i] != 1.0) out << "w " << i + 1 << ' ' << weights->values[i] << '\n';
    }
  }
  return out.str();
}

inline std::string to_dimacs(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.size() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

/// Subgraph induced by `vertices` (0-based), relabeled in the given order.
inline Graph induced_subgraph(const Graph& g, std::span<const std::size_t> vertices) {
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    if (vertices[a] >= g.size()) throw InputError("induced_subgraph: vertex index out of range");
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (vertices[b] >= g.size()) throw InputError("induced_subgraph: vertex index out of range");
      if (vertices[a] == vertices[b]) throw InputError("induced_subgraph: repeated vertex");
      if (g.adjacent(vertices[a], vertices[b])) edges.emplace_back(a, b);
    }
  }
  return Graph(vertices.size(), edges);
}

inline Graph induced_subgraph(const Graph& g, VertexMask subset) {
  if ((subset & ~g.vertices()) != 0) throw InputError("induced_subgraph: vertex index out of range");
  const auto list = mask_to_list(subset);
  return induced_subgraph(g, list);
}

/// Connected components as vertex masks, ordered by smallest member.
inline std::vector<VertexMask> connected_components(const Graph& g) {
  std::vector<VertexMask> comps;
  VertexMask unseen = g.vertices();
  while (unseen != 0) {
    VertexMask comp = unseen & (~unseen + 1);
    VertexMask frontier = comp;
    while (frontier != 0) {
      VertexMask next = 0;
      for (auto v : mask_to_list(frontier)) next |= g.neighbors(v);
      frontier = next & ~comp;
      comp |= next;
    }
    comps.push_back(comp);
    unseen &= ~comp;
  }
  return comps;
}

inline bool is_forest(const Graph& g) {
  return g.edge_count() + connected_components(g).size() == g.size();
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  auto edges = a.edges();
  for (const auto& [u, v] : b.edges()) edges.emplace_back(u + a.size(), v + a.size());
  return Graph(a.size() + b.size(), edges);
}

inline Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!g.adjacent(i, j)) edges.emplace_back(i, j);
    }
  }
  return Graph(g.size(), edges);
}

}  // namespace lcpg

#endif  // LCPG_GRAPH_HPP
