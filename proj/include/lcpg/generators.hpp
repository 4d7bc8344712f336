#ifndef LCPG_GENERATORS_HPP
#define LCPG_GENERATORS_HPP

#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lcpg/graph.hpp"

namespace lcpg {

/// Seedable 64-bit generator used by every randomized routine.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Real and bounded-integer draws are derived here rather than via
/// <random> distributions, whose algorithms are implementation-defined:
///   uniform01():  (next() >> 11) * 2^-53, a double in [0, 1)
///   below(k):     rejection sampling of next() against the largest multiple of k
/// See docs/random.md.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, k); k must be positive.
  std::uint64_t below(std::uint64_t k) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % k);
    std::uint64_t r = next();
    while (r >= limit) r = next();
    return r % k;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, edges);
}

inline Graph empty_graph(std::size_t n) { return Graph(n, std::span<const Edge>{}); }

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

/// K_{1,k}; vertex 0 is the center.
inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, edges);
}

inline Graph petersen_graph() {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return Graph(10, edges);
}

/// Standard graph families by tag: complete, path, cycle, star, petersen, empty.
/// For star, `param` is the number of leaves; otherwise it is the vertex count.
inline Graph named_graph(std::string_view family, std::size_t param = 0) {
  if (family == "petersen") return petersen_graph();
  if (family == "star") {
    if (param < 1) throw InputError("star needs at least one leaf");
    return star_graph(param);
  }
  if (param < 1) throw InputError("graph family '" + std::string(family) + "' needs n >= 1");
  if (family == "complete") return complete_graph(param);
  if (family == "path") return path_graph(param);
  if (family == "cycle") return cycle_graph(param);
  if (family == "empty") return empty_graph(param);
  throw InputError("unknown graph family '" + std::string(family) + "'");
}

/// Parses "family:param" (e.g. "cycle:8", "petersen").
inline Graph named_graph_from_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) return named_graph(spec, 0);
  const auto family = spec.substr(0, colon);
  const std::string digits(spec.substr(colon + 1));
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError("bad graph parameter in '" + std::string(spec) + "'");
  }
  return named_graph(family, static_cast<std::size_t>(std::stoull(digits)));
}

/// G(n, p): every pair i < j, visited in lexicographic order, is an edge iff
/// the next uniform01() draw is below p.
inline Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

/// Random bipartite graph: parts {0..left-1} and {left..left+right-1}, each
/// cross pair present with probability p.
inline Graph gen_random_bipartite(std::size_t left, std::size_t right, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < left; ++i) {
    for (std::size_t j = 0; j < right; ++j) {
      if (rng.bernoulli(p)) edges.emplace_back(i, left + j);
    }
  }
  return Graph(left + right, edges);
}

namespace detail {

/// Decodes a Pruefer sequence over labels 0..size-1 into tree edges.
inline std::vector<Edge> decode_pruefer(const std::vector<std::size_t>& seq, std::size_t size) {
  std::vector<Edge> edges;
  if (size < 2) return edges;
  std::vector<std::size_t> degree(size, 1);
  for (auto s : seq) ++degree[s];
  for (auto s : seq) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(leaf, s);
    --degree[leaf];
    --degree[s];
  }
  std::size_t u = size, v = size;
  for (std::size_t i = 0; i < size; ++i) {
    if (degree[i] == 1) (u == size ? u : v) = i;
  }
  edges.emplace_back(u, v);
  return edges;
}

}  // namespace detail

/// Uniformly random labeled tree on `size` vertices (via a random Pruefer sequence).
inline Graph random_tree(std::size_t size, Rng& rng) {
  std::vector<std::size_t> seq;
  for (std::size_t i = 0; i + 2 < size; ++i) seq.push_back(static_cast<std::size_t>(rng.below(size)));
  const auto edges = detail::decode_pruefer(seq, size);
  return Graph(size, edges);
}

/// Random forest on n vertices: component sizes are drawn one at a time
/// uniformly from 1..remaining, each component is a uniform random labeled
/// tree, and the vertex labels are finally shuffled.
inline Graph random_forest(std::size_t n, Rng& rng) {
  std::vector<Edge> edges;
  std::size_t offset = 0;
  while (offset < n) {
    const auto size = 1 + static_cast<std::size_t>(rng.below(n - offset));
    const Graph tree = random_tree(size, rng);
    for (const auto& [u, v] : tree.edges()) edges.emplace_back(u + offset, v + offset);
    offset += size;
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  rng.shuffle(perm);
  for (auto& [u, v] : edges) {
    u = perm[u];
    v = perm[v];
  }
  return Graph(n, edges);
}

/// Weight entries drawn uniformly from {0, 0.5, 1, 2, 3.5}.
inline VertexWeights random_weights(std::size_t n, Rng& rng) {
  static constexpr std::array<double, 5> kLevels{0.0, 0.5, 1.0, 2.0, 3.5};
  VertexWeights w;
  w.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) w.values.push_back(kLevels[static_cast<std::size_t>(rng.below(kLevels.size()))]);
  return w;
}

/// The labeled graph on n vertices whose edge set is encoded by `code`:
/// bit k of code is the k-th pair (i < j) in lexicographic order.
inline Graph graph_from_code(std::size_t n, std::uint64_t code) {
  std::vector<Edge> edges;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if ((code >> k) & 1U) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

}  // namespace lcpg

#endif  // LCPG_GENERATORS_HPP
