#ifndef LCPG_ORACLE_HPP
#define LCPG_ORACLE_HPP

#include <algorithm>
#include <limits>
#include <vector>

#include "lcpg/graph.hpp"

// Brute-force ground truth for the independence invariants. Everything here is
// exponential and intended for n <= 25.
namespace lcpg::oracle {

inline constexpr std::size_t kMaxOracleVertices = 25;

inline void check_oracle_size(const Graph& g) {
  if (g.size() > kMaxOracleVertices) {
    throw LimitError("combinatorial oracle supports at most 25 vertices (got " + std::to_string(g.size()) + ")");
  }
}

inline bool is_independent(const Graph& g, VertexMask s) {
  for (auto v : mask_to_list(s)) {
    if ((g.neighbors(v) & s) != 0) return false;
  }
  return true;
}

inline bool is_dominating(const Graph& g, VertexMask s) {
  VertexMask covered = s;
  for (auto v : mask_to_list(s)) covered |= g.neighbors(v);
  return covered == g.vertices();
}

/// Independent with no single-vertex extension.
inline bool is_maximal_independent(const Graph& g, VertexMask s) {
  return is_independent(g, s) && is_dominating(g, s);
}

struct IndependentSetFamily {
  std::vector<VertexMask> sets;  // ascending by mask
  std::vector<bool> maximal;
  std::vector<bool> maximum;
};

namespace detail {

// Bron-Kerbosch with pivoting on the complement graph: cliques there are
// independent sets here.
inline void bron_kerbosch(const Graph& g, VertexMask r, VertexMask p, VertexMask x, std::vector<VertexMask>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  const VertexMask all = g.vertices();
  auto comp_neighbors = [&](std::size_t v) { return all & ~g.closed_neighbors(v); };
  std::size_t pivot = 0;
  int best = -1;
  for (auto u : mask_to_list(p | x)) {
    const int c = popcount(p & comp_neighbors(u));
    if (c > best) {
      best = c;
      pivot = u;
    }
  }
  for (auto v : mask_to_list(p & ~comp_neighbors(pivot))) {
    const VertexMask nv = comp_neighbors(v);
    bron_kerbosch(g, r | bit(v), p & nv, x & nv, out);
    p &= ~bit(v);
    x |= bit(v);
  }
}

}  // namespace detail

/// All maximal independent sets, each once, ascending by mask.
inline std::vector<VertexMask> maximal_independent_sets(const Graph& g) {
  check_oracle_size(g);
  std::vector<VertexMask> out;
  if (g.size() == 0) return {0};
  detail::bron_kerbosch(g, 0, g.vertices(), 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// The same family by scanning all 2^n subsets; retained as a cross-check.
inline std::vector<VertexMask> maximal_independent_sets_naive(const Graph& g) {
  check_oracle_size(g);
  std::vector<VertexMask> out;
  const VertexMask limit = bit(g.size());
  for (VertexMask s = 0; s < limit; ++s) {
    if (is_maximal_independent(g, s)) out.push_back(s);
  }
  return out;
}

inline IndependentSetFamily enumerate_maximal_independent_sets(const Graph& g, bool naive = false) {
  IndependentSetFamily fam;
  fam.sets = naive ? maximal_independent_sets_naive(g) : maximal_independent_sets(g);
  int best = 0;
  for (auto s : fam.sets) best = std::max(best, popcount(s));
  fam.maximal.assign(fam.sets.size(), true);
  for (auto s : fam.sets) fam.maximum.push_back(popcount(s) == best);
  return fam;
}

inline int alpha_brute(const Graph& g) {
  int best = 0;
  for (auto s : maximal_independent_sets(g)) best = std::max(best, popcount(s));
  return best;
}

inline int beta_brute(const Graph& g) {
  int best = std::numeric_limits<int>::max();
  for (auto s : maximal_independent_sets(g)) best = std::min(best, popcount(s));
  return best;
}

inline double set_weight(VertexMask s, const VertexWeights& w) {
  double total = 0.0;
  for (auto v : mask_to_list(s)) total += w.values[v];
  return total;
}

/// Weighted independence number. With w >= 0 some maximum-weight independent
/// set is maximal, so scanning the maximal family suffices.
inline double alpha_weighted_brute(const Graph& g, const VertexWeights& w) {
  w.validate(g.size());
  double best = 0.0;
  for (auto s : maximal_independent_sets(g)) best = std::max(best, set_weight(s, w));
  return best;
}

/// Weighted maximum over every independent set (no maximality shortcut).
inline double alpha_weighted_exhaustive(const Graph& g, const VertexWeights& w) {
  check_oracle_size(g);
  w.validate(g.size());
  double best = 0.0;
  const VertexMask limit = bit(g.size());
  for (VertexMask s = 0; s < limit; ++s) {
    if (is_independent(g, s)) best = std::max(best, set_weight(s, w));
  }
  return best;
}

inline bool is_well_covered(const Graph& g) {
  const auto sets = maximal_independent_sets(g);
  return std::all_of(sets.begin(), sets.end(), [&](VertexMask s) { return popcount(s) == popcount(sets.front()); });
}

/// Every maximal independent set has exactly |V|/2 vertices.
inline bool is_very_well_covered(const Graph& g) {
  if (g.size() % 2 != 0) return false;
  const auto sets = maximal_independent_sets(g);
  const int half = static_cast<int>(g.size() / 2);
  return std::all_of(sets.begin(), sets.end(), [&](VertexMask s) { return popcount(s) == half; });
}

inline bool has_isolated_vertex(const Graph& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.degree(i) == 0) return true;
  }
  return false;
}

}  // namespace lcpg::oracle

#endif  // LCPG_ORACLE_HPP
