#ifndef LCPG_SERIALIZE_HPP
#define LCPG_SERIALIZE_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "lcpg/error.hpp"
#include "lcpg/graph.hpp"
#include "lcpg/lcp.hpp"
#include "lcpg/lift.hpp"
#include "lcpg/lp.hpp"
#include "lcpg/polytope.hpp"

namespace lcpg {

using json = nlohmann::json;

inline json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

/// Row-major nested array.
inline json to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

inline Eigen::VectorXd vector_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError(std::string(what) + " must contain numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

inline Eigen::MatrixXd matrix_from_json(const json& j, const char* what, Eigen::Index cols_if_empty = 0) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be a nested array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return Eigen::MatrixXd(0, cols_if_empty);
  if (!j[0].is_array()) throw InputError(std::string(what) + " rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError(std::string(what) + " is ragged");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& cell = row[static_cast<std::size_t>(k)];
      if (!cell.is_number()) throw InputError(std::string(what) + " must contain numbers");
      m(i, k) = cell.get<double>();
    }
  }
  return m;
}

inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
  return {{"n", g.size()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) throw InputError("graph JSON needs n and edges");
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw InputError("graph edge must be a pair");
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return from_edge_list(j.at("n").get<std::size_t>(), std::span<const Edge>(edges));
}

inline json lcp_to_json(const LcpInstance& inst) {
  return {{"M", to_json(inst.M)}, {"q", to_json(inst.q)}, {"provenance", to_string(inst.provenance)}};
}

inline LcpInstance lcp_from_json(const json& j) {
  if (!j.is_object() || !j.contains("M") || !j.contains("q")) throw InputError("LCP JSON needs M and q");
  LcpInstance inst;
  inst.q = vector_from_json(j.at("q"), "q");
  inst.M = matrix_from_json(j.at("M"), "M", inst.q.size());
  inst.provenance = provenance_from_string(j.value("provenance", std::string("raw")));
  inst.validate();
  return inst;
}

inline json support_to_json(VertexMask s) {
  json out = json::array();
  for (auto i : mask_to_list(s)) out.push_back(i + 1);
  return out;
}

inline VertexMask support_from_json(const json& j, std::size_t n) {
  VertexMask s = 0;
  for (const auto& v : j) {
    const auto i = v.get<std::size_t>();
    if (i < 1 || i > n) throw InputError("support index out of range");
    s |= bit(i - 1);
  }
  return s;
}

inline json face_to_json(const SolutionFace& f) {
  return {{"support", support_to_json(f.pattern)}, {"witness", to_json(f.point)}};
}

inline SolutionFace face_from_json(const json& j) {
  SolutionFace f;
  f.point = vector_from_json(j.at("witness"), "witness");
  f.pattern = support_from_json(j.at("support"), static_cast<std::size_t>(f.point.size()));
  f.full_support = support_of(f.point) == f.pattern;
  return f;
}

inline json polytope_to_json(const HPolytope& p) {
  return {{"F", to_json(p.F)}, {"b", to_json(p.b)}, {"u", to_json(p.u)}, {"kind", p.kind}};
}

inline HPolytope polytope_from_json(const json& j) {
  HPolytope p;
  p.u = vector_from_json(j.at("u"), "u");
  p.b = vector_from_json(j.at("b"), "b");
  p.F = matrix_from_json(j.at("F"), "F", p.u.size());
  p.kind = j.value("kind", std::string());
  p.validate();
  return p;
}

inline json ilp_to_json(const IlpResult& r) {
  return {{"value", r.value}, {"incumbent", r.incumbent}, {"node_count", r.node_count}, {"gap", r.gap}};
}

inline IlpResult ilp_from_json(const json& j) {
  IlpResult r;
  r.value = j.at("value").get<long long>();
  r.incumbent = j.at("incumbent").get<std::vector<int>>();
  r.node_count = j.at("node_count").get<std::size_t>();
  r.gap = j.value("gap", 0.0);
  return r;
}

inline json milp_to_json(const MilpResult& r) {
  return {{"value", r.value}, {"x", to_json(r.x)}, {"z", support_to_json(r.z)}, {"node_count", r.node_count}};
}

inline json theta_to_json(const ThetaReport& r) {
  return {{"variant", to_string(r.variant)},
          {"value", r.value},
          {"gap", r.gap},
          {"iterations", r.iterations},
          {"n", r.n},
          {"constraints", r.constraints},
          {"dual_value", r.dual_value},
          {"primal_residual", r.primal_residual},
          {"dual_residual", r.dual_residual},
          {"status", r.status},
          {"converged", r.converged},
          {"witness", r.witness},
          {"max_edge_entry", r.max_edge_entry}};
}

inline ThetaReport theta_from_json(const json& j) {
  ThetaReport r;
  r.variant = theta_variant_from_string(j.at("variant").get<std::string>());
  r.value = j.at("value").get<double>();
  r.gap = j.at("gap").get<double>();
  r.iterations = j.at("iterations").get<std::size_t>();
  r.n = j.at("n").get<std::size_t>();
  r.constraints = j.at("constraints").get<std::size_t>();
  r.dual_value = j.value("dual_value", r.value);
  r.primal_residual = j.value("primal_residual", 0.0);
  r.dual_residual = j.value("dual_residual", 0.0);
  r.status = j.value("status", std::string());
  r.converged = j.value("converged", false);
  r.witness = j.value("witness", std::vector<double>{});
  r.max_edge_entry = j.value("max_edge_entry", 0.0);
  return r;
}

}  // namespace lcpg

#endif  // LCPG_SERIALIZE_HPP
