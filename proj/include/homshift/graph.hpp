#pragma once

// Simple graphs (loops allowed) defining Hom shifts, and their edge tree
// automata.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "homshift/automaton.hpp"

namespace homshift {

using VertexId = std::uint32_t;
using VertexPair = std::pair<VertexId, VertexId>;

/// Undirected graph with at most one edge per unordered pair. Edges are
/// stored as (min, max) index pairs; {v, v} is a loop.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  /// Throws Error(InvalidArgument) on duplicate names, out-of-range
  /// endpoints or a pair listed twice.
  UndirectedGraph(std::vector<std::string> vertices,
                  const std::vector<VertexPair>& edges);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(VertexId v) const { return names_.at(v); }
  std::optional<VertexId> find(std::string_view name) const;

  const std::set<VertexPair>& edges() const noexcept { return edges_; }
  bool adjacent(VertexId u, VertexId v) const;
  /// Sorted neighbors; v itself is included when v has a loop.
  std::vector<VertexId> neighbors(VertexId v) const;

  friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

 private:
  std::vector<std::string> names_;
  std::set<VertexPair> edges_;
};

/// Directed graph with at most one arc per ordered pair; loops allowed.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  DirectedGraph(std::vector<std::string> vertices,
                const std::vector<VertexPair>& arcs);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(VertexId v) const { return names_.at(v); }
  std::optional<VertexId> find(std::string_view name) const;

  const std::set<VertexPair>& arcs() const noexcept { return arcs_; }
  bool has_arc(VertexId u, VertexId v) const { return arcs_.count({u, v}) > 0; }
  std::vector<VertexId> successors(VertexId v) const;

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  std::vector<std::string> names_;
  std::set<VertexPair> arcs_;
};

/// Each edge {u, v} becomes the arcs (u, v) and (v, u); a loop stays one loop.
DirectedGraph underlying_directed(const UndirectedGraph& g);

/// The edge tree automaton of the Hom tree-shift: states are the vertices
/// and M(p, (q_1..q_d)) = 1 iff every (p, q_i) is an edge.
EdgeTreeAutomaton hom_automaton(const UndirectedGraph& g, std::size_t arity);
EdgeTreeAutomaton hom_automaton(const DirectedGraph& g, std::size_t arity);

/// The arity-1 0/1 automaton whose transitions are the arcs of g.
EdgeTreeAutomaton adjacency_automaton(const DirectedGraph& g);

}  // namespace homshift
