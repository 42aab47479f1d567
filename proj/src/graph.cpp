#include "homshift/graph.hpp"

#include <algorithm>

#include "homshift/errors.hpp"

namespace homshift {

namespace {

void check_names(const std::vector<std::string>& names) {
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate vertex name '" + n + "'");
    }
  }
}

std::optional<VertexId> find_name(const std::vector<std::string>& names,
                                  std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<VertexId>(it - names.begin());
}

// Every tuple of `choices`^arity, in lexicographic order.
void for_each_tuple(const std::vector<StateId>& choices, std::size_t arity,
                    Row& row) {
  if (choices.empty()) return;
  std::vector<std::size_t> pick(arity, 0);
  while (true) {
    Tuple t(arity);
    for (std::size_t i = 0; i < arity; ++i) t[i] = choices[pick[i]];
    row.emplace(std::move(t), 1);
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++pick[i] < choices.size()) break;
      pick[i] = 0;
      if (i == 0) return;
    }
  }
}

template <typename Graph, typename Out>
EdgeTreeAutomaton hom_automaton_impl(const Graph& g, std::size_t arity, Out out) {
  if (arity == 0) {
    throw Error(ErrorCode::InvalidArgument, "arity must be at least 1");
  }
  if (g.size() == 0) return EdgeTreeAutomaton::empty(arity);
  std::vector<Row> rows(g.size());
  for (VertexId v = 0; v < g.size(); ++v) {
    for_each_tuple(out(v), arity, rows[v]);
  }
  return EdgeTreeAutomaton(arity, g.names(), std::move(rows));
}

}  // namespace

UndirectedGraph::UndirectedGraph(std::vector<std::string> vertices,
                                 const std::vector<VertexPair>& edges)
    : names_(std::move(vertices)) {
  check_names(names_);
  for (auto [u, v] : edges) {
    if (u >= names_.size() || v >= names_.size()) {
      throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    }
    if (!edges_.insert(std::minmax(u, v)).second) {
      throw Error(ErrorCode::InvalidArgument, "edge {" + names_[u] + ", " +
                                                  names_[v] + "} listed twice");
    }
  }
}

std::optional<VertexId> UndirectedGraph::find(std::string_view name) const {
  return find_name(names_, name);
}

bool UndirectedGraph::adjacent(VertexId u, VertexId v) const {
  return edges_.count(std::minmax(u, v)) > 0;
}

std::vector<VertexId> UndirectedGraph::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (auto [a, b] : edges_) {
    if (a == v) out.push_back(b);
    else if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DirectedGraph::DirectedGraph(std::vector<std::string> vertices,
                             const std::vector<VertexPair>& arcs)
    : names_(std::move(vertices)) {
  check_names(names_);
  for (auto arc : arcs) {
    if (arc.first >= names_.size() || arc.second >= names_.size()) {
      throw Error(ErrorCode::InvalidArgument, "arc endpoint out of range");
    }
    if (!arcs_.insert(arc).second) {
      throw Error(ErrorCode::InvalidArgument, "arc (" + names_[arc.first] + ", " +
                                                  names_[arc.second] + ") listed twice");
    }
  }
}

std::optional<VertexId> DirectedGraph::find(std::string_view name) const {
  return find_name(names_, name);
}

std::vector<VertexId> DirectedGraph::successors(VertexId v) const {
  std::vector<VertexId> out;
  for (auto it = arcs_.lower_bound({v, 0}); it != arcs_.end() && it->first == v; ++it) {
    out.push_back(it->second);
  }
  return out;
}

DirectedGraph underlying_directed(const UndirectedGraph& g) {
  std::vector<VertexPair> arcs;
  for (auto [u, v] : g.edges()) {
    arcs.emplace_back(u, v);
    if (u != v) arcs.emplace_back(v, u);
  }
  return DirectedGraph(g.names(), arcs);
}

EdgeTreeAutomaton hom_automaton(const UndirectedGraph& g, std::size_t arity) {
  return hom_automaton_impl(g, arity, [&](VertexId v) { return g.neighbors(v); });
}

EdgeTreeAutomaton hom_automaton(const DirectedGraph& g, std::size_t arity) {
  return hom_automaton_impl(g, arity, [&](VertexId v) { return g.successors(v); });
}

EdgeTreeAutomaton adjacency_automaton(const DirectedGraph& g) {
  return hom_automaton(g, 1);
}

}  // namespace homshift
