#include "homshift/homdecide.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "homshift/amalgamation.hpp"
#include "homshift/errors.hpp"

namespace homshift {

namespace {

std::string tuple_text(const EdgeTreeAutomaton& a, const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += a.name(t[i]);
  }
  return out + ")";
}

std::vector<StateId> support(const Row& row) {
  std::set<StateId> s;
  for (const auto& [t, c] : row) s.insert(t.begin(), t.end());
  return {s.begin(), s.end()};
}

// Calls f on every tuple of choices^arity in lexicographic order until f
// returns false. Returns false iff f did.
template <typename F>
bool for_each_power_tuple(const std::vector<StateId>& choices, std::size_t arity, F&& f) {
  if (choices.empty()) return true;
  std::vector<std::size_t> pick(arity, 0);
  Tuple t(arity);
  while (true) {
    for (std::size_t i = 0; i < arity; ++i) t[i] = choices[pick[i]];
    if (!f(t)) return false;
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++pick[i] < choices.size()) break;
      pick[i] = 0;
      if (i == 0) return true;
    }
  }
}

Tuple constant_tuple(StateId s, std::size_t arity) { return Tuple(arity, s); }

// Exact decomposition of a row into a multiset of cubes T^d, each tuple of
// a cube contributing one unit. Larger cubes are tried first.
class CubeDecomposer {
 public:
  CubeDecomposer(std::size_t arity, std::uint64_t budget) : arity_(arity), budget_(budget) {}

  std::optional<std::vector<std::vector<StateId>>> run(Row row) {
    std::vector<std::vector<StateId>> cubes;
    if (solve(row, cubes)) return cubes;
    return std::nullopt;
  }

 private:
  bool fits(const Row& row, const std::vector<StateId>& cube) const {
    return for_each_power_tuple(cube, arity_, [&](const Tuple& t) {
      auto it = row.find(t);
      return it != row.end() && it->second > 0;
    });
  }

  void supersets(const Row& row, const std::vector<StateId>& universe, std::size_t from,
                 std::vector<StateId>& current, std::vector<std::vector<StateId>>& out) {
    out.push_back(current);
    for (std::size_t i = from; i < universe.size(); ++i) {
      if (std::binary_search(current.begin(), current.end(), universe[i])) continue;
      auto next = current;
      next.insert(std::upper_bound(next.begin(), next.end(), universe[i]), universe[i]);
      if (fits(row, next)) supersets(row, universe, i + 1, next, out);
    }
  }

  bool solve(Row& row, std::vector<std::vector<StateId>>& cubes) {
    if (row.empty()) return true;
    if (++nodes_ > budget_) return false;
    std::set<StateId> first(row.begin()->first.begin(), row.begin()->first.end());
    std::vector<StateId> base(first.begin(), first.end());
    if (!fits(row, base)) return false;
    std::vector<std::vector<StateId>> options;
    supersets(row, support(row), 0, base, options);
    std::stable_sort(options.begin(), options.end(),
                     [](const auto& x, const auto& y) { return x.size() > y.size(); });
    for (const auto& cube : options) {
      for_each_power_tuple(cube, arity_, [&](const Tuple& t) {
        if (--row[t] == 0) row.erase(t);
        return true;
      });
      cubes.push_back(cube);
      if (solve(row, cubes)) return true;
      cubes.pop_back();
      for_each_power_tuple(cube, arity_, [&](const Tuple& t) {
        ++row[t];
        return true;
      });
    }
    return false;
  }

  std::size_t arity_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

constexpr std::uint64_t kCubeSearchBudget = 200'000;

std::string unique_vertex_name(std::string base, std::set<std::string>& used) {
  while (!used.insert(base).second) base += '\'';
  return base;
}

}  // namespace

const char* to_string(RegularityViolation v) noexcept {
  switch (v) {
    case RegularityViolation::EmptyRow: return "empty-row";
    case RegularityViolation::NotProductSupport: return "not-product-support";
    case RegularityViolation::NonConstantLevel: return "non-constant-level";
    case RegularityViolation::MissingBackEdge: return "missing-back-edge";
  }
  return "unknown";
}

std::string RegularityFailure::describe(const EdgeTreeAutomaton& a) const {
  const std::string& p = a.name(state);
  switch (kind) {
    case RegularityViolation::EmptyRow:
      return "state " + p + " has no outgoing transition";
    case RegularityViolation::NotProductSupport:
      return "state " + p + " has no transition to " + tuple_text(a, tuple) +
             " although every child occurs in its row";
    case RegularityViolation::NonConstantLevel:
      return "row of state " + p + " is not constant: M(" + p + ", " + tuple_text(a, tuple) +
             ") = " + std::to_string(a.multiplicity(state, tuple));
    case RegularityViolation::MissingBackEdge:
      return "state " + p + " has a transition to " + a.name(other) + " but " + a.name(other) +
             " has no transition to " + tuple_text(a, tuple);
  }
  return "unknown violation";
}

RegularityCheck check_regular(const EdgeTreeAutomaton& a) {
  const std::size_t d = a.arity();
  RegularityCertificate cert;
  auto fail = [](RegularityViolation kind, StateId p, Tuple t, StateId other = 0) {
    return RegularityCheck{std::nullopt, RegularityFailure{kind, p, std::move(t), other}};
  };
  for (StateId p = 0; p < a.size(); ++p) {
    const Row& row = a.row(p);
    if (row.empty()) return fail(RegularityViolation::EmptyRow, p, {});
    auto s = support(row);
    std::optional<Tuple> missing;
    for_each_power_tuple(s, d, [&](const Tuple& t) {
      if (row.count(t)) return true;
      missing = t;
      return false;
    });
    if (missing) return fail(RegularityViolation::NotProductSupport, p, *missing);
    const Count level = row.begin()->second;
    for (const auto& [t, c] : row) {
      if (c != level) return fail(RegularityViolation::NonConstantLevel, p, t);
    }
    for (StateId q : s) {
      auto back = constant_tuple(p, d);
      if (a.multiplicity(q, back) == 0) {
        return fail(RegularityViolation::MissingBackEdge, p, back, q);
      }
    }
    cert.successors.push_back(std::move(s));
    cert.level.push_back(level);
  }
  return RegularityCheck{std::move(cert), std::nullopt};
}

std::string SymmetryFailure::describe(const EdgeTreeAutomaton& a) const {
  const std::string& p = a.name(state);
  return "M(" + p + ", " + tuple_text(a, tuple) + ") = " + std::to_string(count) + " but M(" +
         p + ", " + tuple_text(a, permuted) + ") = " + std::to_string(permuted_count);
}

std::optional<SymmetryFailure> check_symmetric(const EdgeTreeAutomaton& a) {
  for (StateId p = 0; p < a.size(); ++p) {
    for (const auto& [t, c] : a.row(p)) {
      Tuple perm = t;
      std::sort(perm.begin(), perm.end());
      do {
        Count other = a.multiplicity(p, perm);
        if (other != c) return SymmetryFailure{p, t, perm, c, other};
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return std::nullopt;
}

UndirectedWitness synthesize_hom(const EdgeTreeAutomaton& a, const RegularityCertificate& cert) {
  const std::size_t n = a.size();
  const std::size_t d = a.arity();
  if (cert.successors.size() != n || cert.level.size() != n) {
    throw Error(ErrorCode::InvalidCertificate, "certificate does not match the state count");
  }
  for (StateId p = 0; p < n; ++p) {
    const auto& s = cert.successors[p];
    if (cert.level[p] == 0 || s.empty() || !std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end() || s.back() >= n) {
      throw Error(ErrorCode::InvalidCertificate, "malformed certificate entry for state " + a.name(p));
    }
    std::size_t expected = 1;
    for (std::size_t i = 0; i < d; ++i) expected *= s.size();
    bool rows_match = a.row(p).size() == expected &&
                      for_each_power_tuple(s, d, [&](const Tuple& t) {
                        return a.multiplicity(p, t) == cert.level[p];
                      });
    if (!rows_match) {
      throw Error(ErrorCode::InvalidCertificate, "certificate does not describe the row of " + a.name(p));
    }
    for (StateId q : s) {
      if (!std::binary_search(cert.successors[q].begin(), cert.successors[q].end(), p)) {
        throw Error(ErrorCode::InvalidCertificate,
                    "successor relation is not symmetric at " + a.name(p) + ", " + a.name(q));
      }
    }
  }

  std::vector<std::string> names;
  std::vector<CopyOrigin> origin;
  std::vector<std::vector<VertexId>> copies(n);
  std::set<std::string> used;
  for (StateId p = 0; p < n; ++p) {
    for (Count i = 1; i <= cert.level[p]; ++i) {
      copies[p].push_back(static_cast<VertexId>(names.size()));
      names.push_back(unique_vertex_name(a.name(p) + "_" + std::to_string(i), used));
      origin.push_back(CopyOrigin{p, {}, i, false});
    }
  }
  std::vector<VertexPair> edges;
  for (StateId p = 0; p < n; ++p) {
    for (StateId q : cert.successors[p]) {
      if (q < p) continue;
      for (VertexId u : copies[p]) {
        for (VertexId v : copies[q]) {
          if (p == q && v < u) continue;
          edges.emplace_back(u, v);
        }
      }
    }
  }
  return UndirectedWitness{UndirectedGraph(std::move(names), edges), std::move(origin)};
}

DirectedWitness synthesize_directed_hom(const EdgeTreeAutomaton& a) {
  if (!a.is_trim()) {
    throw Error(ErrorCode::NotTrim, "directed Hom synthesis requires a trim automaton");
  }
  if (auto failure = check_symmetric(a)) {
    throw Error(ErrorCode::NotSymmetric, failure->describe(a));
  }
  const std::size_t n = a.size();
  const std::size_t d = a.arity();

  struct Part {
    std::vector<StateId> selector;
    std::vector<StateId> children;  // distinct, sorted
    Count copies;
    bool cube;
  };
  std::vector<std::vector<Part>> parts(n);
  bool exact = true;
  for (StateId p = 0; p < n; ++p) {
    CubeDecomposer decomposer(d, kCubeSearchBudget);
    if (auto cubes = decomposer.run(a.row(p))) {
      std::map<std::vector<StateId>, Count> tally;
      for (auto& cube : *cubes) ++tally[cube];
      for (auto& [cube, k] : tally) parts[p].push_back(Part{cube, cube, k, true});
      continue;
    }
    exact = false;
    for (const auto& [t, c] : a.row(p)) {
      if (!std::is_sorted(t.begin(), t.end())) continue;
      std::vector<StateId> distinct(t.begin(), t.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      parts[p].push_back(Part{t, std::move(distinct), c, false});
    }
  }

  std::vector<std::string> names;
  std::vector<CopyOrigin> origin;
  std::vector<std::vector<VertexId>> copies(n);
  std::vector<std::vector<StateId>> children_of;
  std::set<std::string> used;
  for (StateId p = 0; p < n; ++p) {
    std::map<std::string, Count> shown;
    for (const auto& part : parts[p]) {
      std::string label = a.name(p) + "_{";
      for (std::size_t i = 0; i < part.children.size(); ++i) {
        if (i) label += ',';
        label += a.name(part.children[i]);
      }
      label += '}';
      for (Count i = 1; i <= part.copies; ++i) {
        Count index = ++shown[label];
        copies[p].push_back(static_cast<VertexId>(names.size()));
        names.push_back(unique_vertex_name(label + "_" + std::to_string(index), used));
        origin.push_back(CopyOrigin{p, part.selector, i, part.cube});
        children_of.push_back(part.children);
      }
    }
  }
  std::vector<VertexPair> arcs;
  for (VertexId v = 0; v < names.size(); ++v) {
    for (StateId q : children_of[v]) {
      for (VertexId w : copies[q]) arcs.emplace_back(v, w);
    }
  }
  return DirectedWitness{DirectedGraph(std::move(names), arcs), std::move(origin), exact};
}

HomDecision decide_hom(const EdgeTreeAutomaton& a) {
  auto trimmed = trim(a);
  HomDecision out{false, false, total_amalgamation(trimmed), {}, std::nullopt};
  if (trimmed.is_empty()) {
    out.conjugate = true;
    out.degenerate = true;
    out.regularity.certificate = RegularityCertificate{};
    out.witness = UndirectedWitness{};
    return out;
  }
  out.regularity = check_regular(out.amalgamation);
  if (out.regularity.regular()) {
    out.conjugate = true;
    out.witness = synthesize_hom(out.amalgamation, *out.regularity.certificate);
  }
  return out;
}

DirectedHomDecision decide_directed_hom(const EdgeTreeAutomaton& a) {
  auto trimmed = trim(a);
  DirectedHomDecision out{false, false, total_amalgamation(trimmed), std::nullopt, std::nullopt};
  if (trimmed.is_empty()) {
    out.conjugate = true;
    out.degenerate = true;
    out.witness = DirectedWitness{};
    return out;
  }
  out.failure = check_symmetric(out.amalgamation);
  if (!out.failure) {
    out.conjugate = true;
    out.witness = synthesize_directed_hom(out.amalgamation);
  }
  return out;
}

}  // namespace homshift
