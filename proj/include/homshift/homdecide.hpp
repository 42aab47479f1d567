#pragma once

// Deciding whether an edge tree shift is conjugate to a Hom tree-shift
// (undirected graph) or a directed Hom tree-shift, with witness graphs.

#include <optional>
#include <string>
#include <vector>

#include "homshift/automaton.hpp"
#include "homshift/graph.hpp"

namespace homshift {

/// Row p of a regular automaton equals level[p] on successors[p]^d and 0
/// elsewhere, and q in successors[p] implies M(q, (p, ..., p)) > 0.
struct RegularityCertificate {
  std::vector<std::vector<StateId>> successors;  ///< sorted
  std::vector<Count> level;

  friend bool operator==(const RegularityCertificate&,
                         const RegularityCertificate&) = default;
};

enum class RegularityViolation {
  EmptyRow,           ///< state has no outgoing transition
  NotProductSupport,  ///< tuple over the row's support is missing
  NonConstantLevel,   ///< two nonzero entries of a row differ
  MissingBackEdge,    ///< q in S(p) but M(q, (p, ..., p)) = 0
};

const char* to_string(RegularityViolation v) noexcept;

struct RegularityFailure {
  RegularityViolation kind;
  StateId state = 0;
  /// The offending tuple; for MissingBackEdge, the absent (p, ..., p) of
  /// the child state `other`.
  Tuple tuple;
  StateId other = 0;

  std::string describe(const EdgeTreeAutomaton& a) const;
};

struct RegularityCheck {
  std::optional<RegularityCertificate> certificate;
  std::optional<RegularityFailure> failure;

  bool regular() const { return certificate.has_value(); }
};

/// Reports the first violated condition, scanning states in order and, per
/// state, product support, then constant level, then back edges.
RegularityCheck check_regular(const EdgeTreeAutomaton& a);

struct SymmetryFailure {
  StateId state = 0;
  Tuple tuple;
  Tuple permuted;
  Count count = 0;
  Count permuted_count = 0;

  std::string describe(const EdgeTreeAutomaton& a) const;
};

/// nullopt when every row is invariant under permutations of the child
/// tuple (always the case at arity 1).
std::optional<SymmetryFailure> check_symmetric(const EdgeTreeAutomaton& a);

/// Where a witness vertex comes from: a state, the children it may use and
/// a 1-based copy index.
struct CopyOrigin {
  StateId state = 0;
  /// Undirected: empty. Directed: the child set (cube decomposition) or the
  /// sorted child multiset (orbit construction).
  std::vector<StateId> selector;
  Count copy = 1;
  bool cube = false;

  friend bool operator==(const CopyOrigin&, const CopyOrigin&) = default;
};

struct UndirectedWitness {
  UndirectedGraph graph;
  std::vector<CopyOrigin> origin;  ///< indexed by vertex
};

struct DirectedWitness {
  DirectedGraph graph;
  std::vector<CopyOrigin> origin;
  /// Every row was decomposed into cubes T^d, so the witness automaton is an
  /// out-splitting of the input and the shifts are conjugate. When false,
  /// at least one row fell back to the child-multiset construction.
  bool exact = true;
};

/// Splits each state p into level[p] vertices; {p_i, q_j} is an edge iff
/// q is in successors[p]. Throws Error(InvalidCertificate).
UndirectedWitness synthesize_hom(const EdgeTreeAutomaton& a,
                                 const RegularityCertificate& cert);

/// Splits each state p into one vertex per part of its row: rows that are
/// a sum of cubes T^d give one vertex per cube; other rows give
/// M(p, chi) vertices per child multiset chi. A vertex of p with child set
/// C has an arc to every vertex of every q in C.
/// Throws Error(NotSymmetric) or Error(NotTrim).
DirectedWitness synthesize_directed_hom(const EdgeTreeAutomaton& a);

struct HomDecision {
  bool conjugate = false;
  /// The input trims to the empty automaton; answered yes with an empty graph.
  bool degenerate = false;
  EdgeTreeAutomaton amalgamation;
  RegularityCheck regularity;
  std::optional<UndirectedWitness> witness;
};

struct DirectedHomDecision {
  bool conjugate = false;
  bool degenerate = false;
  EdgeTreeAutomaton amalgamation;
  std::optional<SymmetryFailure> failure;
  std::optional<DirectedWitness> witness;
};

/// Trims, computes the total amalgamation and tests regularity.
HomDecision decide_hom(const EdgeTreeAutomaton& a);

/// Trims, computes the total amalgamation and tests symmetry.
DirectedHomDecision decide_directed_hom(const EdgeTreeAutomaton& a);

}  // namespace homshift
