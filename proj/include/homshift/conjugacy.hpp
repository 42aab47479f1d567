#pragma once

// Isomorphism of edge tree automata and graphs, and the conjugacy decision
// for edge tree shifts: two trim automata define conjugate shifts iff their
// total amalgamations are isomorphic.

#include <cstdint>
#include <optional>

#include "homshift/automaton.hpp"
#include "homshift/graph.hpp"

namespace homshift {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// Backtracking search for a state bijection preserving every multiplicity.
/// Candidates are pruned by colors from iterated refinement of per-state
/// fingerprints (row multiplicities, out-mass, per-position in-mass).
/// Throws Error(BudgetExceeded) after node_budget search nodes and
/// Error(InvalidArgument) when the arities differ.
std::optional<Isomorphism> automaton_isomorphic(
    const EdgeTreeAutomaton& a, const EdgeTreeAutomaton& b,
    std::uint64_t node_budget = kDefaultNodeBudget);

std::optional<Isomorphism> graph_isomorphic(
    const UndirectedGraph& g, const UndirectedGraph& h,
    std::uint64_t node_budget = kDefaultNodeBudget);
std::optional<Isomorphism> graph_isomorphic(
    const DirectedGraph& g, const DirectedGraph& h,
    std::uint64_t node_budget = kDefaultNodeBudget);

struct ConjugacyDecision {
  bool conjugate = false;
  /// Whether trimming removed states from the respective input.
  bool trimmed_a = false;
  bool trimmed_b = false;
  EdgeTreeAutomaton amalgamation_a;
  EdgeTreeAutomaton amalgamation_b;
  /// Maps states of amalgamation_a onto amalgamation_b when conjugate.
  std::optional<Isomorphism> isomorphism;
};

/// Trims both inputs, then compares their total amalgamations. Two empty
/// shifts are conjugate; an empty and a nonempty one are not.
ConjugacyDecision decide_conjugacy(const EdgeTreeAutomaton& a,
                                   const EdgeTreeAutomaton& b,
                                   std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace homshift
