#pragma once

// Out-splitting and out-merging (amalgamation) of edge tree automata.
//
// Two states q, q' may be merged when, for every position l and every
// context (p, other children), M(p, t[l := q]) = M(p, t[l := q']). Merging
// a class sums its rows and keeps one representative per column; it does
// not sum columns.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "homshift/automaton.hpp"

namespace homshift {

struct MergePartition {
  std::vector<std::vector<StateId>> classes;

  /// Every class is a singleton: no merge is possible.
  bool trivial() const;
  /// class_of[s] is the index of the class containing s.
  std::vector<std::size_t> class_of(std::size_t state_count) const;

  friend bool operator==(const MergePartition&, const MergePartition&) = default;
};

/// Coarsest partition into column-equivalence classes; classes are ordered
/// by their first state and each class lists its states in increasing order.
MergePartition coarsest_merge_partition(const EdgeTreeAutomaton& a);

/// Checks that p partitions the states of a and that every class is
/// column-equivalent.
bool is_valid_merge_partition(const EdgeTreeAutomaton& a, const MergePartition& p);

/// One general amalgamation round. The merged state of a class with more
/// than one member is named "(s+t+...)". Throws Error(InvalidPartition).
EdgeTreeAutomaton general_amalgamation(const EdgeTreeAutomaton& a,
                                       const MergePartition& p);

struct AmalgamationTrace {
  EdgeTreeAutomaton result;
  std::vector<MergePartition> rounds;  ///< nontrivial partitions applied
};

/// Applies coarsest general amalgamation rounds until no merge remains or
/// max_rounds rounds have been performed.
AmalgamationTrace amalgamate(const EdgeTreeAutomaton& a,
                             std::optional<std::size_t> max_rounds = std::nullopt);

/// The fixpoint of amalgamate(); unique up to renaming of the states.
EdgeTreeAutomaton total_amalgamation(const EdgeTreeAutomaton& a);

/// Partition of the outgoing transitions of `state` into parts. Each part
/// is a sub-multiset of the row (tuple -> units taken by the part).
struct SplitSpec {
  StateId state = 0;
  std::vector<Row> parts;
};

/// Replaces spec.state by one state per part ("s_1", "s_2", ...). Incoming
/// transitions fan out over all copies. Throws Error(InvalidSplit) unless
/// there are at least two nonempty parts covering the row exactly.
EdgeTreeAutomaton out_split(const EdgeTreeAutomaton& a, const SplitSpec& spec);

/// Composes `rounds` out-splittings chosen by a seeded generator:
///   - std::mt19937_64 seeded with `seed`;
///   - draw(n) = rejection sampling on the raw 64-bit output, so results do
///     not depend on the standard library's distributions;
///   - each round picks a state among those with out-mass >= 2, a part count
///     m in [2, min(mass, 3)], shuffles the unit transitions (Fisher-Yates),
///     deals the first m units to distinct parts and the rest at random.
/// Stops early when no state has out-mass >= 2.
EdgeTreeAutomaton random_split_walk(const EdgeTreeAutomaton& a, std::size_t rounds,
                                    std::uint64_t seed);

}  // namespace homshift
