#pragma once

// Edge tree automata: the shared value type of the library.
//
// An edge tree automaton of arity d has a finite ordered state set Q and a
// multiplicity M(p, (q_1, ..., q_d)) >= 0 for every state p and child tuple.
// Transition labels are never stored: parallel transitions are implicitly
// distinct, so the multiplicities determine the automaton up to relabeling.
// Arity 1 is a directed multigraph (one-sided edge shift).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace homshift {

using StateId = std::uint32_t;
using Count = std::uint64_t;
using Tuple = std::vector<StateId>;
/// Nonzero entries of one row of the transition matrix, keyed by child tuple.
using Row = std::map<Tuple, Count>;
using BigCount = boost::multiprecision::cpp_int;

class EdgeTreeAutomaton {
 public:
  /// Validates arity >= 1, a nonempty list of distinct names, tuple lengths,
  /// child indices and positive counts. Throws Error(InvalidArgument).
  EdgeTreeAutomaton(std::size_t arity, std::vector<std::string> names,
                    std::vector<Row> rows);

  /// The automaton with no states; it accepts the empty shift.
  static EdgeTreeAutomaton empty(std::size_t arity);

  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return names_.size(); }
  bool is_empty() const noexcept { return names_.empty(); }

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(StateId s) const { return names_.at(s); }
  std::optional<StateId> find(std::string_view name) const;

  const std::vector<Row>& rows() const noexcept { return rows_; }
  const Row& row(StateId s) const { return rows_.at(s); }

  Count multiplicity(StateId s, const Tuple& children) const;
  /// Sum of the row of s.
  Count out_mass(StateId s) const;
  /// Number of (state, tuple) pairs with positive multiplicity.
  std::size_t entry_count() const;
  /// Every state has at least one outgoing transition.
  bool is_trim() const;

  friend bool operator==(const EdgeTreeAutomaton&,
                         const EdgeTreeAutomaton&) = default;

 private:
  explicit EdgeTreeAutomaton(std::size_t arity) : arity_(arity) {}

  std::size_t arity_;
  std::vector<std::string> names_;
  std::vector<Row> rows_;
};

/// Incremental construction by state name. Counts added twice accumulate.
class AutomatonBuilder {
 public:
  explicit AutomatonBuilder(std::size_t arity) : arity_(arity) {}

  StateId state(std::string_view name);
  AutomatonBuilder& add(std::string_view from,
                        const std::vector<std::string_view>& children,
                        Count count = 1);
  AutomatonBuilder& add(StateId from, Tuple children, Count count = 1);

  EdgeTreeAutomaton build() const;

 private:
  std::size_t arity_;
  std::vector<std::string> names_;
  std::map<std::string, StateId, std::less<>> index_;
  std::vector<Row> rows_;
};

/// A bijection between the states (or vertices) of two objects:
/// map[i] is the image of state i.
struct Isomorphism {
  std::vector<StateId> map;
  friend bool operator==(const Isomorphism&, const Isomorphism&) = default;
};

/// Relabels A by a permutation: state i of A becomes state perm[i].
EdgeTreeAutomaton permute_states(const EdgeTreeAutomaton& a,
                                 const std::vector<StateId>& perm);

/// Full entry-by-entry check that iso maps A onto B.
bool is_isomorphism(const EdgeTreeAutomaton& a, const EdgeTreeAutomaton& b,
                    const Isomorphism& iso);

/// Iteratively removes states without an outgoing transition into surviving
/// states. The result is trim, or empty when the shift is empty. Survivors
/// keep their relative order.
EdgeTreeAutomaton trim(const EdgeTreeAutomaton& a);

// ---------------------------------------------------------------------------
// Finite blocks

/// A complete d-ary labeled tree of height h >= 1, labels in level order
/// (root first, then the children of the root by direction 0..d-1, ...).
struct Block {
  std::size_t arity = 1;
  std::size_t height = 1;
  std::vector<std::string> labels;

  friend auto operator<=>(const Block&, const Block&) = default;
};

/// 1 + d + ... + d^(h-1). Throws Error(Overflow) when it does not fit.
std::size_t block_node_count(std::size_t arity, std::size_t height);

struct BlockCountTable {
  std::size_t height = 0;
  std::vector<BigCount> per_state;
  BigCount total;
};

/// Number of height-k computation blocks rooted at each state. Since all
/// labels are distinct this is |B_k| of the edge tree shift.
/// Requires a trim automaton and k >= 1.
BlockCountTable count_blocks(const EdgeTreeAutomaton& a, std::size_t height);

/// One node of a finite computation: the transition taken there.
struct ComputationNode {
  StateId state = 0;
  Tuple children;
  Count copy = 1;  ///< which of the parallel transitions, 1-based

  friend auto operator<=>(const ComputationNode&,
                          const ComputationNode&) = default;
};

struct ComputationBlock {
  std::size_t arity = 1;
  std::size_t height = 1;
  std::vector<ComputationNode> nodes;  ///< level order

  /// Canonical labeled form, labels "p→(q,r)#i".
  Block labeled(const EdgeTreeAutomaton& a) const;

  friend auto operator<=>(const ComputationBlock&,
                          const ComputationBlock&) = default;
};

inline constexpr std::size_t kDefaultBlockCap = 1'000'000;

std::string transition_label(const EdgeTreeAutomaton& a, StateId from,
                             const Tuple& children, Count copy);

/// All height-k computation blocks, in lexicographic order. Throws
/// Error(CapExceeded) when their number exceeds cap.
std::vector<ComputationBlock> enumerate_computations(
    const EdgeTreeAutomaton& a, std::size_t height,
    std::size_t cap = kDefaultBlockCap);

/// enumerate_computations mapped to canonical labeled blocks, sorted.
std::vector<Block> enumerate_blocks(const EdgeTreeAutomaton& a,
                                    std::size_t height,
                                    std::size_t cap = kDefaultBlockCap);

}  // namespace homshift
