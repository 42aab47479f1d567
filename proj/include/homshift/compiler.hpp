#pragma once

// Compiling a tree-shift of finite type, given by forbidden blocks, into a
// trim edge tree automaton by the higher block construction. At arity 1
// this is the de Bruijn construction for word shifts.

#include <cstddef>
#include <string>
#include <vector>

#include "homshift/automaton.hpp"

namespace homshift {

struct SftPresentation {
  std::size_t arity = 1;
  std::vector<std::string> alphabet;
  std::vector<Block> forbidden;  ///< complete blocks, heights may differ
};

/// Throws Error(InvalidArgument) unless arity >= 1, the alphabet is nonempty
/// with distinct symbols, and every forbidden block has this arity, height
/// >= 1, the matching label count and labels from the alphabet.
void validate(const SftPresentation& p);

/// Forbidden blocks brought to the common height max(2, max height): each
/// shorter block is replaced by all its completions. Sorted, deduplicated.
SftPresentation normalize_forbidden(const SftPresentation& p);

inline constexpr std::size_t kDefaultStateCap = 100'000;

struct CompiledSft {
  EdgeTreeAutomaton automaton;
  /// Height of the blocks serving as states (forbidden height minus one).
  std::size_t window = 1;
  /// state_blocks[s] is the height-`window` block of state s.
  std::vector<Block> state_blocks;
  bool empty_shift = false;
};

/// States are the height-k blocks over the alphabet, k = H - 1 for the
/// normalized height H. Every allowed height-H block b gives one transition
/// from its height-k top to its d height-k subtrees. The result is trimmed.
/// State names are the level-order labels, concatenated when every symbol is
/// one character and comma-separated otherwise.
/// Throws Error(CapExceeded) when there would be more than state_cap states
/// or more than 100 * state_cap height-H blocks.
CompiledSft compile(const SftPresentation& p, std::size_t state_cap = kDefaultStateCap);

}  // namespace homshift
