#pragma once

// Brute-force reference implementations, used by the tests and `verify`.
// They share nothing with the code they check beyond the core types.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homshift/automaton.hpp"
#include "homshift/compiler.hpp"

namespace homshift {

inline constexpr std::size_t kBruteForceLimit = 8;

/// Tries every bijection. Throws Error(TooLarge) beyond kBruteForceLimit
/// states and Error(InvalidArgument) when the arities differ.
std::optional<Isomorphism> brute_isomorphic(const EdgeTreeAutomaton& a,
                                            const EdgeTreeAutomaton& b);

/// Height-h blocks over the alphabet that contain no forbidden block and
/// extend to a block of height h + slack containing none either. With slack
/// at least the number of height-(H - 1) blocks, H the largest forbidden
/// height (at least 2), this is exactly the set of height-h blocks of the
/// shift. Sorted. Throws Error(CapExceeded) past `cap` candidate blocks.
std::vector<Block> brute_blocks(const SftPresentation& p, std::size_t height,
                                std::size_t slack = 3,
                                std::size_t cap = kDefaultBlockCap);

struct RoundtripReport {
  bool passed = false;
  std::size_t rounds = 0;
  std::uint64_t seed = 0;
  std::size_t original_states = 0;
  std::size_t split_states = 0;
  std::size_t original_amalgamation_states = 0;
  std::size_t split_amalgamation_states = 0;
  std::string message;
};

inline constexpr std::size_t kRoundtripStateLimit = 6;
inline constexpr std::size_t kRoundtripRoundLimit = 4;

/// Checks that the total amalgamation of random_split_walk(trim(A)) is
/// isomorphic to the total amalgamation of trim(A), comparing by
/// brute_isomorphic. A failed check is reported, not thrown. Throws
/// Error(TooLarge) beyond 6 states or 4 rounds and Error(InvalidArgument)
/// for the empty automaton.
RoundtripReport verify_split_roundtrip(const EdgeTreeAutomaton& a, std::size_t rounds,
                                       std::uint64_t seed);

}  // namespace homshift
