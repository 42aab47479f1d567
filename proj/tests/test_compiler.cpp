#include <functional>
#include <set>

#include "doctest.h"
#include "homshift/compiler.hpp"
#include "homshift/conjugacy.hpp"
#include "homshift/errors.hpp"
#include "homshift/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace homshift;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Overflow;
}

using Levels = std::vector<std::vector<std::string>>;

// Label trees of the given height read off computations from state s, each
// node showing the root symbol of its state block.
std::set<Levels> label_trees(const CompiledSft& c, StateId s, std::size_t height) {
  const std::string root = c.state_blocks[s].labels.front();
  if (height == 1) return {Levels{{root}}};
  std::set<Levels> out;
  for (const auto& [t, count] : c.automaton.row(s)) {
    std::vector<std::set<Levels>> options;
    for (StateId q : t) options.push_back(label_trees(c, q, height - 1));
    std::function<void(std::size_t, Levels)> pick = [&](std::size_t i, Levels acc) {
      if (i == options.size()) {
        out.insert(acc);
        return;
      }
      for (const auto& sub : options[i]) {
        Levels next = acc;
        for (std::size_t l = 0; l < sub.size(); ++l) {
          next[l + 1].insert(next[l + 1].end(), sub[l].begin(), sub[l].end());
        }
        pick(i + 1, next);
      }
    };
    Levels start(height);
    start[0] = {root};
    pick(0, start);
  }
  return out;
}

std::vector<Block> projected_blocks(const CompiledSft& c, std::size_t arity, std::size_t height) {
  std::set<Block> out;
  for (StateId s = 0; s < c.automaton.size(); ++s) {
    for (const auto& levels : label_trees(c, s, height)) {
      Block b{arity, height, {}};
      for (const auto& level : levels) b.labels.insert(b.labels.end(), level.begin(), level.end());
      out.insert(b);
    }
  }
  return {out.begin(), out.end()};
}

std::size_t context_count(const SftPresentation& p) {
  std::size_t h = 2;
  for (const auto& b : p.forbidden) h = std::max(h, b.height);
  std::size_t n = 1;
  for (std::size_t i = 0; i < block_node_count(p.arity, h - 1); ++i) n *= p.alphabet.size();
  return n;
}

}  // namespace

TEST_CASE("forbidden blocks are brought to a common height") {
  auto tree = normalize_forbidden(fixtures::tree_ex_sft());
  REQUIRE(tree.forbidden.size() == 3);
  CHECK(tree.forbidden[0].labels == std::vector<std::string>{"b", "a", "b"});
  CHECK(std::is_sorted(tree.forbidden.begin(), tree.forbidden.end()));

  SftPresentation single{2, {"a", "b"}, {Block{2, 1, {"b"}}, Block{2, 2, {"b", "a", "a"}}}};
  auto n = normalize_forbidden(single);
  CHECK(n.forbidden.size() == 4);
  for (const auto& b : n.forbidden) {
    CHECK(b.height == 2);
    CHECK(b.labels[0] == "b");
  }

  SftPresentation none{1, {"a"}, {Block{1, 1, {"a"}}}};
  CHECK(normalize_forbidden(none).forbidden == std::vector<Block>{Block{1, 2, {"a", "a"}}});
}

TEST_CASE("compiling the worked examples") {
  auto tree = compile(fixtures::tree_ex_sft());
  CHECK(tree.automaton == fixtures::golden_mean_tree());
  CHECK(tree.window == 1);
  CHECK_FALSE(tree.empty_shift);
  CHECK(tree.state_blocks == std::vector<Block>{Block{2, 1, {"a"}}, Block{2, 1, {"b"}}});

  SftPresentation word{1, {"a", "b"}, {Block{1, 2, {"b", "b"}}}};
  CHECK(compile(word).automaton == fixtures::golden_mean_word());

  SftPresentation all{2, {"a", "b"}, {Block{2, 1, {"a"}}, Block{2, 1, {"b"}}}};
  auto empty = compile(all);
  CHECK(empty.empty_shift);
  CHECK(empty.automaton.is_empty());

  SftPresentation free{2, {"x"}, {}};
  auto full = compile(free);
  CHECK(full.automaton.names() == std::vector<std::string>{"x"});
  CHECK(full.automaton.multiplicity(0, {0, 0}) == 1);

  // Height 3 makes the states height-2 blocks.
  SftPresentation deep{1, {"a", "b"}, {Block{1, 3, {"a", "b", "a"}}}};
  auto d = compile(deep);
  CHECK(d.window == 2);
  CHECK(d.automaton.names() == std::vector<std::string>{"aa", "ab", "ba", "bb"});
  CHECK(d.automaton.entry_count() == 7);

  SftPresentation wide{1, {"x1", "x2"}, {Block{1, 2, {"x1", "x1"}}}};
  CHECK(compile(wide).automaton.names() == std::vector<std::string>{"x1", "x2"});
  SftPresentation wide3{1, {"x1", "x2"}, {Block{1, 3, {"x1", "x1", "x1"}}}};
  CHECK(compile(wide3).automaton.name(0) == "x1,x1");
}

TEST_CASE("malformed presentations are rejected") {
  auto bad = [](SftPresentation p) { return code_of([&] { validate(p); }); };
  CHECK(bad({0, {"a"}, {}}) == ErrorCode::InvalidArgument);
  CHECK(bad({1, {}, {}}) == ErrorCode::InvalidArgument);
  CHECK(bad({1, {"a", "a"}, {}}) == ErrorCode::InvalidArgument);
  CHECK(bad({2, {"a"}, {Block{1, 1, {"a"}}}}) == ErrorCode::InvalidArgument);
  CHECK(bad({2, {"a"}, {Block{2, 0, {}}}}) == ErrorCode::InvalidArgument);
  CHECK(bad({2, {"a"}, {Block{2, 2, {"a", "a"}}}}) == ErrorCode::InvalidArgument);
  CHECK(bad({2, {"a"}, {Block{2, 1, {"c"}}}}) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { compile({1, {}, {}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("the state cap") {
  CHECK(code_of([] { compile(fixtures::tree_ex_sft(), 1); }) == ErrorCode::CapExceeded);
  CHECK(compile(fixtures::tree_ex_sft(), 2).automaton.size() == 2);
  SftPresentation big{3, {"a", "b", "c"}, {Block{3, 3, std::vector<std::string>(13, "a")}}};
  CHECK(code_of([&] { compile(big, 1000); }) == ErrorCode::CapExceeded);
}

TEST_CASE("compiled automata are trim or empty") {
  SeededRng rng(89);
  for (int i = 0; i < 200; ++i) {
    auto p = gen::random_sft(rng, 1 + rng.below(3), 1 + rng.below(3), 2, rng.below(6));
    auto c = compile(p);
    if (c.empty_shift) {
      CHECK(c.automaton.is_empty());
    } else {
      CHECK(c.automaton.is_trim());
      CHECK(c.state_blocks.size() == c.automaton.size());
    }
  }
}

TEST_CASE("compiled blocks are exactly the blocks of the shift") {
  SeededRng rng(97);
  for (int i = 0; i < 60; ++i) {
    const std::size_t d = 1 + rng.below(2);
    auto p = gen::random_sft(rng, d, 2, d == 1 ? 3 : 2, rng.below(5));
    auto c = compile(p);
    const auto slack = context_count(p);
    for (std::size_t h = 1; h <= 3; ++h) {
      auto expected = brute_blocks(p, h, slack);
      if (c.empty_shift) {
        CHECK(expected.empty());
      } else {
        CHECK(projected_blocks(c, d, h) == expected);
      }
    }
  }
}

TEST_CASE("the hom constraint compiles to the hom automaton") {
  SeededRng rng(101);
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 1 + rng.below(3);
    auto g = gen::random_undirected_graph(rng, 1 + rng.below(4));
    SftPresentation p{d, g.names(), {}};
    const auto n = static_cast<StateId>(g.size());
    std::vector<StateId> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (StateId v = 0; v < n; ++v) {
      gen::for_each_tuple(all, d, [&](const Tuple& t) {
        bool ok = true;
        for (StateId w : t) ok = ok && g.edges().count({std::min(v, w), std::max(v, w)}) > 0;
        if (ok) return;
        Block b{d, 2, {g.name(v)}};
        for (StateId w : t) b.labels.push_back(g.name(w));
        p.forbidden.push_back(b);
      });
    }
    CHECK(compile(p).automaton == hom_automaton(g, d));
  }
}
