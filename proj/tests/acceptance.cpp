// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "homshift/amalgamation.hpp"
#include "homshift/compiler.hpp"
#include "homshift/conjugacy.hpp"
#include "homshift/errors.hpp"
#include "homshift/homdecide.hpp"
#include "homshift/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace homshift;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %2d %s  %s  [%s] (%.2fs)\n", id, o.pass ? "PASS" : "FAIL", title,
              o.detail.c_str(), secs);
  std::fflush(stdout);
  failures += !o.pass;
}

std::string ratio(int ok, int total) { return std::to_string(ok) + "/" + std::to_string(total); }

// Moves one multiplicity of a fixpoint by one unit, or adds a new entry.
EdgeTreeAutomaton perturb(SeededRng& rng, const EdgeTreeAutomaton& a) {
  std::vector<Row> rows;
  for (StateId p = 0; p < a.size(); ++p) rows.push_back(a.row(p));
  auto& row = rows[rng.below(rows.size())];
  auto it = std::next(row.begin(), static_cast<std::ptrdiff_t>(rng.below(row.size())));
  switch (rng.below(3)) {
    case 0: it->second += 1; break;
    case 1:
      if (it->second > 1) {
        it->second -= 1;
        break;
      }
      [[fallthrough]];
    default: row[gen::random_tuple(rng, a.arity(), a.size())] += 1;
  }
  return EdgeTreeAutomaton(a.arity(), a.names(), std::move(rows));
}

using Levels = std::vector<std::vector<std::string>>;

std::set<Levels> label_trees(const CompiledSft& c, StateId s, std::size_t height) {
  const std::string root = c.state_blocks[s].labels.front();
  if (height == 1) return {Levels{{root}}};
  std::set<Levels> out;
  for (const auto& [t, count] : c.automaton.row(s)) {
    Levels start(height);
    start[0] = {root};
    std::set<Levels> partial{start};
    for (StateId q : t) {
      std::set<Levels> next;
      for (const auto& acc : partial) {
        for (const auto& sub : label_trees(c, q, height - 1)) {
          Levels grown = acc;
          for (std::size_t l = 0; l < sub.size(); ++l) {
            grown[l + 1].insert(grown[l + 1].end(), sub[l].begin(), sub[l].end());
          }
          next.insert(std::move(grown));
        }
      }
      partial = std::move(next);
    }
    out.insert(partial.begin(), partial.end());
  }
  return out;
}

// Root-symbol projection of the height-h computation blocks.
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

int main() {
  criterion(1, "sequence example", [] {
    auto k = total_amalgamation(fixtures::sequence_example());
    if (!(k == fixtures::sequence_amalgamation())) return Outcome{false, "amalgamation differs"};
    auto check = check_regular(k);
    if (!check.regular() || check.certificate->level != std::vector<Count>{3, 1}) {
      return Outcome{false, "not regular with levels (3,1)"};
    }
    auto w = synthesize_hom(k, *check.certificate);
    std::size_t loops = 0;
    for (const auto& [u, v] : w.graph.edges()) loops += u == v;
    const bool iso = graph_isomorphic(w.graph, fixtures::sequence_hom_graph()).has_value();
    Outcome o{w.graph.size() == 4 && w.graph.edges().size() == 9 && loops == 3 && iso, ""};
    o.detail = std::to_string(w.graph.size()) + " vertices, " + std::to_string(w.graph.edges().size()) +
               " edges, " + std::to_string(loops) + " loops";
    return o;
  });

  criterion(2, "tree example one", [] {
    auto k = total_amalgamation(fixtures::tree_example_one());
    return Outcome{k == fixtures::tree_example_one_amalgamation(), std::to_string(k.size()) + " states"};
  });

  criterion(3, "tree example two", [] {
    auto k = total_amalgamation(fixtures::tree_example_two());
    const bool ok = k.size() == 1 && k.entry_count() == 1 && k.multiplicity(0, {0, 0}) == 2;
    return Outcome{ok, "multiplicity " + std::to_string(k.size() == 1 ? k.multiplicity(0, {0, 0}) : 0)};
  });

  criterion(4, "directed example", [] {
    auto k = total_amalgamation(fixtures::directed_example());
    if (!(k == fixtures::directed_example_amalgamation())) return Outcome{false, "amalgamation differs"};
    if (check_symmetric(k)) return Outcome{false, "not symmetric"};
    auto w = synthesize_directed_hom(k);
    const bool iso = graph_isomorphic(w.graph, fixtures::directed_example_graph()).has_value();
    return Outcome{w.graph.size() == 6 && w.graph.arcs().size() == 13 && iso,
                   std::to_string(w.graph.size()) + " vertices, " +
                       std::to_string(w.graph.arcs().size()) + " arcs"};
  });

  criterion(5, "compile and decide", [] {
    auto c = compile(fixtures::tree_ex_sft());
    auto d = decide_hom(c.automaton);
    const bool ok = c.automaton.size() == 2 && c.automaton.is_trim() && d.conjugate &&
                    graph_isomorphic(d.witness->graph, fixtures::golden_mean_graph()).has_value();
    return Outcome{ok, std::to_string(c.automaton.size()) + " states, answer " +
                           (d.conjugate ? "yes" : "no")};
  });

  criterion(6, "split round trips", [] {
    SeededRng rng(6001);
    int ok = 0;
    for (int i = 0; i < 200; ++i) {
      auto a = gen::random_trim_automaton(rng, 1 + rng.below(3), 1 + rng.below(5));
      ok += verify_split_roundtrip(a, rng.below(4), rng.below(1000000)).passed;
    }
    return Outcome{ok == 200, ratio(ok, 200)};
  });

  criterion(7, "regularity and symmetry preserved", [] {
    SeededRng rng(7001);
    int regular_ok = 0, symmetric_ok = 0, rounds = 0;
    for (int i = 0; i < 200; ++i) {
      auto a = gen::random_regular_automaton(rng, 1 + rng.below(3), 1 + rng.below(3));
      bool ok = check_regular(a).regular();
      for (auto p = coarsest_merge_partition(a); !p.trivial(); p = coarsest_merge_partition(a)) {
        a = general_amalgamation(a, gen::random_refinement(rng, p));
        ok = ok && check_regular(a).regular();
        ++rounds;
      }
      regular_ok += ok;
    }
    for (int i = 0; i < 200; ++i) {
      auto a = gen::random_symmetric_automaton(rng, 1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(3));
      bool ok = !check_symmetric(a);
      for (auto p = coarsest_merge_partition(a); !p.trivial(); p = coarsest_merge_partition(a)) {
        a = general_amalgamation(a, gen::random_refinement(rng, p));
        ok = ok && !check_symmetric(a);
        ++rounds;
      }
      symmetric_ok += ok;
    }
    return Outcome{regular_ok == 200 && symmetric_ok == 200,
                   "regular " + ratio(regular_ok, 200) + ", symmetric " + ratio(symmetric_ok, 200) +
                       ", " + std::to_string(rounds) + " rounds"};
  });

  criterion(8, "graphs are recovered from their hom automata", [] {
    SeededRng rng(8001);
    int undirected_ok = 0, directed_ok = 0;
    for (int i = 0; i < 100; ++i) {
      auto g = gen::random_undirected_graph(rng, 1 + rng.below(6));
      auto d = decide_hom(hom_automaton(g, 1 + rng.below(3)));
      undirected_ok += d.conjugate && graph_isomorphic(d.witness->graph, g).has_value();
    }
    for (int i = 0; i < 100; ++i) {
      auto g = gen::random_directed_graph(rng, 1 + rng.below(6));
      auto d = decide_directed_hom(hom_automaton(g, 2 + rng.below(2)));
      directed_ok += d.conjugate && graph_isomorphic(d.witness->graph, g).has_value();
    }
    return Outcome{undirected_ok == 100 && directed_ok == 100,
                   "undirected " + ratio(undirected_ok, 100) + ", directed " + ratio(directed_ok, 100)};
  });

  criterion(9, "conjugacy under splitting", [] {
    SeededRng rng(9001);
    int yes = 0, no = 0, attempts = 0;
    for (int i = 0; i < 100; ++i) {
      auto a = gen::random_trim_automaton(rng, 1 + rng.below(3), 1 + rng.below(5));
      yes += decide_conjugacy(a, random_split_walk(a, rng.below(4), rng.below(1000000))).conjugate;
    }
    for (int built = 0; built < 50;) {
      ++attempts;
      auto a = gen::random_trim_automaton(rng, 1 + rng.below(3), 1 + rng.below(5));
      auto k = total_amalgamation(a);
      auto changed = total_amalgamation(perturb(rng, k));
      if (changed.size() == k.size() && brute_isomorphic(changed, k)) continue;
      ++built;
      auto b = random_split_walk(changed, rng.below(4), rng.below(1000000));
      no += !decide_conjugacy(a, b).conjugate;
    }
    return Outcome{yes == 100 && no == 50, "yes " + ratio(yes, 100) + ", no " + ratio(no, 50) +
                                               " from " + std::to_string(attempts) + " perturbations"};
  });

  criterion(10, "oracle agreement", [] {
    SeededRng rng(10001);
    int iso_ok = 0, positives = 0;
    for (int i = 0; i < 500; ++i) {
      const std::size_t d = 1 + rng.below(3);
      auto a = gen::random_trim_automaton(rng, d, 1 + rng.below(6));
      EdgeTreeAutomaton b = a;
      switch (rng.below(3)) {
        case 0: b = permute_states(a, gen::random_permutation(rng, a.size())); break;
        case 1: b = permute_states(perturb(rng, a), gen::random_permutation(rng, a.size())); break;
        default: b = gen::random_trim_automaton(rng, d, a.size());
      }
      const bool slow = brute_isomorphic(a, b).has_value();
      iso_ok += automaton_isomorphic(a, b).has_value() == slow;
      positives += slow;
    }
    int count_ok = 0;
    for (int i = 0; i < 100; ++i) {
      auto a = gen::random_trim_automaton(rng, 1 + rng.below(3), 1 + rng.below(3), 2, 1);
      bool ok = true;
      for (std::size_t k = 1; k <= 3; ++k) {
        ok = ok && BigCount(enumerate_blocks(a, k).size()) == count_blocks(a, k).total;
      }
      count_ok += ok;
    }
    int sft_ok = 0;
    for (int i = 0; i < 50; ++i) {
      const std::size_t d = 1 + rng.below(2);
      auto p = gen::random_sft(rng, d, 2, d == 1 ? 3 : 2, rng.below(5));
      auto c = compile(p);
      bool ok = true;
      for (std::size_t h = 1; h <= 3; ++h) {
        auto expected = brute_blocks(p, h, context_count(p));
        ok = ok && (c.empty_shift ? expected.empty() : projected_blocks(c, d, h) == expected);
      }
      sft_ok += ok;
    }
    return Outcome{iso_ok == 500 && count_ok == 100 && sft_ok == 50,
                   "isomorphism " + ratio(iso_ok, 500) + " (" + std::to_string(positives) +
                       " isomorphic), counts " + ratio(count_ok, 100) + ", compiler " + ratio(sft_ok, 50)};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
