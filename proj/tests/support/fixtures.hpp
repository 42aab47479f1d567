#pragma once

// Worked examples used across the test suites.

#include "homshift/automaton.hpp"
#include "homshift/compiler.hpp"
#include "homshift/graph.hpp"

namespace fixtures {

using homshift::AutomatonBuilder;
using homshift::DirectedGraph;
using homshift::EdgeTreeAutomaton;
using homshift::SftPresentation;
using homshift::UndirectedGraph;

// Arity 1, M = [[2,2,1],[1,1,2],[1,1,0]] on states 1, 2, 3.
inline EdgeTreeAutomaton sequence_example() {
  AutomatonBuilder b(1);
  b.add("1", {"1"}, 2).add("1", {"2"}, 2).add("1", {"3"}, 1);
  b.add("2", {"1"}, 1).add("2", {"2"}, 1).add("2", {"3"}, 2);
  b.add("3", {"1"}, 1).add("3", {"2"}, 1);
  return b.build();
}

// [[3,3],[1,0]] on the merged state (1+2) and 3.
inline EdgeTreeAutomaton sequence_amalgamation() {
  AutomatonBuilder b(1);
  b.add("(1+2)", {"(1+2)"}, 3).add("(1+2)", {"3"}, 3);
  b.add("3", {"(1+2)"}, 1);
  return b.build();
}

// Loops at 1, 2, 3, a triangle on them and spokes to 4.
inline UndirectedGraph sequence_hom_graph() {
  return UndirectedGraph({"1", "2", "3", "4"},
                         {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}});
}

inline EdgeTreeAutomaton tree_example_one() {
  AutomatonBuilder b(2);
  b.state("q1");
  b.state("q2");
  b.state("q3");
  for (auto from : {"q1", "q3"}) {
    b.add(from, {"q1", "q1"}).add(from, {"q1", "q2"}).add(from, {"q2", "q1"}).add(from, {"q2", "q2"});
  }
  b.add("q2", {"q3", "q3"});
  return b.build();
}

inline EdgeTreeAutomaton tree_example_one_amalgamation() {
  AutomatonBuilder b(2);
  b.add("(q1+q2)", {"(q1+q2)", "(q1+q2)"}).add("(q1+q2)", {"q3", "q3"});
  b.add("q3", {"(q1+q2)", "(q1+q2)"});
  return b.build();
}

inline EdgeTreeAutomaton tree_example_two() {
  AutomatonBuilder b(2);
  for (auto from : {"q1", "q2"}) {
    b.add(from, {"q1", "q1"}).add(from, {"q1", "q2"}).add(from, {"q2", "q1"}).add(from, {"q2", "q2"});
  }
  return b.build();
}

// Arity 1: loop at 1, two edges 1 -> 2, one edge 2 -> 1.
inline EdgeTreeAutomaton splitting_left() {
  AutomatonBuilder b(1);
  b.add("1", {"1"}).add("1", {"2"}, 2).add("2", {"1"});
  return b.build();
}

inline EdgeTreeAutomaton splitting_right() {
  AutomatonBuilder b(1);
  b.add("1_1", {"1_1"}).add("1_1", {"1_2"});
  b.add("1_2", {"2"}, 2);
  b.add("2", {"1_1"}).add("2", {"1_2"});
  return b.build();
}

inline EdgeTreeAutomaton golden_mean_tree() {
  AutomatonBuilder b(2);
  b.add("a", {"a", "a"}).add("a", {"a", "b"}).add("a", {"b", "a"}).add("a", {"b", "b"});
  b.add("b", {"a", "a"});
  return b.build();
}

inline EdgeTreeAutomaton golden_mean_word() {
  AutomatonBuilder b(1);
  b.add("a", {"a"}).add("a", {"b"}).add("b", {"a"});
  return b.build();
}

inline UndirectedGraph golden_mean_graph() { return UndirectedGraph({"a", "b"}, {{0, 0}, {0, 1}}); }

// The 5-state automaton on p, q, r, s, u.
inline EdgeTreeAutomaton directed_example() {
  AutomatonBuilder b(2);
  for (auto s : {"p", "q", "r", "s", "u"}) b.state(s);
  b.add("p", {"q", "r"}).add("p", {"r", "u"}).add("p", {"u", "r"});
  b.add("q", {"p", "p"}).add("q", {"p", "s"}).add("q", {"s", "p"}).add("q", {"s", "s"});
  b.add("r", {"r", "u"}).add("r", {"u", "r"});
  b.add("s", {"r", "q"}).add("s", {"r", "u"}).add("s", {"u", "r"});
  b.add("u", {"q", "r"}).add("u", {"r", "q"});
  return b.build();
}

inline EdgeTreeAutomaton directed_example_amalgamation() {
  AutomatonBuilder b(2);
  b.add("(p+s)", {"q", "r"}).add("(p+s)", {"r", "q"});
  b.add("(p+s)", {"r", "u"}, 2).add("(p+s)", {"u", "r"}, 2);
  b.add("q", {"(p+s)", "(p+s)"});
  b.add("r", {"r", "u"}).add("r", {"u", "r"});
  b.add("u", {"q", "r"}).add("u", {"r", "q"});
  return b.build();
}

// Six vertices, thirteen arcs.
inline DirectedGraph directed_example_graph() {
  enum { PS_QR, PS_RU1, PS_RU2, Q, R, U };
  return DirectedGraph({"ps_qr_1", "ps_ru_1", "ps_ru_2", "q_ps_1", "r_ru_1", "u_qr_1"},
                       {{PS_QR, Q}, {PS_QR, R},
                        {Q, PS_QR}, {Q, PS_RU1}, {Q, PS_RU2},
                        {R, R}, {R, U},
                        {U, Q}, {U, R},
                        {PS_RU1, R}, {PS_RU2, R}, {PS_RU1, U}, {PS_RU2, U}});
}

// Binary trees over {a, b} without two consecutive b's on a path.
inline SftPresentation tree_ex_sft() {
  using homshift::Block;
  return SftPresentation{2, {"a", "b"},
                         {Block{2, 2, {"b", "b", "b"}}, Block{2, 2, {"b", "b", "a"}},
                          Block{2, 2, {"b", "a", "b"}}}};
}

}  // namespace fixtures
