#include "doctest.h"
#include "homshift/errors.hpp"
#include "homshift/io.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace homshift;

namespace {

ErrorCode parse_code(std::string_view text) {
  try {
    parse_automaton(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Overflow;
}

}  // namespace

TEST_CASE("automaton documents") {
  auto g = fixtures::golden_mean_word();
  const std::string text = to_json(g);
  CHECK(text ==
        "{\n"
        "  \"kind\": \"automaton\",\n"
        "  \"arity\": 1,\n"
        "  \"states\": [\n    \"a\",\n    \"b\"\n  ],\n"
        "  \"transitions\": [\n"
        "    {\n      \"from\": \"a\",\n      \"children\": [\n        \"a\"\n      ],\n      \"count\": 1\n    },\n"
        "    {\n      \"from\": \"a\",\n      \"children\": [\n        \"b\"\n      ],\n      \"count\": 1\n    },\n"
        "    {\n      \"from\": \"b\",\n      \"children\": [\n        \"a\"\n      ],\n      \"count\": 1\n    }\n"
        "  ]\n"
        "}\n");
  CHECK(document_kind(text) == "automaton");
  CHECK(parse_automaton(text) == g);

  SeededRng rng(109);
  for (int i = 0; i < 100; ++i) {
    auto a = gen::random_automaton(rng, 1 + rng.below(3), 1 + rng.below(5));
    auto once = to_json(a);
    CHECK(parse_automaton(once) == a);
    CHECK(to_json(parse_automaton(once)) == once);
  }
  CHECK(parse_automaton(to_json(EdgeTreeAutomaton::empty(2))).is_empty());
}

TEST_CASE("malformed automaton documents") {
  CHECK(parse_code("not json") == ErrorCode::Schema);
  CHECK(parse_code(R"({"kind":"sft","arity":1,"states":[],"transitions":[]})") == ErrorCode::Schema);
  CHECK(parse_code(R"({"kind":"automaton","states":["a"],"transitions":[]})") == ErrorCode::Schema);
  CHECK(parse_code(R"({"kind":"automaton","arity":0,"states":["a"],"transitions":[]})") ==
        ErrorCode::Schema);
  CHECK(parse_code(R"({"kind":"automaton","arity":1,"states":["a","a"],"transitions":[]})") ==
        ErrorCode::Schema);
  CHECK(parse_code(R"({"kind":"automaton","arity":1,"states":["a"],
                       "transitions":[{"from":"b","children":["a"],"count":1}]})") ==
        ErrorCode::Schema);
  CHECK(parse_code(R"({"kind":"automaton","arity":1,"states":["a"],
                       "transitions":[{"from":"a","children":["a","a"],"count":1}]})") ==
        ErrorCode::Schema);
  CHECK(parse_code(R"({"kind":"automaton","arity":1,"states":["a"],
                       "transitions":[{"from":"a","children":["a"],"count":0}]})") ==
        ErrorCode::Schema);
  CHECK(parse_code(R"({"kind":"automaton","arity":1,"states":["a"],
                       "transitions":[{"from":"a","children":["a"],"count":-1}]})") ==
        ErrorCode::Schema);
  CHECK(parse_code(R"({"kind":"automaton","arity":1,"states":["a"],
                       "transitions":[{"from":"a","children":["a"],"count":1},
                                      {"from":"a","children":["a"],"count":2}]})") ==
        ErrorCode::Schema);
  CHECK_THROWS_AS(document_kind("[]"), Error);
}

TEST_CASE("graph and SFT documents") {
  auto u = fixtures::sequence_hom_graph();
  CHECK(parse_undirected_graph(to_json(u)) == u);
  CHECK(document_kind(to_json(u)) == "undirected-graph");
  auto d = fixtures::directed_example_graph();
  CHECK(parse_directed_graph(to_json(d)) == d);
  auto sft = fixtures::tree_ex_sft();
  auto back = parse_sft(to_json(sft));
  CHECK(back.arity == 2);
  CHECK(back.alphabet == sft.alphabet);
  CHECK(back.forbidden == sft.forbidden);
  CHECK(to_json(back) == to_json(sft));

  // Endpoints in either order name the same edge.
  auto flipped = parse_undirected_graph(
      R"({"kind":"undirected-graph","vertices":["a","b"],"edges":[["b","a"],["a","a"]]})");
  CHECK(flipped == fixtures::golden_mean_graph());
  CHECK_THROWS_AS(parse_undirected_graph(
                      R"({"kind":"undirected-graph","vertices":["a","b"],"edges":[["b","a"],["a","b"]]})"),
                  Error);
  CHECK_THROWS_AS(parse_directed_graph(R"({"kind":"directed-graph","vertices":["a"],"edges":[["a","c"]]})"),
                  Error);
  CHECK_THROWS_AS(parse_sft(R"({"kind":"sft","arity":2,"alphabet":["a"],
                               "forbidden":[{"height":2,"labels":["a"]}]})"),
                  Error);
}

TEST_CASE("verdict documents") {
  auto hom = make_verdict(decide_hom(fixtures::sequence_example()));
  CHECK(hom.question == "hom");
  CHECK(hom.answer);
  REQUIRE(hom.certificate.size() == 2);
  CHECK(hom.certificate[0] == CertificateEntry{"(1+2)", {"(1+2)", "3"}, 3});
  CHECK(hom.copy_map.size() == 4);

  auto no = make_verdict(decide_hom(fixtures::splitting_right()));
  CHECK_FALSE(no.answer);
  REQUIRE(no.failure);
  CHECK(no.failure->kind == "non-constant-level");
  CHECK_FALSE(no.witness);

  auto dir = make_verdict(decide_directed_hom(fixtures::directed_example()));
  CHECK(dir.exact == false);
  CHECK(dir.copy_map.size() == 6);

  auto conj = make_verdict(decide_conjugacy(fixtures::sequence_example(),
                                            fixtures::sequence_amalgamation()));
  CHECK(conj.amalgamations.size() == 2);
  CHECK(conj.isomorphism.size() == 2);
  CHECK(conj.trimmed == std::vector<bool>{false, false});

  auto differ = make_verdict(decide_conjugacy(fixtures::golden_mean_word(), fixtures::splitting_left()));
  REQUIRE(differ.failure);
  CHECK(differ.failure->kind == "different-amalgamations");

  for (const auto& v : {hom, no, dir, conj, differ}) {
    auto text = to_json(v);
    CHECK(document_kind(text) == "verdict");
    auto back = parse_verdict(text);
    CHECK(back == v);
    CHECK(to_json(back) == text);
  }
  CHECK(to_json(hom).find("\"answer\": \"yes\"") != std::string::npos);
}

TEST_CASE("report documents") {
  auto counts = to_json(count_blocks(fixtures::golden_mean_tree(), 2), fixtures::golden_mean_tree());
  CHECK(document_kind(counts) == "block-count");
  CHECK(counts.find("\"total\": 41") != std::string::npos);

  AutomatonBuilder b(3);
  b.add("p", {"p", "p", "p"}, 1000);
  auto huge = to_json(count_blocks(b.build(), 3), b.build());
  CHECK(huge.find("\"1000000000000000000000000000000000000000\"") != std::string::npos);

  auto blocks = blocks_to_json(brute_blocks(fixtures::tree_ex_sft(), 2), 2);
  CHECK(document_kind(blocks) == "blocks");

  auto report = to_json(verify_split_roundtrip(fixtures::golden_mean_word(), 1, 4));
  CHECK(document_kind(report) == "roundtrip-report");
  CHECK(report.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("graphviz output") {
  auto u = to_dot(fixtures::golden_mean_graph());
  CHECK(u.rfind("graph", 0) == 0);
  CHECK(u.find("\"a\" -- \"b\"") != std::string::npos);
  auto d = to_dot(DirectedGraph({"x", "y"}, {{0, 1}}));
  CHECK(d.rfind("digraph", 0) == 0);
  CHECK(d.find("\"x\" -> \"y\"") != std::string::npos);
}
