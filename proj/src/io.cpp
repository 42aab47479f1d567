#include "homshift/io.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "homshift/errors.hpp"
#include "json.hpp"

namespace homshift {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& message) {
  throw Error(ErrorCode::Schema, message);
}

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    schema_error(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema_error("expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_of(const Json& j, const char* what) {
  if (!j.is_string()) schema_error(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::uint64_t uint_of(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    schema_error(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

bool bool_of(const Json& j, const char* what) {
  if (!j.is_boolean()) schema_error(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

const Json& array_of(const Json& j, const char* what) {
  if (!j.is_array()) schema_error(std::string(what) + " must be an array");
  return j;
}

std::vector<std::string> strings_of(const Json& j, const char* what) {
  std::vector<std::string> out;
  for (const auto& x : array_of(j, what)) out.push_back(string_of(x, what));
  return out;
}

void expect_kind(const Json& j, const char* kind) {
  auto k = string_of(field(j, "kind"), "kind");
  if (k != kind) schema_error("expected a document of kind '" + std::string(kind) + "', got '" + k + "'");
}

template <typename F>
auto wrap(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Schema) throw;
    schema_error(e.what());
  }
}

Json automaton_json(const EdgeTreeAutomaton& a) {
  Json j;
  j["kind"] = "automaton";
  j["arity"] = a.arity();
  j["states"] = a.names();
  Json transitions = Json::array();
  for (StateId p = 0; p < a.size(); ++p) {
    for (const auto& [t, c] : a.row(p)) {
      Json children = Json::array();
      for (StateId q : t) children.push_back(a.name(q));
      transitions.push_back(Json{{"from", a.name(p)}, {"children", children}, {"count", c}});
    }
  }
  j["transitions"] = std::move(transitions);
  return j;
}

std::size_t arity_of(const Json& j) {
  auto d = uint_of(field(j, "arity"), "arity");
  if (d < 1) schema_error("arity must be at least 1");
  return d;
}

EdgeTreeAutomaton automaton_from(const Json& j) {
  expect_kind(j, "automaton");
  const std::size_t d = arity_of(j);
  auto names = strings_of(field(j, "states"), "states");
  std::map<std::string, StateId> index;
  for (StateId i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], i).second) schema_error("state '" + names[i] + "' declared twice");
  }
  std::vector<Row> rows(names.size());
  auto lookup = [&](const std::string& s) {
    auto it = index.find(s);
    if (it == index.end()) schema_error("undeclared state '" + s + "'");
    return it->second;
  };
  for (const auto& t : array_of(field(j, "transitions"), "transitions")) {
    StateId from = lookup(string_of(field(t, "from"), "from"));
    Tuple children;
    for (const auto& c : strings_of(field(t, "children"), "children")) children.push_back(lookup(c));
    if (children.size() != d) {
      schema_error("transition from '" + names[from] + "' has " + std::to_string(children.size()) +
                   " children, expected " + std::to_string(d));
    }
    Count count = uint_of(field(t, "count"), "count");
    if (count < 1) schema_error("transition counts must be at least 1");
    if (!rows[from].emplace(std::move(children), count).second) {
      schema_error("transition from '" + names[from] + "' listed twice");
    }
  }
  if (names.empty()) return EdgeTreeAutomaton::empty(d);
  return wrap([&] { return EdgeTreeAutomaton(d, std::move(names), std::move(rows)); });
}

// Orders the endpoints so that the lexicographically smaller name comes first.
std::pair<std::string, std::string> oriented(const UndirectedGraph& g, const VertexPair& e) {
  auto a = g.name(e.first), b = g.name(e.second);
  if (b < a) std::swap(a, b);
  return {a, b};
}

Json graph_json(const UndirectedGraph& g) {
  Json j;
  j["kind"] = "undirected-graph";
  j["vertices"] = g.names();
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    auto [a, b] = oriented(g, e);
    edges.push_back(Json::array({a, b}));
  }
  j["edges"] = std::move(edges);
  return j;
}

Json graph_json(const DirectedGraph& g) {
  Json j;
  j["kind"] = "directed-graph";
  j["vertices"] = g.names();
  Json arcs = Json::array();
  for (const auto& [u, v] : g.arcs()) arcs.push_back(Json::array({g.name(u), g.name(v)}));
  j["edges"] = std::move(arcs);
  return j;
}

template <typename Graph>
Graph graph_from(const Json& j, const char* kind) {
  expect_kind(j, kind);
  auto names = strings_of(field(j, "vertices"), "vertices");
  std::map<std::string, VertexId> index;
  for (VertexId i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], i).second) schema_error("vertex '" + names[i] + "' declared twice");
  }
  std::vector<VertexPair> pairs;
  for (const auto& e : array_of(field(j, "edges"), "edges")) {
    auto ends = strings_of(e, "edge");
    if (ends.size() != 2) schema_error("an edge has exactly two endpoints");
    VertexId ids[2];
    for (int i = 0; i < 2; ++i) {
      auto it = index.find(ends[i]);
      if (it == index.end()) schema_error("undeclared vertex '" + ends[i] + "'");
      ids[i] = it->second;
    }
    pairs.emplace_back(ids[0], ids[1]);
  }
  return wrap([&] { return Graph(std::move(names), pairs); });
}

Json sft_json(const SftPresentation& p) {
  Json j;
  j["kind"] = "sft";
  j["arity"] = p.arity;
  j["alphabet"] = p.alphabet;
  Json forbidden = Json::array();
  for (const auto& b : p.forbidden) {
    forbidden.push_back(Json{{"height", b.height}, {"labels", b.labels}});
  }
  j["forbidden"] = std::move(forbidden);
  return j;
}

SftPresentation sft_from(const Json& j) {
  expect_kind(j, "sft");
  SftPresentation p;
  p.arity = arity_of(j);
  p.alphabet = strings_of(field(j, "alphabet"), "alphabet");
  for (const auto& b : array_of(field(j, "forbidden"), "forbidden")) {
    p.forbidden.push_back(Block{p.arity, uint_of(field(b, "height"), "height"),
                                strings_of(field(b, "labels"), "labels")});
  }
  wrap([&] {
    validate(p);
    return 0;
  });
  return p;
}

Json big_json(const BigCount& n) {
  if (n <= std::numeric_limits<std::uint64_t>::max()) return n.convert_to<std::uint64_t>();
  return n.str();
}

Json block_json(const Block& b) {
  return Json{{"height", b.height}, {"labels", b.labels}};
}

std::vector<std::string> names_of(const EdgeTreeAutomaton& a, const std::vector<StateId>& ids) {
  std::vector<std::string> out;
  for (StateId s : ids) out.push_back(a.name(s));
  return out;
}

template <typename Graph>
std::string dot(const Graph& g, const char* keyword, const char* arrow) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::string out = std::string(keyword) + " G {\n";
  for (const auto& v : g.names()) out += "  " + quote(v) + ";\n";
  for (const auto& [u, v] : [&]() -> const std::set<VertexPair>& {
         if constexpr (std::is_same_v<Graph, UndirectedGraph>) return g.edges();
         else return g.arcs();
       }()) {
    out += "  " + quote(g.name(u)) + " " + arrow + " " + quote(g.name(v)) + ";\n";
  }
  return out + "}\n";
}

}  // namespace

std::string document_kind(std::string_view text) {
  return string_of(field(parse_text(text), "kind"), "kind");
}

std::string to_json(const EdgeTreeAutomaton& a) { return dump(automaton_json(a)); }
std::string to_json(const UndirectedGraph& g) { return dump(graph_json(g)); }
std::string to_json(const DirectedGraph& g) { return dump(graph_json(g)); }
std::string to_json(const SftPresentation& p) { return dump(sft_json(p)); }

EdgeTreeAutomaton parse_automaton(std::string_view text) { return automaton_from(parse_text(text)); }
UndirectedGraph parse_undirected_graph(std::string_view text) {
  return graph_from<UndirectedGraph>(parse_text(text), "undirected-graph");
}
DirectedGraph parse_directed_graph(std::string_view text) {
  return graph_from<DirectedGraph>(parse_text(text), "directed-graph");
}
SftPresentation parse_sft(std::string_view text) { return sft_from(parse_text(text)); }

Verdict make_verdict(const HomDecision& d) {
  Verdict v;
  v.question = "hom";
  v.answer = d.conjugate;
  v.degenerate = d.degenerate;
  v.amalgamations.push_back(d.amalgamation);
  const auto& k = d.amalgamation;
  if (d.regularity.certificate) {
    const auto& c = *d.regularity.certificate;
    for (StateId p = 0; p < c.successors.size(); ++p) {
      v.certificate.push_back({k.name(p), names_of(k, c.successors[p]), c.level[p]});
    }
  }
  if (d.witness) {
    v.witness = d.witness->graph;
    for (VertexId x = 0; x < d.witness->graph.size(); ++x) {
      const auto& o = d.witness->origin[x];
      v.copy_map.push_back({d.witness->graph.name(x), k.name(o.state), {}, o.copy, false});
    }
  }
  if (d.regularity.failure) {
    v.failure = FailureEntry{to_string(d.regularity.failure->kind), d.regularity.failure->describe(k)};
  }
  return v;
}

Verdict make_verdict(const DirectedHomDecision& d) {
  Verdict v;
  v.question = "directed-hom";
  v.answer = d.conjugate;
  v.degenerate = d.degenerate;
  v.amalgamations.push_back(d.amalgamation);
  const auto& k = d.amalgamation;
  if (d.witness) {
    v.exact = d.witness->exact;
    v.witness = d.witness->graph;
    for (VertexId x = 0; x < d.witness->graph.size(); ++x) {
      const auto& o = d.witness->origin[x];
      v.copy_map.push_back(
          {d.witness->graph.name(x), k.name(o.state), names_of(k, o.selector), o.copy, o.cube});
    }
  }
  if (d.failure) v.failure = FailureEntry{"not-symmetric", d.failure->describe(k)};
  return v;
}

Verdict make_verdict(const ConjugacyDecision& d) {
  Verdict v;
  v.question = "conjugate";
  v.answer = d.conjugate;
  v.degenerate = d.amalgamation_a.is_empty() || d.amalgamation_b.is_empty();
  v.trimmed = {d.trimmed_a, d.trimmed_b};
  v.amalgamations = {d.amalgamation_a, d.amalgamation_b};
  if (d.isomorphism) {
    for (StateId p = 0; p < d.isomorphism->map.size(); ++p) {
      v.isomorphism.emplace_back(d.amalgamation_a.name(p),
                                 d.amalgamation_b.name(d.isomorphism->map[p]));
    }
  }
  if (!d.conjugate) {
    v.failure = FailureEntry{
        "different-amalgamations",
        "total amalgamations with " + std::to_string(d.amalgamation_a.size()) + " and " +
            std::to_string(d.amalgamation_b.size()) + " states are not isomorphic"};
  }
  return v;
}

std::string to_json(const Verdict& v) {
  Json j;
  j["kind"] = "verdict";
  j["question"] = v.question;
  j["answer"] = v.answer ? "yes" : "no";
  j["degenerate"] = v.degenerate;
  if (v.exact) j["exact"] = *v.exact;
  if (!v.trimmed.empty()) j["trimmed"] = v.trimmed;
  Json amalgamations = Json::array();
  for (const auto& a : v.amalgamations) amalgamations.push_back(automaton_json(a));
  j["amalgamations"] = std::move(amalgamations);
  if (!v.certificate.empty()) {
    Json cert = Json::array();
    for (const auto& c : v.certificate) {
      cert.push_back(Json{{"state", c.state}, {"successors", c.successors}, {"level", c.level}});
    }
    j["certificate"] = std::move(cert);
  }
  if (v.witness) {
    j["witness"] = std::visit([](const auto& g) { return graph_json(g); }, *v.witness);
  }
  if (!v.copy_map.empty()) {
    Json copies = Json::array();
    for (const auto& c : v.copy_map) {
      copies.push_back(Json{{"vertex", c.vertex},
                            {"state", c.state},
                            {"selector", c.selector},
                            {"copy", c.copy},
                            {"cube", c.cube}});
    }
    j["copy_map"] = std::move(copies);
  }
  if (!v.isomorphism.empty()) {
    Json iso = Json::array();
    for (const auto& [a, b] : v.isomorphism) iso.push_back(Json::array({a, b}));
    j["isomorphism"] = std::move(iso);
  }
  if (v.failure) j["failure"] = Json{{"kind", v.failure->kind}, {"message", v.failure->message}};
  return dump(j);
}

Verdict parse_verdict(std::string_view text) {
  const Json j = parse_text(text);
  expect_kind(j, "verdict");
  Verdict v;
  v.question = string_of(field(j, "question"), "question");
  if (v.question != "hom" && v.question != "directed-hom" && v.question != "conjugate") {
    schema_error("unknown question '" + v.question + "'");
  }
  auto answer = string_of(field(j, "answer"), "answer");
  if (answer != "yes" && answer != "no") schema_error("answer must be \"yes\" or \"no\"");
  v.answer = answer == "yes";
  v.degenerate = bool_of(field(j, "degenerate"), "degenerate");
  if (j.contains("exact")) v.exact = bool_of(j["exact"], "exact");
  if (j.contains("trimmed")) {
    for (const auto& t : array_of(j["trimmed"], "trimmed")) v.trimmed.push_back(bool_of(t, "trimmed"));
  }
  for (const auto& a : array_of(field(j, "amalgamations"), "amalgamations")) {
    v.amalgamations.push_back(automaton_from(a));
  }
  if (j.contains("certificate")) {
    for (const auto& c : array_of(j["certificate"], "certificate")) {
      v.certificate.push_back({string_of(field(c, "state"), "state"),
                               strings_of(field(c, "successors"), "successors"),
                               uint_of(field(c, "level"), "level")});
    }
  }
  if (j.contains("witness")) {
    const auto& w = j["witness"];
    auto kind = string_of(field(w, "kind"), "kind");
    if (kind == "undirected-graph") v.witness = graph_from<UndirectedGraph>(w, "undirected-graph");
    else v.witness = graph_from<DirectedGraph>(w, "directed-graph");
  }
  if (j.contains("copy_map")) {
    for (const auto& c : array_of(j["copy_map"], "copy_map")) {
      v.copy_map.push_back({string_of(field(c, "vertex"), "vertex"),
                            string_of(field(c, "state"), "state"),
                            strings_of(field(c, "selector"), "selector"),
                            uint_of(field(c, "copy"), "copy"), bool_of(field(c, "cube"), "cube")});
    }
  }
  if (j.contains("isomorphism")) {
    for (const auto& pair : array_of(j["isomorphism"], "isomorphism")) {
      auto ends = strings_of(pair, "isomorphism");
      if (ends.size() != 2) schema_error("isomorphism entries are pairs");
      v.isomorphism.emplace_back(ends[0], ends[1]);
    }
  }
  if (j.contains("failure")) {
    const auto& f = j["failure"];
    v.failure = FailureEntry{string_of(field(f, "kind"), "kind"),
                             string_of(field(f, "message"), "message")};
  }
  return v;
}

std::string to_json(const BlockCountTable& t, const EdgeTreeAutomaton& a) {
  Json j;
  j["kind"] = "block-count";
  j["height"] = t.height;
  Json per_state = Json::object();
  for (StateId p = 0; p < t.per_state.size(); ++p) per_state[a.name(p)] = big_json(t.per_state[p]);
  j["per_state"] = std::move(per_state);
  j["total"] = big_json(t.total);
  return dump(j);
}

std::string blocks_to_json(const std::vector<Block>& blocks, std::size_t height) {
  Json j;
  j["kind"] = "blocks";
  j["height"] = height;
  j["count"] = blocks.size();
  Json list = Json::array();
  for (const auto& b : blocks) list.push_back(block_json(b));
  j["blocks"] = std::move(list);
  return dump(j);
}

std::string to_json(const RoundtripReport& r) {
  Json j;
  j["kind"] = "roundtrip-report";
  j["passed"] = r.passed;
  j["rounds"] = r.rounds;
  j["seed"] = r.seed;
  j["original_states"] = r.original_states;
  j["split_states"] = r.split_states;
  j["original_amalgamation_states"] = r.original_amalgamation_states;
  j["split_amalgamation_states"] = r.split_amalgamation_states;
  j["message"] = r.message;
  return dump(j);
}

std::string to_dot(const UndirectedGraph& g) { return dot(g, "graph", "--"); }
std::string to_dot(const DirectedGraph& g) { return dot(g, "digraph", "->"); }

}  // namespace homshift
