#include "homshift/homshift.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "homshift/amalgamation.hpp"
#include "homshift/compiler.hpp"
#include "homshift/conjugacy.hpp"
#include "homshift/errors.hpp"
#include "homshift/homdecide.hpp"
#include "homshift/io.hpp"
#include "homshift/oracle.hpp"

struct hs_automaton {
  homshift::EdgeTreeAutomaton value;
};

namespace {

using namespace homshift;

thread_local std::string last_error;

hs_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return HS_ERR_INVALID_ARGUMENT;
    case ErrorCode::Schema: return HS_ERR_SCHEMA;
    case ErrorCode::CapExceeded: return HS_ERR_CAP_EXCEEDED;
    case ErrorCode::BudgetExceeded: return HS_ERR_BUDGET_EXCEEDED;
    case ErrorCode::InvalidSplit: return HS_ERR_INVALID_SPLIT;
    case ErrorCode::InvalidPartition: return HS_ERR_INVALID_PARTITION;
    case ErrorCode::InvalidCertificate: return HS_ERR_INVALID_CERTIFICATE;
    case ErrorCode::NotTrim: return HS_ERR_NOT_TRIM;
    case ErrorCode::NotSymmetric: return HS_ERR_NOT_SYMMETRIC;
    case ErrorCode::TooLarge: return HS_ERR_TOO_LARGE;
    case ErrorCode::Overflow: return HS_ERR_OVERFLOW;
  }
  return HS_ERR_INTERNAL;
}

hs_status fail(hs_status s, const char* message) {
  last_error = message;
  return s;
}

template <typename F>
hs_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return HS_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HS_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, std::string("null argument: ") + what);
}

hs_automaton* wrap(EdgeTreeAutomaton a) { return new hs_automaton{std::move(a)}; }

}  // namespace

extern "C" {

const char* hs_version(void) { return "0.1.0"; }

const char* hs_status_name(hs_status status) {
  switch (status) {
    case HS_OK: return "ok";
    case HS_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case HS_ERR_SCHEMA: return "schema";
    case HS_ERR_CAP_EXCEEDED: return "cap-exceeded";
    case HS_ERR_BUDGET_EXCEEDED: return "budget-exceeded";
    case HS_ERR_INVALID_SPLIT: return "invalid-split";
    case HS_ERR_INVALID_PARTITION: return "invalid-partition";
    case HS_ERR_INVALID_CERTIFICATE: return "invalid-certificate";
    case HS_ERR_NOT_TRIM: return "not-trim";
    case HS_ERR_NOT_SYMMETRIC: return "not-symmetric";
    case HS_ERR_TOO_LARGE: return "too-large";
    case HS_ERR_OVERFLOW: return "overflow";
    case HS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* hs_last_error(void) { return last_error.c_str(); }

void hs_string_free(char* s) { std::free(s); }

hs_status hs_automaton_parse(const char* json, hs_automaton** out) {
  return guarded([&] {
    require(json && out, "json/out");
    *out = wrap(parse_automaton(json));
  });
}

hs_status hs_automaton_to_json(const hs_automaton* a, char** out) {
  return guarded([&] {
    require(a && out, "automaton/out");
    *out = copy_string(to_json(a->value));
  });
}

void hs_automaton_free(hs_automaton* a) { delete a; }

size_t hs_automaton_arity(const hs_automaton* a) { return a ? a->value.arity() : 0; }

size_t hs_automaton_state_count(const hs_automaton* a) { return a ? a->value.size() : 0; }

hs_status hs_hom_automaton(const char* graph_json, size_t arity, hs_automaton** out) {
  return guarded([&] {
    require(graph_json && out, "graph/out");
    if (arity < 1) throw Error(ErrorCode::InvalidArgument, "arity must be at least 1");
    auto kind = document_kind(graph_json);
    if (kind == "undirected-graph") {
      *out = wrap(hom_automaton(parse_undirected_graph(graph_json), arity));
    } else {
      *out = wrap(hom_automaton(parse_directed_graph(graph_json), arity));
    }
  });
}

hs_status hs_trim(const hs_automaton* a, hs_automaton** out) {
  return guarded([&] {
    require(a && out, "automaton/out");
    *out = wrap(trim(a->value));
  });
}

hs_status hs_total_amalgamation(const hs_automaton* a, hs_automaton** out) {
  return guarded([&] {
    require(a && out, "automaton/out");
    *out = wrap(total_amalgamation(a->value));
  });
}

hs_status hs_amalgamate_rounds(const hs_automaton* a, size_t rounds, hs_automaton** out) {
  return guarded([&] {
    require(a && out, "automaton/out");
    *out = wrap(amalgamate(a->value, rounds).result);
  });
}

hs_status hs_random_split_walk(const hs_automaton* a, size_t rounds, uint64_t seed,
                               hs_automaton** out) {
  return guarded([&] {
    require(a && out, "automaton/out");
    *out = wrap(random_split_walk(a->value, rounds, seed));
  });
}

hs_status hs_count_blocks(const hs_automaton* a, size_t height, char** report_json) {
  return guarded([&] {
    require(a && report_json, "automaton/out");
    *report_json = copy_string(to_json(count_blocks(a->value, height), a->value));
  });
}

hs_status hs_enumerate_blocks(const hs_automaton* a, size_t height, size_t cap,
                              char** blocks_json) {
  return guarded([&] {
    require(a && blocks_json, "automaton/out");
    auto blocks = enumerate_blocks(a->value, height, cap ? cap : kDefaultBlockCap);
    *blocks_json = copy_string(blocks_to_json(blocks, height));
  });
}

hs_status hs_compile(const char* sft_json, size_t state_cap, hs_automaton** out) {
  return guarded([&] {
    require(sft_json && out, "sft/out");
    *out = wrap(compile(parse_sft(sft_json), state_cap ? state_cap : kDefaultStateCap).automaton);
  });
}

hs_status hs_check_hom(const hs_automaton* a, int* answer, char** verdict_json) {
  return guarded([&] {
    require(a && answer && verdict_json, "automaton/out");
    auto v = make_verdict(decide_hom(a->value));
    *verdict_json = copy_string(to_json(v));
    *answer = v.answer ? 1 : 0;
  });
}

hs_status hs_check_directed_hom(const hs_automaton* a, int* answer, char** verdict_json) {
  return guarded([&] {
    require(a && answer && verdict_json, "automaton/out");
    auto v = make_verdict(decide_directed_hom(a->value));
    *verdict_json = copy_string(to_json(v));
    *answer = v.answer ? 1 : 0;
  });
}

hs_status hs_conjugate(const hs_automaton* a, const hs_automaton* b, uint64_t node_budget,
                       int* answer, char** verdict_json) {
  return guarded([&] {
    require(a && b && answer && verdict_json, "automaton/out");
    auto v = make_verdict(
        decide_conjugacy(a->value, b->value, node_budget ? node_budget : kDefaultNodeBudget));
    *verdict_json = copy_string(to_json(v));
    *answer = v.answer ? 1 : 0;
  });
}

hs_status hs_verdict_witness(const char* verdict_json, char** graph_json) {
  return guarded([&] {
    require(verdict_json && graph_json, "verdict/out");
    auto v = parse_verdict(verdict_json);
    if (!v.witness) throw Error(ErrorCode::InvalidArgument, "the verdict carries no witness graph");
    *graph_json = copy_string(std::visit([](const auto& g) { return to_json(g); }, *v.witness));
  });
}

hs_status hs_verdict_summary(const char* verdict_json, char** summary) {
  return guarded([&] {
    require(verdict_json && summary, "verdict/out");
    auto v = parse_verdict(verdict_json);
    std::string s = v.answer ? "yes" : "no";
    if (v.degenerate) s += " (empty shift)";
    if (v.exact && !*v.exact) s += " (witness from child multisets)";
    if (v.failure) s += ": " + v.failure->message;
    *summary = copy_string(s);
  });
}

hs_status hs_verify_roundtrip(const hs_automaton* a, size_t rounds, uint64_t seed, int* passed,
                              char** report_json) {
  return guarded([&] {
    require(a && passed && report_json, "automaton/out");
    auto report = verify_split_roundtrip(a->value, rounds, seed);
    *report_json = copy_string(to_json(report));
    *passed = report.passed ? 1 : 0;
  });
}

hs_status hs_graph_to_dot(const char* graph_json, char** dot) {
  return guarded([&] {
    require(graph_json && dot, "graph/out");
    auto kind = document_kind(graph_json);
    if (kind == "undirected-graph") *dot = copy_string(to_dot(parse_undirected_graph(graph_json)));
    else *dot = copy_string(to_dot(parse_directed_graph(graph_json)));
  });
}

}  // extern "C"
