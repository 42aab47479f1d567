#pragma once

// JSON interchange documents. Every writer produces 2-space indented UTF-8
// with a trailing newline and a fixed key order, so equal values give equal
// bytes. Parsers throw Error(Schema) on malformed or inconsistent input.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "homshift/automaton.hpp"
#include "homshift/compiler.hpp"
#include "homshift/conjugacy.hpp"
#include "homshift/graph.hpp"
#include "homshift/homdecide.hpp"
#include "homshift/oracle.hpp"

namespace homshift {

/// The "kind" field of a document, or Error(Schema).
std::string document_kind(std::string_view text);

std::string to_json(const EdgeTreeAutomaton& a);
std::string to_json(const UndirectedGraph& g);
std::string to_json(const DirectedGraph& g);
std::string to_json(const SftPresentation& p);

EdgeTreeAutomaton parse_automaton(std::string_view text);
UndirectedGraph parse_undirected_graph(std::string_view text);
DirectedGraph parse_directed_graph(std::string_view text);
SftPresentation parse_sft(std::string_view text);

struct CertificateEntry {
  std::string state;
  std::vector<std::string> successors;
  Count level = 0;
  friend bool operator==(const CertificateEntry&, const CertificateEntry&) = default;
};

struct CopyEntry {
  std::string vertex;
  std::string state;
  std::vector<std::string> selector;
  Count copy = 1;
  bool cube = false;
  friend bool operator==(const CopyEntry&, const CopyEntry&) = default;
};

struct FailureEntry {
  std::string kind;
  std::string message;
  friend bool operator==(const FailureEntry&, const FailureEntry&) = default;
};

/// Answer of `check --hom`, `check --directed-hom` or `conjugate`, with
/// everything needed to audit it. Name-based, so it survives serialization.
struct Verdict {
  std::string question;  ///< "hom", "directed-hom" or "conjugate"
  bool answer = false;
  bool degenerate = false;
  std::optional<bool> exact;  ///< directed-hom only
  /// Whether trimming changed each input ("conjugate" only).
  std::vector<bool> trimmed;
  /// One total amalgamation, or two for "conjugate".
  std::vector<EdgeTreeAutomaton> amalgamations;
  std::vector<CertificateEntry> certificate;
  std::optional<std::variant<UndirectedGraph, DirectedGraph>> witness;
  std::vector<CopyEntry> copy_map;
  std::vector<std::pair<std::string, std::string>> isomorphism;
  std::optional<FailureEntry> failure;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

Verdict make_verdict(const HomDecision& d);
Verdict make_verdict(const DirectedHomDecision& d);
Verdict make_verdict(const ConjugacyDecision& d);

std::string to_json(const Verdict& v);
Verdict parse_verdict(std::string_view text);

std::string to_json(const BlockCountTable& t, const EdgeTreeAutomaton& a);
std::string blocks_to_json(const std::vector<Block>& blocks, std::size_t height);
std::string to_json(const RoundtripReport& r);

/// Graphviz rendering; loops and parallel-free edges as given.
std::string to_dot(const UndirectedGraph& g);
std::string to_dot(const DirectedGraph& g);

}  // namespace homshift
