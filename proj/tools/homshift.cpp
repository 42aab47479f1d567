// homshift command-line front end. Links only the C interface.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "homshift/homshift.h"
#include "json.hpp"

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StringDeleter {
  void operator()(char* s) const { hs_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct AutomatonDeleter {
  void operator()(hs_automaton* a) const { hs_automaton_free(a); }
};
using Automaton = std::unique_ptr<hs_automaton, AutomatonDeleter>;

void check(hs_status s) {
  if (s != HS_OK) throw Failure(std::string(hs_status_name(s)) + ": " + hs_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure("cannot write " + path);
}

Automaton load(const std::string& path) {
  hs_automaton* a = nullptr;
  check(hs_automaton_parse(read_file(path).c_str(), &a));
  return Automaton(a);
}

std::string take(char* s) { return std::string(OwnedString(s).get()); }

std::optional<std::uint64_t> env_number(const char* name) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return std::nullopt;
  try {
    std::size_t used = 0;
    auto v = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw Failure(std::string(name) + " must be a nonnegative integer");
  }
}

struct Context {
  bool meta = false;
  std::string output;
  std::string command;
  std::vector<std::string> inputs;

  // Adds a "meta" object after "kind" when --meta is given.
  std::string decorate(const std::string& json) const {
    if (!meta) return json;
    auto doc = nlohmann::ordered_json::parse(json);
    nlohmann::ordered_json out;
    out["kind"] = doc["kind"];
    out["meta"] = {{"tool", "homshift"}, {"version", hs_version()}, {"command", command},
                   {"inputs", inputs}};
    for (auto& [k, v] : doc.items()) {
      if (k != "kind") out[k] = v;
    }
    return out.dump(2) + "\n";
  }

  void emit(const std::string& json) const {
    auto text = decorate(json);
    if (output.empty()) std::cout << text;
    else write_file(output, text);
  }
};

std::string automaton_json(const Automaton& a) {
  char* s = nullptr;
  check(hs_automaton_to_json(a.get(), &s));
  return take(s);
}

int finish_verdict(const Context& ctx, const std::string& verdict, int answer,
                   const std::string& witness_path, const std::string& dot_path) {
  ctx.emit(verdict);
  char* summary = nullptr;
  check(hs_verdict_summary(verdict.c_str(), &summary));
  std::cerr << take(summary) << "\n";
  if (answer && (!witness_path.empty() || !dot_path.empty())) {
    char* graph = nullptr;
    check(hs_verdict_witness(verdict.c_str(), &graph));
    std::string g = take(graph);
    if (!witness_path.empty()) write_file(witness_path, ctx.decorate(g));
    if (!dot_path.empty()) {
      char* dot = nullptr;
      check(hs_graph_to_dot(g.c_str(), &dot));
      write_file(dot_path, take(dot));
    }
  }
  return answer ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Decides conjugacy of tree-shifts of finite type to Hom shifts and to each other.\n"
      "Exit status: 0 yes or success, 1 no, 2 error. An automaton that trims to the empty\n"
      "shift is answered yes with an empty witness and flagged degenerate.\n"
      "HOMSHIFT_NODE_BUDGET overrides the isomorphism search budget and\n"
      "HOMSHIFT_STATE_CAP the compiler state cap."};
  app.require_subcommand(1);
  Context ctx;
  app.add_flag("--meta", ctx.meta, "Add a provenance object to JSON output");

  std::string input, input_b, witness_path, dot_path;
  std::size_t rounds = 0, height = 1, cap = 0, arity = 1;
  std::uint64_t seed = 0;
  bool total = false, count_only = false, hom = false, directed = false, roundtrip = false;

  auto* compile = app.add_subcommand("compile", "Compile an SFT document into a trim automaton");
  compile->add_option("sft", input, "SFT document")->required()->check(CLI::ExistingFile);
  compile->add_option("-o,--output", ctx.output, "Output file (default stdout)");

  auto* lift = app.add_subcommand("lift", "Automaton of the Hom shift of a graph document");
  lift->add_option("graph", input, "Graph document")->required()->check(CLI::ExistingFile);
  lift->add_option("--arity", arity, "Number of children")->check(CLI::PositiveNumber);
  lift->add_option("-o,--output", ctx.output, "Output file (default stdout)");

  auto* trim = app.add_subcommand("trim", "Remove states without infinite computations");
  trim->add_option("automaton", input, "Automaton document")->required()->check(CLI::ExistingFile);
  trim->add_option("-o,--output", ctx.output, "Output file (default stdout)");

  auto* amalgamate = app.add_subcommand("amalgamate", "Merge states with identical columns");
  amalgamate->add_option("automaton", input, "Automaton document")->required()->check(CLI::ExistingFile);
  auto* total_flag = amalgamate->add_flag("--total", total, "Run to the fixpoint");
  auto* rounds_opt = amalgamate->add_option("--rounds", rounds, "Number of rounds");
  total_flag->excludes(rounds_opt);
  amalgamate->add_option("-o,--output", ctx.output, "Output file (default stdout)");

  auto* check_cmd = app.add_subcommand("check", "Decide conjugacy to a (directed) Hom shift");
  check_cmd->add_option("automaton", input, "Automaton document")->required()->check(CLI::ExistingFile);
  auto* hom_flag = check_cmd->add_flag("--hom", hom, "Undirected Hom shift");
  auto* dir_flag = check_cmd->add_flag("--directed-hom", directed, "Directed Hom tree-shift");
  hom_flag->excludes(dir_flag);
  check_cmd->add_option("-o,--output", ctx.output, "Verdict file (default stdout)");
  check_cmd->add_option("--witness", witness_path, "Write the witness graph document");
  check_cmd->add_option("--dot", dot_path, "Write the witness graph as Graphviz");

  auto* conjugate = app.add_subcommand("conjugate", "Decide conjugacy of two edge tree shifts");
  conjugate->add_option("a", input, "First automaton")->required()->check(CLI::ExistingFile);
  conjugate->add_option("b", input_b, "Second automaton")->required()->check(CLI::ExistingFile);
  conjugate->add_option("-o,--output", ctx.output, "Verdict file (default stdout)");

  auto* split = app.add_subcommand("split", "Apply seeded random out-splittings");
  split->add_option("automaton", input, "Automaton document")->required()->check(CLI::ExistingFile);
  split->add_option("--seed", seed, "Generator seed")->required();
  split->add_option("--rounds", rounds, "Number of splittings")->required();
  split->add_option("-o,--output", ctx.output, "Output file (default stdout)");

  auto* blocks = app.add_subcommand("blocks", "Count or list the blocks of a given height");
  blocks->add_option("automaton", input, "Trim automaton document")->required()->check(CLI::ExistingFile);
  blocks->add_option("--height", height, "Block height")->required()->check(CLI::PositiveNumber);
  blocks->add_flag("--count-only", count_only, "Report counts only");
  blocks->add_option("--cap", cap, "Largest number of blocks to list");
  blocks->add_option("-o,--output", ctx.output, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Brute-force self checks");
  verify->add_option("automaton", input, "Automaton document")->required()->check(CLI::ExistingFile);
  verify->add_flag("--roundtrip", roundtrip, "Split, amalgamate and compare")->required();
  verify->add_option("--seed", seed, "Generator seed");
  verify->add_option("--rounds", rounds, "Number of splittings (at most 4)");
  verify->add_option("-o,--output", ctx.output, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kYes : kError;
  }

  auto* sub = app.get_subcommands().front();
  ctx.command = sub->get_name();
  ctx.inputs = {input};
  if (!input_b.empty()) ctx.inputs.push_back(input_b);

  try {
    if (sub == compile) {
      auto state_cap = env_number("HOMSHIFT_STATE_CAP").value_or(0);
      hs_automaton* a = nullptr;
      check(hs_compile(read_file(input).c_str(), state_cap, &a));
      Automaton owned(a);
      ctx.emit(automaton_json(owned));
      return kYes;
    }
    if (sub == lift) {
      hs_automaton* a = nullptr;
      check(hs_hom_automaton(read_file(input).c_str(), arity, &a));
      ctx.emit(automaton_json(Automaton(a)));
      return kYes;
    }
    if (sub == trim || sub == amalgamate || sub == split) {
      auto a = load(input);
      hs_automaton* out = nullptr;
      if (sub == trim) {
        check(hs_trim(a.get(), &out));
      } else if (sub == split) {
        check(hs_random_split_walk(a.get(), rounds, seed, &out));
      } else if (total || rounds_opt->count() == 0) {
        check(hs_total_amalgamation(a.get(), &out));
      } else {
        check(hs_amalgamate_rounds(a.get(), rounds, &out));
      }
      ctx.emit(automaton_json(Automaton(out)));
      return kYes;
    }
    if (sub == check_cmd) {
      if (!hom && !directed) throw Failure("check needs --hom or --directed-hom");
      auto a = load(input);
      int answer = 0;
      char* verdict = nullptr;
      check(hom ? hs_check_hom(a.get(), &answer, &verdict)
                : hs_check_directed_hom(a.get(), &answer, &verdict));
      return finish_verdict(ctx, take(verdict), answer, witness_path, dot_path);
    }
    if (sub == conjugate) {
      auto a = load(input);
      auto b = load(input_b);
      auto budget = env_number("HOMSHIFT_NODE_BUDGET").value_or(0);
      int answer = 0;
      char* verdict = nullptr;
      check(hs_conjugate(a.get(), b.get(), budget, &answer, &verdict));
      return finish_verdict(ctx, take(verdict), answer, "", "");
    }
    if (sub == blocks) {
      auto a = load(input);
      char* report = nullptr;
      check(count_only ? hs_count_blocks(a.get(), height, &report)
                       : hs_enumerate_blocks(a.get(), height, cap, &report));
      ctx.emit(take(report));
      return kYes;
    }
    if (sub == verify) {
      auto a = load(input);
      int passed = 0;
      char* report = nullptr;
      check(hs_verify_roundtrip(a.get(), rounds, seed, &passed, &report));
      ctx.emit(take(report));
      return passed ? kYes : kNo;
    }
  } catch (const std::exception& e) {
    std::cerr << "homshift: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
