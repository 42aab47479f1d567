#include "homshift/compiler.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include "homshift/errors.hpp"

namespace homshift {

namespace {

using Labels = std::vector<std::uint32_t>;

// base^exponent, or nullopt past limit.
std::optional<std::size_t> bounded_power(std::size_t base, std::size_t exponent,
                                         std::size_t limit) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (out > limit / base) return std::nullopt;
    out *= base;
  }
  return out <= limit ? std::optional(out) : std::nullopt;
}

// Advances labels as a base-`base` odometer; false after the last value.
bool next_labels(Labels& labels, std::size_t base) {
  std::size_t i = labels.size();
  while (i > 0) {
    --i;
    if (++labels[i] < base) return true;
    labels[i] = 0;
  }
  return false;
}

std::size_t encode(const Labels& labels, std::size_t base) {
  std::size_t v = 0;
  for (auto x : labels) v = v * base + x;
  return v;
}

// Level-order positions, inside a block of height h, of subtree `child`
// truncated to height k <= h - 1.
std::vector<std::size_t> subtree_positions(std::size_t arity, std::size_t k,
                                           std::size_t child) {
  std::vector<std::size_t> out;
  std::size_t level_start = 1;  // first node of level 1
  std::size_t width = 1;        // nodes of the subtree on the current level
  for (std::size_t level = 1; level <= k; ++level) {
    for (std::size_t j = 0; j < width; ++j) out.push_back(level_start + child * width + j);
    level_start += width * arity;
    width *= arity;
  }
  return out;
}

}  // namespace

void validate(const SftPresentation& p) {
  if (p.arity < 1) throw Error(ErrorCode::InvalidArgument, "arity must be at least 1");
  if (p.alphabet.empty()) throw Error(ErrorCode::InvalidArgument, "alphabet must be nonempty");
  std::set<std::string> symbols(p.alphabet.begin(), p.alphabet.end());
  if (symbols.size() != p.alphabet.size()) {
    throw Error(ErrorCode::InvalidArgument, "alphabet symbols must be distinct");
  }
  for (const auto& b : p.forbidden) {
    if (b.arity != p.arity) {
      throw Error(ErrorCode::InvalidArgument, "forbidden block arity differs from the shift arity");
    }
    if (b.height < 1) throw Error(ErrorCode::InvalidArgument, "forbidden block height must be >= 1");
    if (b.labels.size() != block_node_count(b.arity, b.height)) {
      throw Error(ErrorCode::InvalidArgument, "forbidden block has " +
                                                  std::to_string(b.labels.size()) +
                                                  " labels, expected " +
                                                  std::to_string(block_node_count(b.arity, b.height)));
    }
    for (const auto& l : b.labels) {
      if (!symbols.count(l)) throw Error(ErrorCode::InvalidArgument, "unknown symbol '" + l + "'");
    }
  }
}

SftPresentation normalize_forbidden(const SftPresentation& p) {
  validate(p);
  std::size_t height = 2;
  for (const auto& b : p.forbidden) height = std::max(height, b.height);
  const std::size_t nodes = block_node_count(p.arity, height);

  std::set<Block> out;
  for (const auto& b : p.forbidden) {
    if (b.height == height) {
      out.insert(b);
      continue;
    }
    // Completion: keep b as the top, free labels below it.
    const std::size_t fixed = b.labels.size();
    Labels tail(nodes - fixed, 0);
    do {
      Block c{p.arity, height, b.labels};
      for (auto x : tail) c.labels.push_back(p.alphabet[x]);
      out.insert(std::move(c));
    } while (next_labels(tail, p.alphabet.size()));
  }
  return SftPresentation{p.arity, p.alphabet, {out.begin(), out.end()}};
}

CompiledSft compile(const SftPresentation& p, std::size_t state_cap) {
  const auto norm = normalize_forbidden(p);
  const std::size_t d = norm.arity;
  const std::size_t base = norm.alphabet.size();
  std::size_t height = 2;
  for (const auto& b : norm.forbidden) height = std::max(height, b.height);
  const std::size_t k = height - 1;
  const std::size_t top_nodes = block_node_count(d, k);
  const std::size_t full_nodes = block_node_count(d, height);

  const auto state_count = bounded_power(base, top_nodes, state_cap);
  if (!state_count) {
    throw Error(ErrorCode::CapExceeded,
                "more than " + std::to_string(state_cap) + " candidate states");
  }
  const std::size_t block_cap =
      state_cap > std::numeric_limits<std::size_t>::max() / 100 ? state_cap : state_cap * 100;
  if (!bounded_power(base, full_nodes, block_cap)) {
    throw Error(ErrorCode::CapExceeded,
                "more than " + std::to_string(block_cap) + " height-" + std::to_string(height) +
                    " blocks");
  }

  std::map<std::string, std::uint32_t> symbol_index;
  for (std::uint32_t i = 0; i < base; ++i) symbol_index[norm.alphabet[i]] = i;
  std::set<Labels> forbidden;
  for (const auto& b : norm.forbidden) {
    Labels l;
    for (const auto& s : b.labels) l.push_back(symbol_index.at(s));
    forbidden.insert(std::move(l));
  }

  const bool short_symbols = std::all_of(norm.alphabet.begin(), norm.alphabet.end(),
                                         [](const std::string& s) { return s.size() == 1; });
  std::vector<std::string> names;
  std::vector<Block> blocks;
  names.reserve(*state_count);
  Labels top(top_nodes, 0);
  do {
    Block b{d, k, {}};
    std::string name;
    for (std::size_t i = 0; i < top.size(); ++i) {
      b.labels.push_back(norm.alphabet[top[i]]);
      if (i && !short_symbols) name += ',';
      name += norm.alphabet[top[i]];
    }
    names.push_back(std::move(name));
    blocks.push_back(std::move(b));
  } while (next_labels(top, base));

  std::vector<std::vector<std::size_t>> child_positions(d);
  for (std::size_t i = 0; i < d; ++i) child_positions[i] = subtree_positions(d, k, i);

  std::vector<Row> rows(names.size());
  Labels full(full_nodes, 0);
  Labels part(top_nodes);
  do {
    if (forbidden.count(full)) continue;
    const auto from = encode(Labels(full.begin(), full.begin() + top_nodes), base);
    Tuple children(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < top_nodes; ++j) part[j] = full[child_positions[i][j]];
      children[i] = static_cast<StateId>(encode(part, base));
    }
    rows[from][std::move(children)] += 1;
  } while (next_labels(full, base));

  EdgeTreeAutomaton raw(d, std::move(names), std::move(rows));
  CompiledSft out{trim(raw), k, {}, false};
  out.empty_shift = out.automaton.is_empty();
  for (const auto& name : out.automaton.names()) {
    out.state_blocks.push_back(blocks[*raw.find(name)]);
  }
  return out;
}

}  // namespace homshift
