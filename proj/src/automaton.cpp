#include "homshift/automaton.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "homshift/errors.hpp"

namespace homshift {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Schema: return "schema violation";
    case ErrorCode::CapExceeded: return "cap exceeded";
    case ErrorCode::BudgetExceeded: return "search budget exceeded";
    case ErrorCode::InvalidSplit: return "invalid split";
    case ErrorCode::InvalidPartition: return "invalid partition";
    case ErrorCode::InvalidCertificate: return "invalid certificate";
    case ErrorCode::NotTrim: return "automaton is not trim";
    case ErrorCode::NotSymmetric: return "automaton is not symmetric";
    case ErrorCode::TooLarge: return "instance too large";
    case ErrorCode::Overflow: return "arithmetic overflow";
  }
  return "unknown error";
}

EdgeTreeAutomaton::EdgeTreeAutomaton(std::size_t arity,
                                     std::vector<std::string> names,
                                     std::vector<Row> rows)
    : arity_(arity), names_(std::move(names)), rows_(std::move(rows)) {
  if (arity_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "arity must be at least 1");
  }
  if (names_.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "an automaton needs at least one state; use empty()");
  }
  if (rows_.size() != names_.size()) {
    throw Error(ErrorCode::InvalidArgument, "one row per state is required");
  }
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate state name '" + n + "'");
    }
  }
  for (const auto& row : rows_) {
    for (const auto& [tuple, count] : row) {
      if (tuple.size() != arity_) {
        throw Error(ErrorCode::InvalidArgument, "child tuple length differs from arity");
      }
      for (StateId c : tuple) {
        if (c >= names_.size()) {
          throw Error(ErrorCode::InvalidArgument, "child state out of range");
        }
      }
      if (count == 0) {
        throw Error(ErrorCode::InvalidArgument, "stored multiplicities must be positive");
      }
    }
  }
}

EdgeTreeAutomaton EdgeTreeAutomaton::empty(std::size_t arity) {
  if (arity == 0) {
    throw Error(ErrorCode::InvalidArgument, "arity must be at least 1");
  }
  return EdgeTreeAutomaton(arity);
}

std::optional<StateId> EdgeTreeAutomaton::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<StateId>(i);
  }
  return std::nullopt;
}

Count EdgeTreeAutomaton::multiplicity(StateId s, const Tuple& children) const {
  const auto& r = rows_.at(s);
  auto it = r.find(children);
  return it == r.end() ? 0 : it->second;
}

Count EdgeTreeAutomaton::out_mass(StateId s) const {
  Count total = 0;
  for (const auto& [tuple, count] : rows_.at(s)) {
    if (count > std::numeric_limits<Count>::max() - total) {
      throw Error(ErrorCode::Overflow, "row mass overflows");
    }
    total += count;
  }
  return total;
}

std::size_t EdgeTreeAutomaton::entry_count() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

bool EdgeTreeAutomaton::is_trim() const {
  return std::none_of(rows_.begin(), rows_.end(),
                      [](const Row& r) { return r.empty(); });
}

StateId AutomatonBuilder::state(std::string_view name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  auto id = static_cast<StateId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(std::string(name), id);
  rows_.emplace_back();
  return id;
}

AutomatonBuilder& AutomatonBuilder::add(
    std::string_view from, const std::vector<std::string_view>& children,
    Count count) {
  StateId p = state(from);
  Tuple t;
  t.reserve(children.size());
  for (auto c : children) t.push_back(state(c));
  return add(p, std::move(t), count);
}

AutomatonBuilder& AutomatonBuilder::add(StateId from, Tuple children,
                                        Count count) {
  if (from >= rows_.size()) {
    throw Error(ErrorCode::InvalidArgument, "unknown source state");
  }
  if (children.size() != arity_) {
    throw Error(ErrorCode::InvalidArgument, "child tuple length differs from arity");
  }
  if (count == 0) return *this;
  rows_[from][std::move(children)] += count;
  return *this;
}

EdgeTreeAutomaton AutomatonBuilder::build() const {
  if (names_.empty()) return EdgeTreeAutomaton::empty(arity_);
  return EdgeTreeAutomaton(arity_, names_, rows_);
}

EdgeTreeAutomaton permute_states(const EdgeTreeAutomaton& a,
                                 const std::vector<StateId>& perm) {
  const std::size_t n = a.size();
  if (perm.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "permutation size mismatch");
  }
  if (n == 0) return a;
  std::vector<std::string> names(n);
  std::vector<Row> rows(n);
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] >= n || hit[perm[i]]) {
      throw Error(ErrorCode::InvalidArgument, "not a permutation");
    }
    hit[perm[i]] = true;
    names[perm[i]] = a.name(static_cast<StateId>(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [tuple, count] : a.row(static_cast<StateId>(i))) {
      Tuple t(tuple.size());
      for (std::size_t l = 0; l < tuple.size(); ++l) t[l] = perm[tuple[l]];
      rows[perm[i]][std::move(t)] = count;
    }
  }
  return EdgeTreeAutomaton(a.arity(), std::move(names), std::move(rows));
}

bool is_isomorphism(const EdgeTreeAutomaton& a, const EdgeTreeAutomaton& b,
                    const Isomorphism& iso) {
  if (a.arity() != b.arity() || a.size() != b.size() ||
      iso.map.size() != a.size()) {
    return false;
  }
  std::vector<bool> hit(b.size(), false);
  for (StateId s : iso.map) {
    if (s >= b.size() || hit[s]) return false;
    hit[s] = true;
  }
  if (a.entry_count() != b.entry_count()) return false;
  for (std::size_t p = 0; p < a.size(); ++p) {
    for (const auto& [tuple, count] : a.row(static_cast<StateId>(p))) {
      Tuple t(tuple.size());
      for (std::size_t l = 0; l < tuple.size(); ++l) t[l] = iso.map[tuple[l]];
      if (b.multiplicity(iso.map[p], t) != count) return false;
    }
  }
  return true;
}

EdgeTreeAutomaton trim(const EdgeTreeAutomaton& a) {
  const std::size_t n = a.size();
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p < n; ++p) {
      if (!alive[p]) continue;
      const auto& r = a.row(static_cast<StateId>(p));
      bool productive = std::any_of(r.begin(), r.end(), [&](const auto& e) {
        return std::all_of(e.first.begin(), e.first.end(),
                           [&](StateId c) { return alive[c]; });
      });
      if (!productive) {
        alive[p] = false;
        changed = true;
      }
    }
  }

  std::vector<StateId> remap(n, 0);
  std::vector<std::string> names;
  for (std::size_t p = 0; p < n; ++p) {
    if (alive[p]) {
      remap[p] = static_cast<StateId>(names.size());
      names.push_back(a.name(static_cast<StateId>(p)));
    }
  }
  if (names.empty()) return EdgeTreeAutomaton::empty(a.arity());

  std::vector<Row> rows(names.size());
  for (std::size_t p = 0; p < n; ++p) {
    if (!alive[p]) continue;
    for (const auto& [tuple, count] : a.row(static_cast<StateId>(p))) {
      if (!std::all_of(tuple.begin(), tuple.end(),
                       [&](StateId c) { return alive[c]; })) {
        continue;
      }
      Tuple t(tuple.size());
      for (std::size_t l = 0; l < tuple.size(); ++l) t[l] = remap[tuple[l]];
      rows[remap[p]].emplace(std::move(t), count);
    }
  }
  return EdgeTreeAutomaton(a.arity(), std::move(names), std::move(rows));
}

std::size_t block_node_count(std::size_t arity, std::size_t height) {
  std::size_t total = 0;
  std::size_t level = 1;
  for (std::size_t h = 0; h < height; ++h) {
    if (total > std::numeric_limits<std::size_t>::max() - level) {
      throw Error(ErrorCode::Overflow, "block too large");
    }
    total += level;
    if (h + 1 < height) {
      if (level > std::numeric_limits<std::size_t>::max() / arity) {
        throw Error(ErrorCode::Overflow, "block too large");
      }
      level *= arity;
    }
  }
  return total;
}

BlockCountTable count_blocks(const EdgeTreeAutomaton& a, std::size_t height) {
  if (height < 1) {
    throw Error(ErrorCode::InvalidArgument, "block height must be at least 1");
  }
  if (!a.is_trim()) {
    throw Error(ErrorCode::NotTrim, "count_blocks requires a trim automaton");
  }
  const std::size_t n = a.size();
  std::vector<BigCount> current(n);
  for (std::size_t p = 0; p < n; ++p) {
    current[p] = a.out_mass(static_cast<StateId>(p));
  }
  for (std::size_t k = 1; k < height; ++k) {
    std::vector<BigCount> next(n);
    for (std::size_t p = 0; p < n; ++p) {
      BigCount sum = 0;
      for (const auto& [tuple, count] : a.row(static_cast<StateId>(p))) {
        BigCount product = count;
        for (StateId c : tuple) product *= current[c];
        sum += product;
      }
      next[p] = std::move(sum);
    }
    current = std::move(next);
  }
  BlockCountTable table;
  table.height = height;
  for (const auto& v : current) table.total += v;
  table.per_state = std::move(current);
  return table;
}

std::string transition_label(const EdgeTreeAutomaton& a, StateId from,
                             const Tuple& children, Count copy) {
  std::string out = a.name(from);
  out += "→(";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += ',';
    out += a.name(children[i]);
  }
  out += ")#";
  out += std::to_string(copy);
  return out;
}

Block ComputationBlock::labeled(const EdgeTreeAutomaton& a) const {
  Block b;
  b.arity = arity;
  b.height = height;
  b.labels.reserve(nodes.size());
  for (const auto& node : nodes) {
    b.labels.push_back(transition_label(a, node.state, node.children, node.copy));
  }
  return b;
}

namespace {

// A computation subtree stored level by level; concatenating the levels
// gives the level-order node list.
using Levels = std::vector<std::vector<ComputationNode>>;

class SubtreeEnumerator {
 public:
  explicit SubtreeEnumerator(const EdgeTreeAutomaton& a) : a_(a) {}

  const std::vector<Levels>& subtrees(StateId p, std::size_t height) {
    auto key = std::make_pair(p, height);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Levels> out;
    for (const auto& [tuple, count] : a_.row(p)) {
      for (Count copy = 1; copy <= count; ++copy) {
        ComputationNode root{p, tuple, copy};
        if (height == 1) {
          out.push_back(Levels{{root}});
          continue;
        }
        // Cartesian product over the children's subtrees.
        std::vector<const std::vector<Levels>*> options;
        options.reserve(tuple.size());
        for (StateId c : tuple) options.push_back(&subtrees(c, height - 1));
        if (std::any_of(options.begin(), options.end(),
                        [](const auto* o) { return o->empty(); })) {
          continue;
        }
        std::vector<std::size_t> pick(tuple.size(), 0);
        bool more = true;
        while (more) {
          Levels tree(height);
          tree[0].push_back(root);
          for (std::size_t i = 0; i < tuple.size(); ++i) {
            const Levels& child = (*options[i])[pick[i]];
            for (std::size_t l = 0; l < child.size(); ++l) {
              tree[l + 1].insert(tree[l + 1].end(), child[l].begin(),
                                 child[l].end());
            }
          }
          out.push_back(std::move(tree));
          more = false;
          for (std::size_t i = tuple.size(); i-- > 0;) {
            if (++pick[i] < options[i]->size()) {
              more = true;
              break;
            }
            pick[i] = 0;
          }
        }
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const EdgeTreeAutomaton& a_;
  std::map<std::pair<StateId, std::size_t>, std::vector<Levels>> memo_;
};

}  // namespace

std::vector<ComputationBlock> enumerate_computations(const EdgeTreeAutomaton& a,
                                                     std::size_t height,
                                                     std::size_t cap) {
  if (a.is_empty()) {
    if (height < 1) {
      throw Error(ErrorCode::InvalidArgument, "block height must be at least 1");
    }
    return {};
  }
  auto table = count_blocks(a, height);
  if (table.total > cap) {
    std::ostringstream msg;
    msg << "block enumeration would produce " << table.total
        << " blocks, above the cap of " << cap;
    throw Error(ErrorCode::CapExceeded, msg.str());
  }
  SubtreeEnumerator enumerator(a);
  std::vector<ComputationBlock> out;
  out.reserve(static_cast<std::size_t>(table.total));
  for (std::size_t p = 0; p < a.size(); ++p) {
    for (const Levels& levels : enumerator.subtrees(static_cast<StateId>(p), height)) {
      ComputationBlock block;
      block.arity = a.arity();
      block.height = height;
      for (const auto& level : levels) {
        block.nodes.insert(block.nodes.end(), level.begin(), level.end());
      }
      out.push_back(std::move(block));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Block> enumerate_blocks(const EdgeTreeAutomaton& a,
                                    std::size_t height, std::size_t cap) {
  std::vector<Block> out;
  for (const auto& c : enumerate_computations(a, height, cap)) {
    out.push_back(c.labeled(a));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace homshift
