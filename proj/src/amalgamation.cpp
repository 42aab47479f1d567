#include "homshift/amalgamation.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "homshift/errors.hpp"
#include "homshift/rng.hpp"

namespace homshift {

namespace {

// (parent, remaining children, multiplicity) for one position of a column.
using ColumnEntry = std::tuple<StateId, Tuple, Count>;
// Per position, the sorted nonzero entries of the columns indexed by a state.
using ColumnSignature = std::vector<std::vector<ColumnEntry>>;

std::vector<ColumnSignature> column_signatures(const EdgeTreeAutomaton& a) {
  const std::size_t d = a.arity();
  std::vector<ColumnSignature> sig(a.size(), ColumnSignature(d));
  for (StateId p = 0; p < a.size(); ++p) {
    for (const auto& [tuple, count] : a.row(p)) {
      for (std::size_t l = 0; l < d; ++l) {
        Tuple rest;
        rest.reserve(d - 1);
        for (std::size_t i = 0; i < d; ++i) {
          if (i != l) rest.push_back(tuple[i]);
        }
        sig[tuple[l]][l].emplace_back(p, std::move(rest), count);
      }
    }
  }
  for (auto& s : sig) {
    for (auto& position : s) std::sort(position.begin(), position.end());
  }
  return sig;
}

std::string unique_name(std::string base, std::set<std::string>& used) {
  while (!used.insert(base).second) base += '\'';
  return base;
}

// Appends every tuple of prod_l images[t_l] to out.
void fan_out(const Tuple& t, const std::vector<std::vector<StateId>>& images,
             Count count, Row& out) {
  const std::size_t d = t.size();
  std::vector<std::size_t> pick(d, 0);
  while (true) {
    Tuple image(d);
    for (std::size_t l = 0; l < d; ++l) image[l] = images[t[l]][pick[l]];
    Count& slot = out[std::move(image)];
    if (count > std::numeric_limits<Count>::max() - slot) {
      throw Error(ErrorCode::Overflow, "multiplicity overflows");
    }
    slot += count;
    std::size_t l = d;
    while (l > 0) {
      --l;
      if (++pick[l] < images[t[l]].size()) break;
      pick[l] = 0;
      if (l == 0) return;
    }
  }
}

}  // namespace

bool MergePartition::trivial() const {
  return std::all_of(classes.begin(), classes.end(),
                     [](const auto& c) { return c.size() <= 1; });
}

std::vector<std::size_t> MergePartition::class_of(std::size_t state_count) const {
  std::vector<std::size_t> out(state_count, classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (StateId s : classes[i]) {
      if (s < state_count) out[s] = i;
    }
  }
  return out;
}

MergePartition coarsest_merge_partition(const EdgeTreeAutomaton& a) {
  auto sig = column_signatures(a);
  std::map<ColumnSignature, std::size_t> index;
  MergePartition p;
  for (StateId s = 0; s < a.size(); ++s) {
    auto [it, inserted] = index.emplace(std::move(sig[s]), p.classes.size());
    if (inserted) p.classes.emplace_back();
    p.classes[it->second].push_back(s);
  }
  return p;
}

bool is_valid_merge_partition(const EdgeTreeAutomaton& a, const MergePartition& p) {
  std::vector<bool> seen(a.size(), false);
  std::size_t covered = 0;
  for (const auto& c : p.classes) {
    if (c.empty()) return false;
    for (StateId s : c) {
      if (s >= a.size() || seen[s]) return false;
      seen[s] = true;
      ++covered;
    }
  }
  if (covered != a.size()) return false;
  auto sig = column_signatures(a);
  for (const auto& c : p.classes) {
    for (StateId s : c) {
      if (sig[s] != sig[c.front()]) return false;
    }
  }
  return true;
}

EdgeTreeAutomaton general_amalgamation(const EdgeTreeAutomaton& a,
                                       const MergePartition& p) {
  if (!is_valid_merge_partition(a, p)) {
    throw Error(ErrorCode::InvalidPartition,
                "partition classes must cover the states and have identical columns");
  }
  if (a.is_empty()) return a;

  const auto cls = p.class_of(a.size());
  // A tuple is the representative of its column class when every child is
  // the first member of its merge class.
  std::vector<bool> representative(a.size(), false);
  for (const auto& c : p.classes) representative[c.front()] = true;

  std::set<std::string> used;
  std::vector<std::string> names;
  for (const auto& c : p.classes) {
    if (c.size() == 1) {
      names.push_back(unique_name(a.name(c.front()), used));
      continue;
    }
    std::string merged = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) merged += '+';
      merged += a.name(c[i]);
    }
    merged += ')';
    names.push_back(unique_name(std::move(merged), used));
  }

  std::vector<Row> rows(p.classes.size());
  for (StateId s = 0; s < a.size(); ++s) {
    Row& target = rows[cls[s]];
    for (const auto& [tuple, count] : a.row(s)) {
      if (!std::all_of(tuple.begin(), tuple.end(),
                       [&](StateId c) { return representative[c]; })) {
        continue;
      }
      Tuple image(tuple.size());
      for (std::size_t l = 0; l < tuple.size(); ++l) {
        image[l] = static_cast<StateId>(cls[tuple[l]]);
      }
      Count& slot = target[std::move(image)];
      if (count > std::numeric_limits<Count>::max() - slot) {
        throw Error(ErrorCode::Overflow, "multiplicity overflows");
      }
      slot += count;
    }
  }
  return EdgeTreeAutomaton(a.arity(), std::move(names), std::move(rows));
}

AmalgamationTrace amalgamate(const EdgeTreeAutomaton& a,
                             std::optional<std::size_t> max_rounds) {
  AmalgamationTrace trace{a, {}};
  // Each nontrivial round removes at least one state.
  const std::size_t guard = a.size();
  while (!max_rounds || trace.rounds.size() < *max_rounds) {
    auto partition = coarsest_merge_partition(trace.result);
    if (partition.trivial()) break;
    if (trace.rounds.size() >= guard) {
      throw Error(ErrorCode::InvalidArgument, "amalgamation failed to terminate");
    }
    trace.result = general_amalgamation(trace.result, partition);
    trace.rounds.push_back(std::move(partition));
  }
  return trace;
}

EdgeTreeAutomaton total_amalgamation(const EdgeTreeAutomaton& a) {
  return amalgamate(a).result;
}

EdgeTreeAutomaton out_split(const EdgeTreeAutomaton& a, const SplitSpec& spec) {
  if (spec.state >= a.size()) {
    throw Error(ErrorCode::InvalidSplit, "split state out of range");
  }
  if (spec.parts.size() < 2) {
    throw Error(ErrorCode::InvalidSplit, "a split needs at least two parts");
  }
  Row covered;
  for (const auto& part : spec.parts) {
    bool nonempty = false;
    for (const auto& [tuple, count] : part) {
      if (count == 0) continue;
      nonempty = true;
      covered[tuple] += count;
    }
    if (!nonempty) throw Error(ErrorCode::InvalidSplit, "split parts must be nonempty");
  }
  if (covered != a.row(spec.state)) {
    throw Error(ErrorCode::InvalidSplit,
                "split parts must cover the outgoing transitions exactly once");
  }

  const StateId s = spec.state;
  const std::size_t m = spec.parts.size();
  // New indices: states before s keep theirs, s becomes s..s+m-1, the rest
  // shift by m-1.
  std::vector<std::vector<StateId>> images(a.size());
  for (StateId q = 0; q < a.size(); ++q) {
    if (q < s) images[q] = {q};
    else if (q > s) images[q] = {static_cast<StateId>(q + m - 1)};
  }
  for (std::size_t i = 0; i < m; ++i) images[s].push_back(static_cast<StateId>(s + i));

  std::set<std::string> used(a.names().begin(), a.names().end());
  used.erase(a.name(s));
  std::vector<std::string> names;
  std::vector<Row> rows;
  for (StateId q = 0; q < a.size(); ++q) {
    if (q != s) {
      names.push_back(a.name(q));
      Row row;
      for (const auto& [tuple, count] : a.row(q)) fan_out(tuple, images, count, row);
      rows.push_back(std::move(row));
      continue;
    }
    for (std::size_t i = 0; i < m; ++i) {
      names.push_back(unique_name(a.name(s) + "_" + std::to_string(i + 1), used));
      Row row;
      for (const auto& [tuple, count] : spec.parts[i]) {
        if (count > 0) fan_out(tuple, images, count, row);
      }
      rows.push_back(std::move(row));
    }
  }
  return EdgeTreeAutomaton(a.arity(), std::move(names), std::move(rows));
}

EdgeTreeAutomaton random_split_walk(const EdgeTreeAutomaton& a, std::size_t rounds,
                                    std::uint64_t seed) {
  if (a.is_empty()) {
    throw Error(ErrorCode::InvalidArgument, "random_split_walk needs a nonempty automaton");
  }
  SeededRng rng(seed);
  EdgeTreeAutomaton current = a;
  for (std::size_t round = 0; round < rounds; ++round) {
    std::vector<StateId> candidates;
    for (StateId q = 0; q < current.size(); ++q) {
      if (current.out_mass(q) >= 2) candidates.push_back(q);
    }
    if (candidates.empty()) break;
    const StateId s = candidates[rng.below(candidates.size())];

    std::vector<Tuple> units;
    for (const auto& [tuple, count] : current.row(s)) {
      for (Count c = 0; c < count; ++c) units.push_back(tuple);
    }
    const std::uint64_t m = rng.between(2, std::min<std::uint64_t>(units.size(), 3));
    rng.shuffle(units);

    SplitSpec spec{s, std::vector<Row>(m)};
    for (std::size_t i = 0; i < units.size(); ++i) {
      std::size_t part = i < m ? i : rng.below(m);
      spec.parts[part][units[i]] += 1;
    }
    current = out_split(current, spec);
  }
  return current;
}

}  // namespace homshift
