#include "homshift/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "homshift/amalgamation.hpp"
#include "homshift/errors.hpp"

namespace homshift {

namespace {

using Labels = std::vector<std::uint32_t>;

// Complete d-ary trees stored in level order; node x has children d*x+1+i.
class TreeShape {
 public:
  explicit TreeShape(std::size_t arity) : d_(arity) {}

  std::size_t nodes(std::size_t height) const {
    std::size_t n = 0, level = 1;
    for (std::size_t h = 0; h < height; ++h, level *= d_) n += level;
    return n;
  }

  std::size_t depth(std::size_t x) const {
    std::size_t depth = 0;
    while (x >= nodes(depth + 1)) ++depth;
    return depth;
  }

  // Labels of the height-h subtree rooted at node x, in level order.
  Labels subtree(const Labels& t, std::size_t x, std::size_t h) const {
    Labels out;
    std::vector<std::size_t> level{x};
    for (std::size_t l = 0; l < h; ++l) {
      std::vector<std::size_t> next;
      for (auto v : level) {
        out.push_back(t[v]);
        for (std::size_t i = 0; i < d_; ++i) next.push_back(d_ * v + 1 + i);
      }
      level = std::move(next);
    }
    return out;
  }

  // The tree with the given root label and equal-height children.
  Labels assemble(std::uint32_t root, const std::vector<Labels>& children,
                  std::size_t child_height) const {
    Labels out{root};
    for (std::size_t l = 0; l < child_height; ++l) {
      const std::size_t start = nodes(l), width = nodes(l + 1) - start;
      for (const auto& c : children) out.insert(out.end(), c.begin() + start, c.begin() + start + width);
    }
    return out;
  }

  std::size_t arity() const { return d_; }

 private:
  std::size_t d_;
};

bool next_labels(Labels& labels, std::size_t base, std::size_t from = 0) {
  for (std::size_t i = labels.size(); i > from; --i) {
    if (++labels[i - 1] < base) return true;
    labels[i - 1] = 0;
  }
  return false;
}

class BlockOracle {
 public:
  explicit BlockOracle(const SftPresentation& p) : shape_(p.arity), base_(p.alphabet.size()) {
    validate(p);
    std::map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < base_; ++i) index[p.alphabet[i]] = i;
    window_ = 2;
    for (const auto& b : p.forbidden) {
      Labels l;
      for (const auto& s : b.labels) l.push_back(index.at(s));
      forbidden_.emplace_back(b.height, std::move(l));
      window_ = std::max(window_, b.height);
    }
  }

  std::size_t context_height() const { return window_ - 1; }

  bool allowed_at(const Labels& t, std::size_t height, std::size_t x) const {
    const std::size_t depth = shape_.depth(x);
    for (const auto& [h, f] : forbidden_) {
      if (depth + h <= height && shape_.subtree(t, x, h) == f) return false;
    }
    return true;
  }

  bool allowed(const Labels& t, std::size_t height) const {
    for (std::size_t x = 0; x < t.size(); ++x) {
      if (!allowed_at(t, height, x)) return false;
    }
    return true;
  }

  // Some allowed tree of height h + extra has t as its top.
  bool extendable(const Labels& t, std::size_t h, std::size_t extra) {
    if (extra == 0) return true;
    const std::size_t ch = context_height();
    if (h < ch) {
      const std::size_t grow = std::min(ch, h + extra);
      Labels big = t;
      big.resize(shape_.nodes(grow), 0);
      do {
        if (!allowed(big, grow)) continue;
        if (grow == h + extra || extendable(big, grow, h + extra - grow)) return true;
      } while (next_labels(big, base_, t.size()));
      return false;
    }
    const std::size_t first = shape_.nodes(h - ch);
    const std::size_t last = shape_.nodes(h - ch + 1);
    for (std::size_t v = first; v < last; ++v) {
      if (!ext(shape_.subtree(t, v, ch), extra)) return false;
    }
    return true;
  }

 private:
  // Some allowed tree of height context_height() + r has top c.
  bool ext(const Labels& c, std::size_t r) {
    const std::size_t ch = context_height();
    if (r == 0) return allowed(c, ch);
    auto key = std::make_pair(c, r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const std::size_t d = shape_.arity();
    std::vector<std::vector<Labels>> options(d);
    for (std::size_t i = 0; i < d; ++i) {
      Labels child = ch >= 2 ? shape_.subtree(c, 1 + i, ch - 1) : Labels{};
      const std::size_t fixed = child.size();
      child.resize(shape_.nodes(ch), 0);
      do {
        if (ext(child, r - 1)) options[i].push_back(child);
      } while (next_labels(child, base_, fixed));
    }
    bool found = false;
    if (std::none_of(options.begin(), options.end(), [](const auto& o) { return o.empty(); })) {
      std::vector<std::size_t> pick(d, 0);
      std::vector<Labels> chosen(d);
      bool more = true;
      while (more && !found) {
        for (std::size_t i = 0; i < d; ++i) chosen[i] = options[i][pick[i]];
        found = allowed(shape_.assemble(c[0], chosen, ch), window_);
        more = false;
        for (std::size_t i = d; i > 0 && !more; --i) {
          if (++pick[i - 1] < options[i - 1].size()) more = true;
          else pick[i - 1] = 0;
        }
      }
    }
    memo_[key] = found;
    return found;
  }

  TreeShape shape_;
  std::size_t base_;
  std::size_t window_;
  std::vector<std::pair<std::size_t, Labels>> forbidden_;
  std::map<std::pair<Labels, std::size_t>, bool> memo_;
};

}  // namespace

std::optional<Isomorphism> brute_isomorphic(const EdgeTreeAutomaton& a,
                                            const EdgeTreeAutomaton& b) {
  if (a.arity() != b.arity()) {
    throw Error(ErrorCode::InvalidArgument, "cannot compare automata of different arity");
  }
  if (a.size() > kBruteForceLimit || b.size() > kBruteForceLimit) {
    throw Error(ErrorCode::TooLarge, "brute force is limited to " +
                                         std::to_string(kBruteForceLimit) + " states");
  }
  if (a.size() != b.size()) return std::nullopt;
  std::size_t entries_a = 0, entries_b = 0;
  for (const auto& r : a.rows()) entries_a += r.size();
  for (const auto& r : b.rows()) entries_b += r.size();
  if (entries_a != entries_b) return std::nullopt;

  std::vector<StateId> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (StateId p = 0; ok && p < a.size(); ++p) {
      for (const auto& [t, c] : a.row(p)) {
        Tuple image(t.size());
        for (std::size_t l = 0; l < t.size(); ++l) image[l] = perm[t[l]];
        auto it = b.row(perm[p]).find(image);
        if (it == b.row(perm[p]).end() || it->second != c) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return Isomorphism{perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

std::vector<Block> brute_blocks(const SftPresentation& p, std::size_t height, std::size_t slack,
                                std::size_t cap) {
  if (height < 1) throw Error(ErrorCode::InvalidArgument, "block height must be at least 1");
  BlockOracle oracle(p);
  TreeShape shape(p.arity);
  const std::size_t nodes = shape.nodes(height);
  std::size_t candidates = 1;
  for (std::size_t i = 0; i < nodes; ++i) {
    if (candidates > cap / p.alphabet.size()) {
      throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(cap) + " candidate blocks");
    }
    candidates *= p.alphabet.size();
  }

  std::vector<Block> out;
  Labels t(nodes, 0);
  do {
    if (!oracle.allowed(t, height) || !oracle.extendable(t, height, slack)) continue;
    Block b{p.arity, height, {}};
    for (auto x : t) b.labels.push_back(p.alphabet[x]);
    out.push_back(std::move(b));
  } while (next_labels(t, p.alphabet.size()));
  std::sort(out.begin(), out.end());
  return out;
}

RoundtripReport verify_split_roundtrip(const EdgeTreeAutomaton& a, std::size_t rounds,
                                       std::uint64_t seed) {
  if (a.is_empty()) throw Error(ErrorCode::InvalidArgument, "roundtrip needs a nonempty automaton");
  if (a.size() > kRoundtripStateLimit || rounds > kRoundtripRoundLimit) {
    throw Error(ErrorCode::TooLarge, "roundtrip is limited to 6 states and 4 rounds");
  }
  RoundtripReport report;
  report.rounds = rounds;
  report.seed = seed;
  report.original_states = a.size();
  const auto base = trim(a);
  if (base.is_empty()) {
    report.passed = true;
    report.message = "the automaton trims to the empty shift";
    return report;
  }
  const auto split = random_split_walk(base, rounds, seed);
  report.split_states = split.size();
  const auto fa = total_amalgamation(base);
  const auto fb = total_amalgamation(split);
  report.original_amalgamation_states = fa.size();
  report.split_amalgamation_states = fb.size();
  if (fa.size() != fb.size()) {
    report.message = "total amalgamations differ in size";
    return report;
  }
  report.passed = brute_isomorphic(fa, fb).has_value();
  report.message = report.passed ? "total amalgamations are isomorphic"
                                 : "total amalgamations are not isomorphic";
  return report;
}

}  // namespace homshift
