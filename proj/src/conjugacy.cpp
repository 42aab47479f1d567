#include "homshift/conjugacy.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <tuple>

#include "homshift/amalgamation.hpp"
#include "homshift/errors.hpp"

namespace homshift {

namespace {

using Color = std::uint32_t;
using Signature = std::vector<std::uint64_t>;

// Colors both automata with one shared palette so that equal colors mean
// equal refined fingerprints across A and B.
class JointRefinement {
 public:
  JointRefinement(const EdgeTreeAutomaton& a, const EdgeTreeAutomaton& b) : autos_{&a, &b} {
    std::map<Signature, Color> palette;
    for (int side = 0; side < 2; ++side) {
      const auto& x = *autos_[side];
      std::vector<Signature> sig(x.size());
      for (StateId p = 0; p < x.size(); ++p) {
        std::vector<std::uint64_t> counts;
        for (const auto& [t, c] : x.row(p)) counts.push_back(c);
        std::sort(counts.begin(), counts.end());
        sig[p].push_back(counts.size());
        sig[p].insert(sig[p].end(), counts.begin(), counts.end());
        sig[p].push_back(x.out_mass(p));
      }
      // Per-position in-mass.
      std::vector<std::vector<std::uint64_t>> in_mass(x.size(),
                                                      std::vector<std::uint64_t>(x.arity(), 0));
      for (StateId p = 0; p < x.size(); ++p) {
        for (const auto& [t, c] : x.row(p)) {
          for (std::size_t l = 0; l < t.size(); ++l) in_mass[t[l]][l] += c;
        }
      }
      for (StateId p = 0; p < x.size(); ++p) {
        sig[p].insert(sig[p].end(), in_mass[p].begin(), in_mass[p].end());
      }
      colors_[side] = assign(palette, sig);
    }
    distinct_ = palette.size();
    refine();
  }

  const std::vector<Color>& colors(int side) const { return colors_[side]; }

 private:
  static std::vector<Color> assign(std::map<Signature, Color>& palette,
                                   std::vector<Signature>& sig) {
    std::vector<Color> out(sig.size());
    for (std::size_t i = 0; i < sig.size(); ++i) {
      auto it = palette.emplace(std::move(sig[i]), static_cast<Color>(palette.size())).first;
      out[i] = it->second;
    }
    return out;
  }

  void refine() {
    while (true) {
      std::map<Signature, Color> palette;
      std::array<std::vector<Color>, 2> next;
      for (int side = 0; side < 2; ++side) {
        const auto& x = *autos_[side];
        const auto& col = colors_[side];
        std::vector<std::vector<Signature>> out_parts(x.size()), in_parts(x.size());
        for (StateId p = 0; p < x.size(); ++p) {
          for (const auto& [t, c] : x.row(p)) {
            Signature out{c};
            for (StateId q : t) out.push_back(col[q]);
            out_parts[p].push_back(std::move(out));
            for (std::size_t l = 0; l < t.size(); ++l) {
              Signature in{l, c, col[p]};
              for (std::size_t i = 0; i < t.size(); ++i) {
                if (i != l) in.push_back(col[t[i]]);
              }
              in_parts[t[l]].push_back(std::move(in));
            }
          }
        }
        std::vector<Signature> sig(x.size());
        for (StateId p = 0; p < x.size(); ++p) {
          auto& s = sig[p];
          s.push_back(col[p]);
          std::sort(out_parts[p].begin(), out_parts[p].end());
          std::sort(in_parts[p].begin(), in_parts[p].end());
          for (const auto* parts : {&out_parts[p], &in_parts[p]}) {
            s.push_back(parts->size());
            for (const auto& part : *parts) {
              s.push_back(part.size());
              s.insert(s.end(), part.begin(), part.end());
            }
          }
        }
        next[side] = assign(palette, sig);
      }
      colors_ = std::move(next);
      if (palette.size() == distinct_) return;
      distinct_ = palette.size();
    }
  }

  std::array<const EdgeTreeAutomaton*, 2> autos_;
  std::array<std::vector<Color>, 2> colors_;
  std::size_t distinct_ = 0;
};

// Entries (parent, tuple) in which each state participates.
std::vector<std::vector<std::pair<StateId, const Tuple*>>> incidence(
    const EdgeTreeAutomaton& x) {
  std::vector<std::vector<std::pair<StateId, const Tuple*>>> inc(x.size());
  for (StateId p = 0; p < x.size(); ++p) {
    for (const auto& [t, c] : x.row(p)) {
      inc[p].emplace_back(p, &t);
      for (StateId q : t) {
        if (q != p) inc[q].emplace_back(p, &t);
      }
    }
  }
  return inc;
}

class IsomorphismSearch {
 public:
  IsomorphismSearch(const EdgeTreeAutomaton& a, const EdgeTreeAutomaton& b,
                    const std::vector<Color>& color_a, const std::vector<Color>& color_b,
                    std::uint64_t budget)
      : a_(a), b_(b), color_a_(color_a), color_b_(color_b), budget_(budget),
        inc_a_(incidence(a)), inc_b_(incidence(b)),
        forward_(a.size(), kUnmapped), backward_(b.size(), kUnmapped) {
    std::map<Color, std::size_t> class_size;
    for (Color c : color_a_) ++class_size[c];
    order_.resize(a.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](StateId x, StateId y) {
      auto kx = std::make_tuple(class_size[color_a_[x]], color_a_[x], x);
      auto ky = std::make_tuple(class_size[color_a_[y]], color_a_[y], y);
      return kx < ky;
    });
    candidates_.resize(a.size());
    for (StateId p = 0; p < a.size(); ++p) {
      for (StateId q = 0; q < b.size(); ++q) {
        if (color_a_[p] == color_b_[q]) candidates_[p].push_back(q);
      }
    }
  }

  std::optional<Isomorphism> run() {
    if (!extend(0)) return std::nullopt;
    return Isomorphism{forward_};
  }

 private:
  static constexpr StateId kUnmapped = static_cast<StateId>(-1);

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const StateId p = order_[depth];
    for (StateId q : candidates_[p]) {
      if (backward_[q] != kUnmapped) continue;
      if (++nodes_ > budget_) {
        throw Error(ErrorCode::BudgetExceeded,
                    "isomorphism search exceeded " + std::to_string(budget_) + " nodes");
      }
      forward_[p] = q;
      backward_[q] = p;
      if (consistent(p, q) && extend(depth + 1)) return true;
      forward_[p] = kUnmapped;
      backward_[q] = kUnmapped;
    }
    return false;
  }

  // Checks every entry touching p (resp. q) whose participants are all mapped.
  bool consistent(StateId p, StateId q) const {
    for (const auto& [parent, tuple] : inc_a_[p]) {
      Tuple image(tuple->size());
      bool mapped = forward_[parent] != kUnmapped;
      for (std::size_t l = 0; mapped && l < tuple->size(); ++l) {
        image[l] = forward_[(*tuple)[l]];
        mapped = image[l] != kUnmapped;
      }
      if (mapped && b_.multiplicity(forward_[parent], image) != a_.multiplicity(parent, *tuple)) {
        return false;
      }
    }
    for (const auto& [parent, tuple] : inc_b_[q]) {
      Tuple image(tuple->size());
      bool mapped = backward_[parent] != kUnmapped;
      for (std::size_t l = 0; mapped && l < tuple->size(); ++l) {
        image[l] = backward_[(*tuple)[l]];
        mapped = image[l] != kUnmapped;
      }
      if (mapped && a_.multiplicity(backward_[parent], image) != b_.multiplicity(parent, *tuple)) {
        return false;
      }
    }
    return true;
  }

  const EdgeTreeAutomaton& a_;
  const EdgeTreeAutomaton& b_;
  const std::vector<Color>& color_a_;
  const std::vector<Color>& color_b_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<std::pair<StateId, const Tuple*>>> inc_a_, inc_b_;
  std::vector<StateId> forward_, backward_;
  std::vector<StateId> order_;
  std::vector<std::vector<StateId>> candidates_;
};

}  // namespace

std::optional<Isomorphism> automaton_isomorphic(const EdgeTreeAutomaton& a,
                                                const EdgeTreeAutomaton& b,
                                                std::uint64_t node_budget) {
  if (a.arity() != b.arity()) {
    throw Error(ErrorCode::InvalidArgument, "cannot compare automata of different arity");
  }
  if (a.size() != b.size() || a.entry_count() != b.entry_count()) return std::nullopt;
  if (a.is_empty()) return Isomorphism{};

  JointRefinement refinement(a, b);
  auto histogram = [](std::vector<Color> c) {
    std::sort(c.begin(), c.end());
    return c;
  };
  if (histogram(refinement.colors(0)) != histogram(refinement.colors(1))) {
    return std::nullopt;
  }
  IsomorphismSearch search(a, b, refinement.colors(0), refinement.colors(1), node_budget);
  auto iso = search.run();
  if (iso && !is_isomorphism(a, b, *iso)) {
    throw Error(ErrorCode::InvalidArgument, "internal error: isomorphism check failed");
  }
  return iso;
}

std::optional<Isomorphism> graph_isomorphic(const UndirectedGraph& g,
                                            const UndirectedGraph& h,
                                            std::uint64_t node_budget) {
  return automaton_isomorphic(adjacency_automaton(underlying_directed(g)),
                              adjacency_automaton(underlying_directed(h)), node_budget);
}

std::optional<Isomorphism> graph_isomorphic(const DirectedGraph& g, const DirectedGraph& h,
                                            std::uint64_t node_budget) {
  return automaton_isomorphic(adjacency_automaton(g), adjacency_automaton(h), node_budget);
}

ConjugacyDecision decide_conjugacy(const EdgeTreeAutomaton& a, const EdgeTreeAutomaton& b,
                                   std::uint64_t node_budget) {
  if (a.arity() != b.arity()) {
    throw Error(ErrorCode::InvalidArgument, "cannot compare shifts of different arity");
  }
  auto ta = trim(a);
  auto tb = trim(b);
  ConjugacyDecision out{false,
                        ta.size() != a.size(),
                        tb.size() != b.size(),
                        total_amalgamation(ta),
                        total_amalgamation(tb),
                        std::nullopt};
  if (ta.is_empty() || tb.is_empty()) {
    out.conjugate = ta.is_empty() && tb.is_empty();
    if (out.conjugate) out.isomorphism = Isomorphism{};
    return out;
  }
  out.isomorphism = automaton_isomorphic(out.amalgamation_a, out.amalgamation_b, node_budget);
  out.conjugate = out.isomorphism.has_value();
  return out;
}

}  // namespace homshift
