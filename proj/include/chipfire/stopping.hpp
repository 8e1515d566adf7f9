#pragma once

#include "chipfire/budget.hpp"
#include "chipfire/dhar.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chipfire {

namespace detail {

inline void require_effective(const Divisor& d) {
  if (!d.is_effective()) throw Error(ErrorKind::NotEffectiveTarget, "divisor must be effective");
}

}  // namespace detail

/// Greatest firing script tau with tau >= 0, tau(v) = 0 and D - L tau
/// effective. Debt-free scripts are closed under pointwise max, so the set of
/// such scripts has a top element; burning from v and firing the unburnt set
/// until everything burns climbs to it.
inline FiringScript greatest_script_fixing(const Divisor& d, std::size_t v, Budget* budget = nullptr) {
  detail::require_effective(d);
  d.graph().check_vertex(v);
  charge(budget);
  std::vector<Chips> chips = d.coeffs();
  std::vector<Chips> script(d.size(), 0);
  while (detail::fire_unburnt(d.graph(), chips, burn(d.graph(), chips, v), &script)) {
  }
  return FiringScript(std::move(script));
}

/// The partition of the vertices into classes of u ~_D v (every debt-free
/// script fires u and v equally often).
class StoppingRelation {
 public:
  explicit StoppingRelation(const Divisor& d, Budget* budget = nullptr) : class_of_(d.size()) {
    detail::require_effective(d);
    const auto n = d.size();
    std::vector<FiringScript> top;
    top.reserve(n);
    for (std::size_t v = 0; v < n; ++v) top.push_back(greatest_script_fixing(d, v, budget));
    std::iota(class_of_.begin(), class_of_.end(), std::size_t{0});
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < u; ++v)
        if (class_of_[v] == v && top[v][u] == 0 && top[u][v] == 0) {
          class_of_[u] = v;
          break;
        }
  }

  bool equivalent(std::size_t u, std::size_t v) const { return class_of_.at(u) == class_of_.at(v); }
  std::size_t class_of(std::size_t v) const { return class_of_.at(v); }

 private:
  std::vector<std::size_t> class_of_;
};

/// u ~_D v. Pairs separated only by cuts larger than deg(D) are equivalent
/// outright; otherwise the greatest debt-free scripts fixing u and fixing v
/// decide it.
inline bool vertices_equivalent_under(const Divisor& d, std::size_t u, std::size_t v, Budget* budget = nullptr) {
  detail::require_effective(d);
  d.graph().check_vertex(u);
  d.graph().check_vertex(v);
  if (u == v) return true;
  if (min_edge_cut(d.graph(), u, v) > d.degree()) return true;
  return greatest_script_fixing(d, v, budget)[u] == 0 && greatest_script_fixing(d, u, budget)[v] == 0;
}

struct ClassLimits {
  std::uint64_t max_divisors = 1'000'000;
  std::size_t max_vertices = 20;
};

/// |D| as the closure of D under every debt-free subset firing.
inline std::vector<Divisor> enumerate_effective_class(const Divisor& d, const ClassLimits& limits = {},
                                                      Budget* budget = nullptr) {
  detail::require_effective(d);
  const auto& g = d.graph();
  const auto n = g.num_vertices();
  if (n > limits.max_vertices)
    throw Error(ErrorKind::BudgetExceeded, "class enumeration limited to " + std::to_string(limits.max_vertices) +
                                               " vertices");
  std::set<std::vector<Chips>> seen{d.coeffs()};
  std::vector<std::vector<Chips>> frontier{d.coeffs()};
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::vector<Chips> next(n);
  while (!frontier.empty()) {
    auto cur = std::move(frontier.back());
    frontier.pop_back();
    charge(budget);
    for (std::uint64_t mask = 1; mask + 1 < subsets; ++mask) {
      next = cur;
      for (const auto& grp : g.edge_groups()) {
        bool a = mask >> grp.u & 1;
        bool b = mask >> grp.v & 1;
        if (a == b) continue;
        next[a ? grp.u : grp.v] -= grp.multiplicity;
        next[a ? grp.v : grp.u] += grp.multiplicity;
      }
      if (std::any_of(next.begin(), next.end(), [](Chips c) { return c < 0; })) continue;
      if (seen.insert(next).second) {
        if (seen.size() > limits.max_divisors)
          throw Error(ErrorKind::BudgetExceeded, "effective class exceeds " + std::to_string(limits.max_divisors) +
                                                     " divisors");
        frontier.push_back(next);
      }
    }
  }
  std::vector<Divisor> out;
  out.reserve(seen.size());
  for (const auto& c : seen) out.emplace_back(d.host(), c);
  return out;
}

/// u ~_D v decided by brute force over |D|: not equivalent iff some member of
/// the class can fire a set separating u from v without debt.
inline bool vertices_equivalent_by_closure(const Divisor& d, std::size_t u, std::size_t v,
                                           const ClassLimits& limits = {}) {
  if (u == v) return true;
  const auto& g = d.graph();
  const auto n = g.num_vertices();
  for (const auto& member : enumerate_effective_class(d, limits)) {
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
      if ((mask >> u & 1) == (mask >> v & 1)) continue;
      VertexSet s(n);
      for (std::size_t w = 0; w < n; ++w)
        if (mask >> w & 1) s.insert(w);
      if (fire_set(member, s).is_effective()) return false;
    }
  }
  return true;
}

/// Edge groups whose endpoints are ~_D equivalent.
inline std::vector<EdgeGroup> d_stopping_edges(const Divisor& d, Budget* budget = nullptr) {
  detail::require_effective(d);
  const auto& g = d.graph();
  const Chips deg = d.degree();
  bool all_by_cut = true;
  for (const auto& grp : g.edge_groups())
    if (min_edge_cut(g, grp.u, grp.v) <= deg) {
      all_by_cut = false;
      break;
    }
  if (all_by_cut) return g.edge_groups();
  StoppingRelation rel(d, budget);
  std::vector<EdgeGroup> out;
  for (const auto& grp : g.edge_groups())
    if (rel.equivalent(grp.u, grp.v)) out.push_back(grp);
  return out;
}

/// Components of the graph with every D-stopping edge removed.
inline std::vector<VertexSet> stopping_components(const Divisor& d, Budget* budget = nullptr) {
  const auto& g = d.graph();
  const auto n = g.num_vertices();
  auto stopping = d_stopping_edges(d, budget);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto is_stopping = [&stopping](const EdgeGroup& e) {
    return std::any_of(stopping.begin(), stopping.end(), [&e](const EdgeGroup& s) { return s.u == e.u && s.v == e.v; });
  };
  for (const auto& grp : g.edge_groups())
    if (!is_stopping(grp)) parent[find(grp.u)] = find(grp.v);
  std::vector<VertexSet> comps;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    auto root = find(v);
    if (slot[root] == n) {
      slot[root] = comps.size();
      comps.emplace_back(n);
    }
    comps[slot[root]].insert(v);
  }
  return comps;
}

/// A vertex is a path interior when it has exactly two neighbours, each
/// joined by a single edge.
inline bool is_path_interior(const MultiGraph& g, std::size_t v) {
  auto nbs = g.neighbors(v);
  return nbs.size() == 2 && nbs[0].multiplicity == 1 && nbs[1].multiplicity == 1;
}

/// Maximal chains p_0, ..., p_L whose inner vertices are path interiors. A graph
/// that is a single cycle yields one closed chain starting and ending at vertex 0.
inline std::vector<std::vector<std::size_t>> interior_chains(const MultiGraph& g) {
  const auto n = g.num_vertices();
  std::vector<char> used(n, 0);
  std::vector<std::vector<std::size_t>> chains;
  auto walk = [&](std::size_t start, std::size_t first) {
    std::vector<std::size_t> chain{start};
    std::size_t prev = start;
    std::size_t cur = first;
    while (is_path_interior(g, cur) && cur != start) {
      used[cur] = 1;
      chain.push_back(cur);
      auto nbs = g.neighbors(cur);
      std::size_t nxt = nbs[0].vertex == prev ? nbs[1].vertex : nbs[0].vertex;
      prev = cur;
      cur = nxt;
    }
    chain.push_back(cur);
    return chain;
  };
  bool all_interior = true;
  for (std::size_t v = 0; v < n; ++v) all_interior = all_interior && is_path_interior(g, v);
  if (all_interior) {
    if (n >= 3) chains.push_back(walk(0, g.neighbors(0)[0].vertex));
    return chains;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (is_path_interior(g, v)) continue;
    for (const auto& nb : g.neighbors(v))
      if (is_path_interior(g, nb.vertex) && !used[nb.vertex]) {
        auto chain = walk(v, nb.vertex);
        if (chain.size() >= 3) chains.push_back(std::move(chain));
      }
  }
  return chains;
}

/// Vertex sequence of a path whose interior vertices have valence 2 and whose
/// ends are ~_D equivalent.
using StoppingPath = std::vector<std::size_t>;

inline std::vector<StoppingPath> d_stopping_paths(const Divisor& d, Budget* budget = nullptr) {
  detail::require_effective(d);
  StoppingRelation rel(d, budget);
  std::vector<StoppingPath> out;
  for (const auto& chain : interior_chains(d.graph())) {
    const bool closed = is_path_interior(d.graph(), chain.front());
    const std::size_t len = chain.size() - 1;
    // A closed chain is unrolled twice so every arc appears contiguously.
    std::vector<std::size_t> seq = chain;
    if (closed) seq.insert(seq.end(), chain.begin() + 1, chain.end());
    for (std::size_t a = 0; a < (closed ? len : seq.size()); ++a)
      for (std::size_t b = a + 2; b < seq.size(); ++b) {
        if (closed && b - a >= len) break;
        if (seq[a] == seq[b] || !rel.equivalent(seq[a], seq[b])) continue;
        out.emplace_back(seq.begin() + static_cast<std::ptrdiff_t>(a), seq.begin() + static_cast<std::ptrdiff_t>(b) + 1);
      }
  }
  return out;
}

inline Chips interior_chips(const Divisor& d, const StoppingPath& path) {
  Chips total = 0;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) total += d[path[i]];
  return total;
}

/// Equivalent effective divisor on which every D-stopping path carries at
/// most one chip on its interior. Chips are pushed outward by firing the
/// interior segment spanning the outermost loaded vertices.
inline Divisor clean_stopping_paths(const Divisor& d, Budget* budget = nullptr) {
  detail::require_effective(d);
  auto paths = d_stopping_paths(d, budget);
  std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  const auto n = d.size();
  Divisor cur = d;
  constexpr int kMaxPasses = 10'000;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool changed = false;
    for (const auto& path : paths) {
      while (interior_chips(cur, path) >= 2) {
        std::size_t first = 0;
        std::size_t last = 0;
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
          if (cur[path[i]] > 0) {
            if (first == 0) first = i;
            last = i;
          }
        VertexSet segment(n);
        for (std::size_t i = first; i <= last; ++i) segment.insert(path[i]);
        cur = fire_set(cur, segment);
        changed = true;
      }
    }
    if (!changed) return cur;
  }
  throw std::logic_error("clean_stopping_paths did not settle");
}

}  // namespace chipfire
