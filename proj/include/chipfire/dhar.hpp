#pragma once

#include "chipfire/budget.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/graph.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace chipfire {

/// Dhar's burning process started at `q`. A vertex catches fire once the
/// multiplicity of its burnt incident edges exceeds its chip count. Returns the
/// burnt mask; the unburnt vertices form the largest set avoiding `q` that can
/// fire without going into debt.
inline std::vector<char> burn(const MultiGraph& g, const std::vector<Chips>& chips, std::size_t q) {
  const auto n = g.num_vertices();
  std::vector<char> burnt(n, 0);
  std::vector<Chips> heat(n, 0);
  std::vector<std::size_t> stack{q};
  burnt[q] = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (const auto& nb : g.neighbors(v)) {
      if (burnt[nb.vertex]) continue;
      heat[nb.vertex] += nb.multiplicity;
      if (heat[nb.vertex] > chips[nb.vertex]) {
        burnt[nb.vertex] = 1;
        stack.push_back(nb.vertex);
      }
    }
  }
  return burnt;
}

namespace detail {

/// Fires the unburnt set as many times in a row as it stays debt-free.
/// Returns false once everything burns.
inline bool fire_unburnt(const MultiGraph& g, std::vector<Chips>& chips, const std::vector<char>& burnt,
                         std::vector<Chips>* script) {
  const auto n = g.num_vertices();
  std::vector<Chips> out_degree(n, 0);
  bool any = false;
  for (std::size_t v = 0; v < n; ++v) {
    if (burnt[v]) continue;
    any = true;
    for (const auto& nb : g.neighbors(v))
      if (burnt[nb.vertex]) out_degree[v] += nb.multiplicity;
  }
  if (!any) return false;
  Chips times = std::numeric_limits<Chips>::max();
  for (std::size_t v = 0; v < n; ++v)
    if (!burnt[v] && out_degree[v] > 0) times = std::min(times, chips[v] / out_degree[v]);
  for (std::size_t v = 0; v < n; ++v) {
    if (burnt[v]) continue;
    for (const auto& nb : g.neighbors(v))
      if (burnt[nb.vertex]) {
        chips[v] -= times * nb.multiplicity;
        chips[nb.vertex] += times * nb.multiplicity;
      }
    if (script) (*script)[v] += times;
  }
  return true;
}

/// In-place q-reduction. `script`, when given, accumulates sigma with
/// D_out = D_in - L sigma.
inline void q_reduce_in_place(const MultiGraph& g, std::vector<Chips>& chips, std::size_t q,
                              std::vector<Chips>* script) {
  const auto n = g.num_vertices();
  // Vertices in debt other than q borrow together: the complement of the
  // debt set fires once. Repeat until only q may be in debt.
  std::vector<char> debt(n, 0);
  for (;;) {
    bool any = false;
    for (std::size_t v = 0; v < n; ++v) {
      debt[v] = v != q && chips[v] < 0;
      any = any || debt[v];
    }
    if (!any) break;
    for (const auto& grp : g.edge_groups()) {
      if (debt[grp.u] == debt[grp.v]) continue;
      auto src = debt[grp.u] ? grp.v : grp.u;
      auto dst = debt[grp.u] ? grp.u : grp.v;
      chips[src] -= grp.multiplicity;
      chips[dst] += grp.multiplicity;
    }
    if (script)
      for (std::size_t v = 0; v < n; ++v)
        if (!debt[v]) (*script)[v] += 1;
  }
  // Burn from q; fire whatever does not burn.
  while (fire_unburnt(g, chips, burn(g, chips, q), script)) {
  }
}

}  // namespace detail

struct Reduction {
  Divisor divisor;
  FiringScript script;  // divisor = input - L * script
};

/// The unique q-reduced divisor equivalent to `d`, with the script reaching it.
inline Reduction q_reduce_with_script(const Divisor& d, std::size_t q, Budget* budget = nullptr) {
  d.graph().check_vertex(q);
  charge(budget);
  Divisor out = d;
  std::vector<Chips> script(d.size(), 0);
  detail::q_reduce_in_place(d.graph(), out.mutable_coeffs(), q, &script);
  return {std::move(out), FiringScript(std::move(script))};
}

inline Divisor q_reduce(const Divisor& d, std::size_t q, Budget* budget = nullptr) {
  d.graph().check_vertex(q);
  charge(budget);
  Divisor out = d;
  detail::q_reduce_in_place(d.graph(), out.mutable_coeffs(), q, nullptr);
  return out;
}

/// Nonnegative away from q and every vertex burns when the fire starts at q.
inline bool is_q_reduced(const Divisor& d, std::size_t q) {
  for (std::size_t v = 0; v < d.size(); ++v)
    if (v != q && d[v] < 0) return false;
  auto burnt = burn(d.graph(), d.coeffs(), q);
  return std::all_of(burnt.begin(), burnt.end(), [](char b) { return b != 0; });
}

inline bool is_equivalent(const Divisor& a, const Divisor& b, Budget* budget = nullptr) {
  a.check_same_host(b);
  if (a.degree() != b.degree()) return false;
  return q_reduce(a, 0, budget).coeffs() == q_reduce(b, 0, budget).coeffs();
}

/// Whether some effective divisor is equivalent to `d`.
inline bool effective_in_class(const Divisor& d, Budget* budget = nullptr) {
  if (d.degree() < 0) return false;
  if (d.is_effective()) return true;
  return q_reduce(d, 0, budget)[0] >= 0;
}

/// Normalized script sigma with target = source - L sigma.
inline FiringScript script_between(const Divisor& source, const Divisor& target) {
  source.check_same_host(target);
  auto a = q_reduce_with_script(source, 0);
  auto b = q_reduce_with_script(target, 0);
  if (a.divisor.coeffs() != b.divisor.coeffs())
    throw Error(ErrorKind::NotEquivalent, "divisors are not linearly equivalent");
  return (a.script - b.script).normalized();
}

/// Level-set firing sequence from `source` to the effective `target`. Along the
/// sequence no vertex is newly put into debt and no debt grows; both are
/// checked step by step.
inline std::vector<VertexSet> benign_play(const Divisor& source, const Divisor& target) {
  source.check_same_host(target);
  if (!target.is_effective()) throw Error(ErrorKind::NotEffectiveTarget, "target divisor has debt");
  auto levels = level_set_decomposition(script_between(source, target));
  Divisor current = source;
  for (const auto& u : levels) {
    Divisor next = fire_set(current, u);
    for (std::size_t w = 0; w < next.size(); ++w)
      if (next[w] < 0 && !(current[w] < 0 && next[w] >= current[w]))
        throw std::logic_error("benign play increased debt at " + source.graph().name(w));
    current = std::move(next);
  }
  if (current.coeffs() != target.coeffs()) throw std::logic_error("level sets did not reach the target divisor");
  return levels;
}

}  // namespace chipfire
