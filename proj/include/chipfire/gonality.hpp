#pragma once

#include "chipfire/budget.hpp"
#include "chipfire/dhar.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/rank.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace chipfire {

struct DegreeTrace {
  int degree = 0;
  std::uint64_t candidates = 0;  // q-reduced representatives examined
  std::uint64_t failures = 0;    // candidates with a recorded failing E
  std::uint64_t rank_calls = 0;  // q-reductions spent at this degree
};

struct GonalityResult {
  int r = 0;
  int degree = 0;
  Divisor witness;
  std::vector<DegreeTrace> trace;
};

struct SearchOptions {
  Budget* budget = nullptr;
  /// Stop after this degree instead of running to r*|V|.
  std::optional<int> max_degree;
  /// Receives the per-degree trace when the search ends without a witness.
  std::vector<DegreeTrace>* exhausted_trace = nullptr;
};

namespace detail {

inline bool superstable(const MultiGraph& g, const std::vector<Chips>& config, std::size_t q) {
  auto burnt = burn(g, config, q);
  return std::all_of(burnt.begin(), burnt.end(), [](char b) { return b != 0; });
}

inline void collect_superstables(const MultiGraph& g, std::size_t q, std::size_t v, Chips remaining,
                                 std::vector<Chips>& config, std::vector<std::vector<Chips>>& out) {
  if (v == g.num_vertices()) {
    out.push_back(config);
    return;
  }
  if (v == q) {
    collect_superstables(g, q, v + 1, remaining, config, out);
    return;
  }
  const Chips cap = std::min(remaining, g.valence(v) - 1);
  for (Chips c = 0; c <= cap; ++c) {
    config[v] = c;
    // Superstable configurations are closed downward, so a partial assignment
    // (zeros on the undecided vertices) that fails to burn can be pruned.
    if (c > 0 && !superstable(g, config, q)) break;
    collect_superstables(g, q, v + 1, remaining - c, config, out);
  }
  config[v] = 0;
}

inline bool colex_less(const std::vector<Chips>& a, const std::vector<Chips>& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace detail

/// One representative per divisor class of degree `degree` that has an
/// effective member: the q-reduced divisors, i.e. superstable configurations
/// away from q topped up at q. Sorted colexicographically.
inline std::vector<Divisor> reduced_representatives(const GraphPtr& g, int degree, std::size_t q = 0) {
  std::vector<std::vector<Chips>> configs;
  std::vector<Chips> config(g->num_vertices(), 0);
  if (degree >= 0) detail::collect_superstables(*g, q, 0, degree, config, configs);
  for (auto& c : configs) {
    Chips away = 0;
    for (auto x : c) away += x;
    c[q] = degree - away;
  }
  std::sort(configs.begin(), configs.end(), detail::colex_less);
  std::vector<Divisor> out;
  out.reserve(configs.size());
  for (auto& c : configs) out.emplace_back(g, std::move(c));
  return out;
}

/// Exact r-th divisorial gonality. Degrees r, r+1, ... are searched in turn;
/// the witness is the colex-least q-reduced representative of rank >= r at the
/// optimal degree. With `max_degree` set the search may end without a witness.
inline std::optional<GonalityResult> search_gonality(const GraphPtr& g, int r, const SearchOptions& options = {}) {
  if (r < 1) throw Error(ErrorKind::BadParams, "rank must be positive");
  const int upper = r * static_cast<int>(g->num_vertices());
  const int last = options.max_degree ? std::min(*options.max_degree, upper) : upper;
  GonalityResult result;
  result.r = r;
  Budget unlimited(UINT64_MAX);
  Budget* budget = options.budget ? options.budget : &unlimited;
  for (int k = r; k <= last; ++k) {
    DegreeTrace trace{k, 0, 0, 0};
    const auto before = budget->used();
    std::optional<Divisor> found;
    for (auto& candidate : reduced_representatives(g, k)) {
      ++trace.candidates;
      auto check = rank_at_least(candidate, r, budget);
      if (check.holds) {
        found = std::move(candidate);
        break;
      }
      ++trace.failures;
    }
    trace.rank_calls = budget->used() - before;
    result.trace.push_back(trace);
    if (found) {
      result.degree = k;
      result.witness = std::move(*found);
      return result;
    }
  }
  if (last < upper) {
    if (options.exhausted_trace) *options.exhausted_trace = std::move(result.trace);
    return std::nullopt;
  }
  throw std::logic_error("no divisor of degree r*|V| reached rank r");
}

inline GonalityResult dgon(const GraphPtr& g, int r, Budget* budget = nullptr) {
  return *search_gonality(g, r, {budget, std::nullopt, nullptr});
}

/// Accepts any rank-r witness without running the full search.
inline bool dgon_upper_witness(const Divisor& d, int r, Budget* budget = nullptr) {
  if (!d.is_effective()) throw Error(ErrorKind::NotEffectiveTarget, "witness must be effective");
  return rank_at_least(d, r, budget).holds;
}

/// Minimum of dgon_r over the uniform subdivisions sigma_1 .. sigma_kmax. This
/// is an upper bound only: larger k and non-uniform subdivisions are never
/// searched.
struct SubdivisionBound {
  int degree = 0;
  int best_k = 1;
};

inline SubdivisionBound sdgon_upper(const GraphPtr& g, int r, int k_max, Budget* budget = nullptr) {
  if (k_max < 1) throw Error(ErrorKind::BadK, "k_max must be >= 1");
  SubdivisionBound best{dgon(g, r, budget).degree, 1};
  for (int k = 2; k <= k_max; ++k) {
    auto sub = std::make_shared<const MultiGraph>(subdivide_uniform(*g, k));
    // Only a strictly smaller degree can improve the bound.
    auto res = search_gonality(sub, r, {budget, best.degree - 1, nullptr});
    if (res) best = {res->degree, k};
  }
  return best;
}

/// Upper bound on dgon_r of the unit-length metric graph, via
/// min over k <= k_max of dgon_r(sigma_k(G)). Exact whenever that minimum is
/// attained at some k <= k_max.
inline SubdivisionBound metric_dgon_upper(const GraphPtr& g, int r, int k_max, Budget* budget = nullptr) {
  return sdgon_upper(g, r, k_max, budget);
}

struct SandwichReport {
  int dgon = 0;
  SubdivisionBound stable_upper;
  SubdivisionBound metric_upper;
  bool consistent = false;
  std::vector<std::string> notes;
};

/// Computes dgon_r(G) and both subdivision bounds and checks the relations
/// that must hold among computed values: metric bound <= dgon_r(G), stable and
/// metric surrogates agree, and k = 1 reproduces dgon_r(G).
inline SandwichReport sandwich_check(const GraphPtr& g, int r, int k_max, Budget* budget = nullptr) {
  SandwichReport rep;
  rep.dgon = dgon(g, r, budget).degree;
  rep.stable_upper = sdgon_upper(g, r, k_max, budget);
  rep.metric_upper = metric_dgon_upper(g, r, k_max, budget);
  rep.consistent = true;
  if (rep.metric_upper.degree > rep.dgon) {
    rep.consistent = false;
    rep.notes.push_back("metric upper bound exceeds dgon_r(G)");
  }
  if (rep.stable_upper.degree != rep.metric_upper.degree || rep.stable_upper.best_k != rep.metric_upper.best_k) {
    rep.consistent = false;
    rep.notes.push_back("stable and metric surrogates disagree");
  }
  if (rep.metric_upper.best_k == 1 && rep.metric_upper.degree != rep.dgon) {
    rep.consistent = false;
    rep.notes.push_back("k = 1 surrogate differs from dgon_r(G)");
  }
  return rep;
}

}  // namespace chipfire
