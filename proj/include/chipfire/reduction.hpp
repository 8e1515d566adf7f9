#pragma once

#include "chipfire/budget.hpp"
#include "chipfire/dhar.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/rank.hpp"
#include "chipfire/stopping.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace chipfire {

enum class RoleKind { Apex, Base, Prime, Tower, EdgeEnd };

/// What a gadget vertex stands for. `vertex` is a base-graph vertex (for
/// EdgeEnd: the endpoint the copy hangs off); `edge` indexes the expanded base
/// edge list.
struct Role {
  RoleKind kind = RoleKind::Apex;
  std::size_t vertex = 0;
  std::size_t edge = 0;
};

inline std::string role_tag(RoleKind kind) {
  switch (kind) {
    case RoleKind::Apex: return "T";
    case RoleKind::Base: return "base";
    case RoleKind::Prime: return "prime";
    case RoleKind::Tower: return "tv";
    case RoleKind::EdgeEnd: return "ev";
  }
  return "?";
}

/// One base edge; parallel copies of a multi-edge are listed separately.
struct BaseEdge {
  std::size_t a;
  std::size_t b;
};

inline std::vector<BaseEdge> expanded_edges(const MultiGraph& g) {
  std::vector<BaseEdge> out;
  for (const auto& grp : g.edge_groups())
    for (Chips c = 0; c < grp.multiplicity; ++c) out.push_back({grp.u, grp.v});
  return out;
}

/// The gadget G'_r built from a base graph G, with the role of every gadget
/// vertex and direct index maps.
struct ReductionInstance {
  GraphPtr base;
  int r = 1;
  GraphPtr gadget;
  Chips M = 0;
  std::vector<Role> roles;
  std::vector<BaseEdge> base_edges;

  std::size_t apex = 0;
  std::vector<std::size_t> base_vertex;  // v
  std::vector<std::size_t> prime;        // v'
  std::vector<std::size_t> tower;        // T_v
  std::vector<std::size_t> end_a;        // e-copy at base_edges[i].a
  std::vector<std::size_t> end_b;        // e-copy at base_edges[i].b

  std::size_t edge_end(std::size_t edge, std::size_t endpoint) const {
    return base_edges.at(edge).a == endpoint ? end_a.at(edge) : end_b.at(edge);
  }
};

inline Chips reduction_multiplicity(const MultiGraph& g, int r) {
  return static_cast<Chips>(r) * (3 * static_cast<Chips>(g.num_vertices()) + 2 * g.num_edges() + 1) + 1;
}

inline ReductionInstance build_reduction(const GraphPtr& base, int r) {
  if (r < 1) throw Error(ErrorKind::BadParams, "rank must be positive");
  const auto& g = *base;
  ReductionInstance inst;
  inst.base = base;
  inst.r = r;
  inst.M = reduction_multiplicity(g, r);
  inst.base_edges = expanded_edges(g);

  std::vector<std::string> names{"T"};
  std::vector<Role> roles{{RoleKind::Apex, 0, 0}};
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const auto& x = g.name(v);
    names.push_back("v:" + x);
    roles.push_back({RoleKind::Base, v, 0});
    names.push_back("p:" + x);
    roles.push_back({RoleKind::Prime, v, 0});
    names.push_back("tv:" + x);
    roles.push_back({RoleKind::Tower, v, 0});
  }
  for (std::size_t i = 0; i < inst.base_edges.size(); ++i) {
    const auto& e = inst.base_edges[i];
    names.push_back("ev:" + std::to_string(i) + ":" + g.name(e.a));
    roles.push_back({RoleKind::EdgeEnd, e.a, i});
    names.push_back("ev:" + std::to_string(i) + ":" + g.name(e.b));
    roles.push_back({RoleKind::EdgeEnd, e.b, i});
  }

  const Chips m = inst.M;
  std::vector<EdgeSpec> edges;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const auto& x = g.name(v);
    edges.push_back({"T", "tv:" + x, m});
    edges.push_back({"v:" + x, "p:" + x, m});
    edges.push_back({"p:" + x, "tv:" + x, r + 2});
  }
  for (std::size_t i = 0; i < inst.base_edges.size(); ++i) {
    const auto& e = inst.base_edges[i];
    const auto ea = "ev:" + std::to_string(i) + ":" + g.name(e.a);
    const auto eb = "ev:" + std::to_string(i) + ":" + g.name(e.b);
    edges.push_back({"v:" + g.name(e.a), ea, m});
    edges.push_back({"v:" + g.name(e.b), eb, m});
    edges.push_back({ea, eb, r});
  }
  auto gadget = MultiGraph::build(names, edges);
  for (std::size_t i = 0; i < roles.size(); ++i) gadget.set_label(i, role_tag(roles[i].kind));
  inst.gadget = std::make_shared<const MultiGraph>(std::move(gadget));
  inst.roles = std::move(roles);

  const auto n = g.num_vertices();
  inst.base_vertex.resize(n);
  inst.prime.resize(n);
  inst.tower.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    inst.base_vertex[v] = 1 + 3 * v;
    inst.prime[v] = 2 + 3 * v;
    inst.tower[v] = 3 + 3 * v;
  }
  for (std::size_t i = 0; i < inst.base_edges.size(); ++i) {
    inst.end_a.push_back(1 + 3 * n + 2 * i);
    inst.end_b.push_back(2 + 3 * n + 2 * i);
  }
  return inst;
}

/// r + (3r+1)|V| + (2r-1)|E| - alpha.
inline Chips formula_gonality(const MultiGraph& g, int r, int alpha) {
  const Chips rr = r;
  return rr + (3 * rr + 1) * static_cast<Chips>(g.num_vertices()) + (2 * rr - 1) * g.num_edges() - alpha;
}

/// An independent set S with V \ S numbered in construction order and every
/// base edge oriented: out of S, and from lower to higher number inside V \ S.
struct OrientedIndependentData {
  VertexSet independent;
  std::vector<std::size_t> ordering;
  std::vector<BaseEdge> orientation;  // {tail, head}, one per expanded base edge
};

inline OrientedIndependentData orient_independent_set(const MultiGraph& g, const VertexSet& s) {
  if (s.universe() != g.num_vertices()) throw Error(ErrorKind::UnknownVertex, "set is not over the base graph");
  if (!is_independent(g, s)) throw Error(ErrorKind::NotIndependent, "set is not independent");
  OrientedIndependentData data{s, {}, {}};
  std::vector<std::size_t> position(g.num_vertices(), 0);
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (!s.contains(v)) {
      position[v] = data.ordering.size();
      data.ordering.push_back(v);
    }
  for (const auto& e : expanded_edges(g)) {
    if (s.contains(e.a))
      data.orientation.push_back({e.a, e.b});
    else if (s.contains(e.b))
      data.orientation.push_back({e.b, e.a});
    else if (position[e.a] < position[e.b])
      data.orientation.push_back({e.a, e.b});
    else
      data.orientation.push_back({e.b, e.a});
  }
  return data;
}

namespace detail {

inline void check_oriented(const ReductionInstance& inst, const OrientedIndependentData& data) {
  const auto& g = *inst.base;
  if (data.independent.universe() != g.num_vertices() || !is_independent(g, data.independent))
    throw Error(ErrorKind::NotIndependent, "set is not independent in the base graph");
  if (data.orientation.size() != inst.base_edges.size())
    throw Error(ErrorKind::IncompleteOrientation, "every base edge needs an orientation");
  std::vector<std::size_t> position(g.num_vertices(), g.num_vertices());
  for (std::size_t i = 0; i < data.ordering.size(); ++i) position.at(data.ordering[i]) = i;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (!data.independent.contains(v) && position[v] == g.num_vertices())
      throw Error(ErrorKind::IncompleteOrientation, "vertex " + g.name(v) + " outside S is not numbered");
  for (std::size_t i = 0; i < inst.base_edges.size(); ++i) {
    const auto& e = inst.base_edges[i];
    const auto& o = data.orientation[i];
    bool same = (o.a == e.a && o.b == e.b) || (o.a == e.b && o.b == e.a);
    if (!same) throw Error(ErrorKind::IncompleteOrientation, "orientation does not match edge " + std::to_string(i));
    bool tail_in_s = data.independent.contains(o.a);
    bool head_in_s = data.independent.contains(o.b);
    if (head_in_s || (!tail_in_s && position[o.a] > position[o.b]))
      throw Error(ErrorKind::IncompleteOrientation, "edge " + std::to_string(i) + " is oriented against the numbering");
  }
}

}  // namespace detail

/// The rank-r divisor on G'_r attached to an oriented independent set:
/// r on T and on every base vertex; r on T_v and v' for v in S; 2r+1 on T_v
/// and 0 on v' otherwise; for an edge leaving S, 2r-1 on the tail copy and 0
/// on the head copy; for an edge inside V \ S, r on the tail copy and r-1 on
/// the head copy.
inline Divisor witness_divisor(const ReductionInstance& inst, const OrientedIndependentData& data) {
  detail::check_oriented(inst, data);
  const Chips r = inst.r;
  Divisor d(inst.gadget);
  d[inst.apex] = r;
  for (std::size_t v = 0; v < inst.base->num_vertices(); ++v) {
    d[inst.base_vertex[v]] = r;
    if (data.independent.contains(v)) {
      d[inst.tower[v]] = r;
      d[inst.prime[v]] = r;
    } else {
      d[inst.tower[v]] = 2 * r + 1;
      d[inst.prime[v]] = 0;
    }
  }
  for (std::size_t i = 0; i < inst.base_edges.size(); ++i) {
    const auto tail = data.orientation[i].a;
    const auto head = data.orientation[i].b;
    if (data.independent.contains(tail)) {
      d[inst.edge_end(i, tail)] = 2 * r - 1;
      d[inst.edge_end(i, head)] = 0;
    } else {
      d[inst.edge_end(i, tail)] = r;
      d[inst.edge_end(i, head)] = r - 1;
    }
  }
  return d;
}

/// The single firing set that clears the debt of witness - E. Debt on the head
/// copy of an edge inside V \ S is cleared by firing the complement of W_i
/// (V_i = {v_i, ..., v_k} with their primes and edge copies); any other debt
/// pattern is cleared by firing U = {T} + all T_v + S + primes of S + edge
/// copies hanging off S.
inline VertexSet structured_debt_play(const ReductionInstance& inst, const OrientedIndependentData& data,
                                      const Divisor& d_minus_e) {
  detail::check_oriented(inst, data);
  const auto& g = *inst.base;
  const auto n = inst.gadget->num_vertices();
  const auto& s = data.independent;

  std::vector<std::size_t> debt;
  for (std::size_t w = 0; w < n; ++w)
    if (d_minus_e[w] < 0) debt.push_back(w);
  if (debt.empty()) throw Error(ErrorKind::UnexpectedDebtPattern, "divisor has no debt");

  auto unexpected = [&](std::size_t w) {
    return Error(ErrorKind::UnexpectedDebtPattern, "debt on " + inst.gadget->name(w));
  };

  VertexSet fire(n);
  std::optional<std::size_t> inner_head;
  for (auto w : debt) {
    const auto& role = inst.roles[w];
    if (role.kind != RoleKind::EdgeEnd) continue;
    const auto& o = data.orientation[role.edge];
    if (s.contains(o.a)) continue;
    if (role.vertex != o.b || debt.size() != 1) throw unexpected(w);
    inner_head = role.vertex;
  }

  if (inner_head) {
    const auto pos = static_cast<std::size_t>(
        std::find(data.ordering.begin(), data.ordering.end(), *inner_head) - data.ordering.begin());
    VertexSet w_i(n);
    for (std::size_t j = pos; j < data.ordering.size(); ++j) {
      const auto v = data.ordering[j];
      w_i.insert(inst.base_vertex[v]);
      w_i.insert(inst.prime[v]);
      for (std::size_t e = 0; e < inst.base_edges.size(); ++e)
        if (inst.base_edges[e].a == v || inst.base_edges[e].b == v) w_i.insert(inst.edge_end(e, v));
    }
    fire = w_i.complement();
  } else {
    for (auto w : debt) {
      const auto& role = inst.roles[w];
      bool allowed = false;
      if (role.kind == RoleKind::Prime) allowed = !s.contains(role.vertex);
      if (role.kind == RoleKind::EdgeEnd) allowed = data.orientation[role.edge].b == role.vertex;
      if (!allowed) throw unexpected(w);
    }
    fire.insert(inst.apex);
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      fire.insert(inst.tower[v]);
      if (s.contains(v)) {
        fire.insert(inst.base_vertex[v]);
        fire.insert(inst.prime[v]);
      }
    }
    for (std::size_t e = 0; e < inst.base_edges.size(); ++e) {
      const auto& be = inst.base_edges[e];
      if (s.contains(be.a)) fire.insert(inst.end_a[e]);
      if (s.contains(be.b)) fire.insert(inst.end_b[e]);
    }
  }

  if (!fire_set(d_minus_e, fire).is_effective())
    throw Error(ErrorKind::UnexpectedDebtPattern, "prescribed firing set leaves debt");
  return fire;
}

struct WitnessVerification {
  bool ok = false;
  std::optional<Divisor> failing;  // colex-first E the structured plays cannot handle
  std::uint64_t examined = 0;
  std::uint64_t structured_plays = 0;
};

/// Runs every effective E of degree r (colex order) against `d`: either d - E
/// is effective or the structured play clears its debt in one firing. With
/// `cross_check` each debt case is also confirmed by q-reduction, and a
/// passing run is confirmed by rank_at_least.
inline WitnessVerification verify_witness(const ReductionInstance& inst, const OrientedIndependentData& data,
                                          const Divisor& d, bool cross_check = true, Budget* budget = nullptr) {
  WitnessVerification out;
  const auto n = inst.gadget->num_vertices();
  for (EffectiveDivisorCursor e(n, inst.r); !e.done(); e.advance()) {
    ++out.examined;
    Divisor rest = d - Divisor(inst.gadget, e.counts());
    if (rest.is_effective()) continue;
    try {
      structured_debt_play(inst, data, rest);
      ++out.structured_plays;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::UnexpectedDebtPattern) throw;
      out.failing = Divisor(inst.gadget, e.counts());
      return out;
    }
    if (cross_check && !effective_in_class(rest, budget))
      throw std::logic_error("structured play succeeded on an unwinnable divisor");
  }
  if (cross_check && !rank_at_least(d, inst.r, budget).holds)
    throw std::logic_error("structured plays disagree with rank_at_least");
  out.ok = true;
  return out;
}

inline WitnessVerification verify_witness(const ReductionInstance& inst, const OrientedIndependentData& data) {
  return verify_witness(inst, data, witness_divisor(inst, data));
}

/// U_0 = {v : T ~_D v}, then one endpoint (the later one in vertex order) of
/// every edge still inside the set is dropped.
inline VertexSet extract_independent_set(const ReductionInstance& inst, const Divisor& d, Budget* budget = nullptr) {
  const auto& g = *inst.base;
  VertexSet out(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (vertices_equivalent_under(d, inst.apex, inst.base_vertex[v], budget)) out.insert(v);
  for (const auto& e : inst.base_edges)
    if (out.contains(e.a) && out.contains(e.b)) out.erase(std::max(e.a, e.b));
  return out;
}

using Rational = boost::rational<long long>;

/// (1 - (25r - 3) eps) * alpha, exactly.
inline Rational apx_guarantee(int r, const Rational& eps, long long alpha) {
  if (eps < 0) throw Error(ErrorKind::BadParams, "epsilon must be nonnegative");
  return (Rational(1) - Rational(25LL * r - 3) * eps) * Rational(alpha);
}

}  // namespace chipfire
