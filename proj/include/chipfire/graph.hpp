#pragma once

#include "chipfire/error.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chipfire {

using Chips = std::int64_t;

struct EdgeSpec {
  std::string u;
  std::string v;
  Chips multiplicity = 1;
};

struct Neighbor {
  std::size_t vertex;
  Chips multiplicity;
};

/// One unordered vertex pair with its multiplicity; `u < v` by vertex index.
struct EdgeGroup {
  std::size_t u;
  std::size_t v;
  Chips multiplicity;
};

/// Subset of the vertices of a host graph, stored as a membership mask.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : mask_(universe, false) {}
  VertexSet(std::size_t universe, std::initializer_list<std::size_t> members) : mask_(universe, false) {
    for (auto m : members) insert(m);
  }

  static VertexSet all(std::size_t universe) {
    VertexSet s(universe);
    std::fill(s.mask_.begin(), s.mask_.end(), true);
    return s;
  }

  std::size_t universe() const { return mask_.size(); }
  bool contains(std::size_t v) const { return v < mask_.size() && mask_[v]; }
  void insert(std::size_t v) { mask_.at(v) = true; }
  void erase(std::size_t v) { mask_.at(v) = false; }

  std::size_t size() const { return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true)); }
  bool empty() const { return size() == 0; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i]) out.push_back(i);
    return out;
  }

  VertexSet complement() const {
    VertexSet c(mask_.size());
    for (std::size_t i = 0; i < mask_.size(); ++i) c.mask_[i] = !mask_[i];
    return c;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<bool> mask_;
};

using IntMatrix = std::vector<std::vector<Chips>>;

/// Connected loopless multigraph. Multiplicities are stored per vertex pair and
/// never expanded into parallel edge objects. Vertex order is fixed at
/// construction and indexes every divisor and firing script on the graph.
class MultiGraph {
 public:
  /// Vertices listed explicitly come first, then any vertex first seen in
  /// `edges`. Repeated pairs have their multiplicities summed.
  static MultiGraph build(const std::vector<std::string>& vertices, const std::vector<EdgeSpec>& edges) {
    MultiGraph g;
    auto intern = [&g](const std::string& name) {
      auto it = g.index_.find(name);
      if (it != g.index_.end()) return it->second;
      std::size_t id = g.names_.size();
      g.names_.push_back(name);
      g.index_.emplace(name, id);
      return id;
    };
    for (const auto& v : vertices) intern(v);

    std::map<std::pair<std::size_t, std::size_t>, Chips> mult;
    std::vector<std::pair<std::size_t, std::size_t>> first_seen;
    for (const auto& e : edges) {
      if (e.u == e.v) throw Error(ErrorKind::SelfLoop, "edge " + e.u + " -- " + e.v);
      if (e.multiplicity <= 0)
        throw Error(ErrorKind::BadMultiplicity, "edge " + e.u + " -- " + e.v + " has multiplicity " +
                                                    std::to_string(e.multiplicity));
      std::size_t a = intern(e.u);
      std::size_t b = intern(e.v);
      auto key = std::minmax(a, b);
      auto [it, fresh] = mult.try_emplace({key.first, key.second}, 0);
      if (fresh) first_seen.emplace_back(key.first, key.second);
      it->second += e.multiplicity;
    }
    if (g.names_.empty()) throw Error(ErrorKind::Disconnected, "graph has no vertices");

    g.adjacency_.assign(g.names_.size(), {});
    g.valence_.assign(g.names_.size(), 0);
    for (auto [a, b] : first_seen) {
      Chips m = mult.at({a, b});
      g.groups_.push_back({a, b, m});
      g.adjacency_[a].push_back({b, m});
      g.adjacency_[b].push_back({a, m});
      g.valence_[a] += m;
      g.valence_[b] += m;
      g.num_edges_ += m;
    }
    g.labels_.assign(g.names_.size(), std::string{});
    if (!g.connected()) throw Error(ErrorKind::Disconnected, "graph is not connected");
    return g;
  }

  std::size_t num_vertices() const { return names_.size(); }
  /// Total edge count, counting multiplicity.
  Chips num_edges() const { return num_edges_; }
  Chips genus() const { return num_edges_ - static_cast<Chips>(names_.size()) + 1; }

  const std::string& name(std::size_t v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(std::string_view name) const {
    auto v = find(name);
    if (!v) throw Error(ErrorKind::UnknownVertex, std::string(name));
    return *v;
  }

  std::span<const Neighbor> neighbors(std::size_t v) const { return adjacency_.at(v); }
  const std::vector<EdgeGroup>& edge_groups() const { return groups_; }
  Chips valence(std::size_t v) const { return valence_.at(v); }

  Chips multiplicity(std::size_t u, std::size_t v) const {
    for (const auto& n : adjacency_.at(u))
      if (n.vertex == v) return n.multiplicity;
    return 0;
  }

  const std::string& label(std::size_t v) const { return labels_.at(v); }
  void set_label(std::size_t v, std::string tag) { labels_.at(v) = std::move(tag); }

  void check_vertex(std::size_t v) const {
    if (v >= names_.size()) throw Error(ErrorKind::UnknownVertex, "vertex index " + std::to_string(v));
  }

  friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
    if (a.names_ != b.names_ || a.groups_.size() != b.groups_.size()) return false;
    for (const auto& g : a.groups_)
      if (b.multiplicity(g.u, g.v) != g.multiplicity) return false;
    return true;
  }

 private:
  bool connected() const {
    std::vector<bool> seen(names_.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (const auto& n : adjacency_[v])
        if (!seen[n.vertex]) {
          seen[n.vertex] = true;
          ++count;
          stack.push_back(n.vertex);
        }
    }
    return count == names_.size();
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<EdgeGroup> groups_;
  std::vector<Chips> valence_;
  std::vector<std::string> labels_;
  Chips num_edges_ = 0;
};

using GraphPtr = std::shared_ptr<const MultiGraph>;

inline MultiGraph build_graph(const std::vector<EdgeSpec>& edges) { return MultiGraph::build({}, edges); }

inline MultiGraph build_graph(const std::vector<std::string>& vertices, const std::vector<EdgeSpec>& edges) {
  return MultiGraph::build(vertices, edges);
}

inline IntMatrix laplacian(const MultiGraph& g) {
  const auto n = g.num_vertices();
  IntMatrix lap(n, std::vector<Chips>(n, 0));
  for (std::size_t v = 0; v < n; ++v) {
    lap[v][v] = g.valence(v);
    for (const auto& nb : g.neighbors(v)) lap[v][nb.vertex] = -nb.multiplicity;
  }
  return lap;
}

/// Replaces every edge by a path of `k` edges. Original vertices keep their
/// names and order; interior vertices are appended and named
/// `<u>~<v>#<copy>.<step>`.
inline MultiGraph subdivide_uniform(const MultiGraph& g, int k) {
  if (k < 1) throw Error(ErrorKind::BadK, "subdivision factor must be >= 1, got " + std::to_string(k));
  if (k == 1) return g;
  std::vector<EdgeSpec> edges;
  for (const auto& grp : g.edge_groups()) {
    const auto& u = g.name(grp.u);
    const auto& v = g.name(grp.v);
    for (Chips copy = 0; copy < grp.multiplicity; ++copy) {
      std::string prev = u;
      for (int step = 1; step < k; ++step) {
        std::string mid = u + "~" + v + "#" + std::to_string(copy) + "." + std::to_string(step);
        edges.push_back({prev, mid, 1});
        prev = std::move(mid);
      }
      edges.push_back({prev, v, 1});
    }
  }
  auto out = MultiGraph::build(g.names(), edges);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) out.set_label(v, g.label(v));
  return out;
}

struct InducedSubgraph {
  std::vector<std::size_t> vertices;
  std::vector<EdgeGroup> edges;  // indices refer to the host graph
  Chips edge_count = 0;
};

inline InducedSubgraph induced_subgraph(const MultiGraph& g, const VertexSet& s) {
  if (s.universe() != g.num_vertices())
    throw Error(ErrorKind::UnknownVertex, "vertex set does not belong to this graph");
  InducedSubgraph out;
  out.vertices = s.members();
  for (const auto& grp : g.edge_groups())
    if (s.contains(grp.u) && s.contains(grp.v)) {
      out.edges.push_back(grp);
      out.edge_count += grp.multiplicity;
    }
  return out;
}

struct Bipartition {
  bool bipartite = false;
  VertexSet left;
  VertexSet right;
};

inline Bipartition is_bipartite(const MultiGraph& g) {
  const auto n = g.num_vertices();
  std::vector<int> side(n, -1);
  side[0] = 0;
  std::queue<std::size_t> queue;
  queue.push(0);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop();
    for (const auto& nb : g.neighbors(v)) {
      if (side[nb.vertex] == -1) {
        side[nb.vertex] = 1 - side[v];
        queue.push(nb.vertex);
      } else if (side[nb.vertex] == side[v]) {
        return {};
      }
    }
  }
  Bipartition out{true, VertexSet(n), VertexSet(n)};
  for (std::size_t v = 0; v < n; ++v) (side[v] == 0 ? out.left : out.right).insert(v);
  return out;
}

/// Minimum number of edges (with multiplicity) separating `s` from `t`, by
/// Edmonds-Karp max-flow with capacities equal to multiplicities.
inline Chips min_edge_cut(const MultiGraph& g, std::size_t s, std::size_t t) {
  g.check_vertex(s);
  g.check_vertex(t);
  if (s == t) throw Error(ErrorKind::SameVertex, g.name(s));
  const auto n = g.num_vertices();
  std::vector<std::vector<Chips>> residual(n, std::vector<Chips>(n, 0));
  for (const auto& grp : g.edge_groups()) {
    residual[grp.u][grp.v] = grp.multiplicity;
    residual[grp.v][grp.u] = grp.multiplicity;
  }
  Chips flow = 0;
  std::vector<std::size_t> parent(n);
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  for (;;) {
    std::fill(parent.begin(), parent.end(), none);
    parent[s] = s;
    std::queue<std::size_t> queue;
    queue.push(s);
    while (!queue.empty() && parent[t] == none) {
      auto v = queue.front();
      queue.pop();
      for (const auto& nb : g.neighbors(v))
        if (parent[nb.vertex] == none && residual[v][nb.vertex] > 0) {
          parent[nb.vertex] = v;
          queue.push(nb.vertex);
        }
    }
    if (parent[t] == none) return flow;
    Chips push = std::numeric_limits<Chips>::max();
    for (auto v = t; v != s; v = parent[v]) push = std::min(push, residual[parent[v]][v]);
    for (auto v = t; v != s; v = parent[v]) {
      residual[parent[v]][v] -= push;
      residual[v][parent[v]] += push;
    }
    flow += push;
  }
}

struct IndependenceResult {
  int alpha = 0;
  VertexSet witness;
};

namespace detail {

inline void max_independent(const std::vector<std::uint64_t>& adj, std::uint64_t candidates, std::uint64_t chosen,
                            int size, int& best, std::uint64_t& best_set) {
  if (candidates == 0) {
    if (size > best) {
      best = size;
      best_set = chosen;
    }
    return;
  }
  if (size + std::popcount(candidates) <= best) return;
  // Branch on the candidate with most candidate neighbours; a vertex with at
  // most one is always safe to take.
  int pick = -1;
  int pick_deg = -1;
  for (auto rest = candidates; rest; rest &= rest - 1) {
    int v = std::countr_zero(rest);
    int deg = std::popcount(adj[v] & candidates);
    if (deg <= 1) {
      max_independent(adj, candidates & ~adj[v] & ~(std::uint64_t{1} << v), chosen | (std::uint64_t{1} << v),
                      size + 1, best, best_set);
      return;
    }
    if (deg > pick_deg) {
      pick = v;
      pick_deg = deg;
    }
  }
  const std::uint64_t bit = std::uint64_t{1} << pick;
  max_independent(adj, candidates & ~adj[pick] & ~bit, chosen | bit, size + 1, best, best_set);
  max_independent(adj, candidates & ~bit, chosen, size, best, best_set);
}

}  // namespace detail

/// Exact independence number by branch and bound (graphs up to 64 vertices).
inline IndependenceResult independence_number(const MultiGraph& g) {
  const auto n = g.num_vertices();
  if (n > 64) throw Error(ErrorKind::BadParams, "independence_number supports at most 64 vertices");
  std::vector<std::uint64_t> adj(n, 0);
  for (const auto& grp : g.edge_groups()) {
    adj[grp.u] |= std::uint64_t{1} << grp.v;
    adj[grp.v] |= std::uint64_t{1} << grp.u;
  }
  const std::uint64_t everything = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  int best = 0;
  std::uint64_t best_set = 0;
  detail::max_independent(adj, everything, 0, 0, best, best_set);
  IndependenceResult out{best, VertexSet(n)};
  for (std::size_t v = 0; v < n; ++v)
    if (best_set >> v & 1) out.witness.insert(v);
  return out;
}

inline bool is_independent(const MultiGraph& g, const VertexSet& s) {
  for (const auto& grp : g.edge_groups())
    if (s.contains(grp.u) && s.contains(grp.v)) return false;
  return true;
}

}  // namespace chipfire
