#pragma once

#include "chipfire/error.hpp"
#include "chipfire/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

namespace chipfire {

/// Integer chip placement on the vertices of a host graph.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(GraphPtr host) : host_(std::move(host)), coeffs_(host_->num_vertices(), 0) {}
  Divisor(GraphPtr host, std::vector<Chips> coeffs) : host_(std::move(host)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != host_->num_vertices())
      throw Error(ErrorKind::UnknownVertex, "coefficient vector length does not match host graph");
  }

  /// Absent vertices get coefficient 0.
  static Divisor from_map(GraphPtr host, const std::map<std::string, Chips>& coeffs) {
    Divisor d(std::move(host));
    for (const auto& [name, c] : coeffs) d.coeffs_[d.host_->index_of(name)] += c;
    return d;
  }

  const GraphPtr& host() const { return host_; }
  const MultiGraph& graph() const { return *host_; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Chips>& coeffs() const { return coeffs_; }
  std::vector<Chips>& mutable_coeffs() { return coeffs_; }

  Chips operator[](std::size_t v) const { return coeffs_[v]; }
  Chips& operator[](std::size_t v) { return coeffs_[v]; }
  Chips at(std::string_view name) const { return coeffs_[host_->index_of(name)]; }

  Chips degree() const { return std::accumulate(coeffs_.begin(), coeffs_.end(), Chips{0}); }
  bool is_effective() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Chips c) { return c >= 0; });
  }

  /// Sum of coefficients over `s`.
  Chips total_on(const VertexSet& s) const {
    Chips t = 0;
    for (auto v : s.members()) t += coeffs_[v];
    return t;
  }

  Divisor& operator+=(const Divisor& o) {
    check_same_host(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Divisor& operator-=(const Divisor& o) {
    check_same_host(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }

  /// Pointwise equality; comparing divisors on different host objects throws.
  friend bool operator==(const Divisor& a, const Divisor& b) {
    a.check_same_host(b);
    return a.coeffs_ == b.coeffs_;
  }

  void check_same_host(const Divisor& o) const {
    if (host_ != o.host_) throw Error(ErrorKind::HostMismatch, "divisors live on different graphs");
  }

 private:
  GraphPtr host_;
  std::vector<Chips> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const Divisor& d) {
  os << "(";
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? " " : "") << d.graph().name(i) << ":" << d[i];
  return os << ")";
}

/// Divisor with a single vertex carrying `count` chips.
inline Divisor unit_divisor(const GraphPtr& host, std::size_t v, Chips count = 1) {
  Divisor d(host);
  d[v] = count;
  return d;
}

/// K(v) = val(v) - 2.
inline Divisor canonical_divisor(const GraphPtr& host) {
  Divisor k(host);
  for (std::size_t v = 0; v < host->num_vertices(); ++v) k[v] = host->valence(v) - 2;
  return k;
}

/// Per-vertex firing counts.
class FiringScript {
 public:
  FiringScript() = default;
  explicit FiringScript(std::size_t n) : counts_(n, 0) {}
  explicit FiringScript(std::vector<Chips> counts) : counts_(std::move(counts)) {}

  std::size_t size() const { return counts_.size(); }
  Chips operator[](std::size_t v) const { return counts_[v]; }
  Chips& operator[](std::size_t v) { return counts_[v]; }
  const std::vector<Chips>& counts() const { return counts_; }

  /// Shifted so that the minimum entry is 0; the kernel of the Laplacian
  /// is spanned by the all-ones vector, so this is an equivalent script.
  FiringScript normalized() const {
    if (counts_.empty()) return *this;
    auto lo = *std::min_element(counts_.begin(), counts_.end());
    FiringScript out(counts_);
    for (auto& c : out.counts_) c -= lo;
    return out;
  }

  FiringScript& operator-=(const FiringScript& o) {
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] -= o.counts_[i];
    return *this;
  }
  friend FiringScript operator-(FiringScript a, const FiringScript& b) { return a -= b; }
  friend bool operator==(const FiringScript&, const FiringScript&) = default;

 private:
  std::vector<Chips> counts_;
};

/// D - L * 1_U: every vertex of U sends one chip along each edge leaving U.
inline Divisor fire_set(const Divisor& d, const VertexSet& u) {
  const auto& g = d.graph();
  if (u.universe() != g.num_vertices()) throw Error(ErrorKind::UnknownVertex, "firing set is not over the host graph");
  Divisor out = d;
  for (const auto& grp : g.edge_groups()) {
    bool a = u.contains(grp.u);
    bool b = u.contains(grp.v);
    if (a == b) continue;
    auto src = a ? grp.u : grp.v;
    auto dst = a ? grp.v : grp.u;
    out[src] -= grp.multiplicity;
    out[dst] += grp.multiplicity;
  }
  return out;
}

/// D - L * sigma.
inline Divisor apply_script(const Divisor& d, const FiringScript& sigma) {
  const auto& g = d.graph();
  if (sigma.size() != g.num_vertices()) throw Error(ErrorKind::UnknownVertex, "script is not over the host graph");
  Divisor out = d;
  for (const auto& grp : g.edge_groups()) {
    Chips flow = grp.multiplicity * (sigma[grp.u] - sigma[grp.v]);
    out[grp.u] -= flow;
    out[grp.v] += flow;
  }
  return out;
}

/// Nested sets U_1 ⊆ ... ⊆ U_k where U_l holds the vertices fired at least
/// k+1-l times by the normalized script; firing them in order equals the script.
inline std::vector<VertexSet> level_set_decomposition(const FiringScript& sigma) {
  auto s = sigma.normalized();
  std::vector<VertexSet> levels;
  if (s.size() == 0) return levels;
  Chips top = *std::max_element(s.counts().begin(), s.counts().end());
  for (Chips l = 1; l <= top; ++l) {
    VertexSet u(s.size());
    for (std::size_t v = 0; v < s.size(); ++v)
      if (s[v] >= top + 1 - l) u.insert(v);
    levels.push_back(std::move(u));
  }
  return levels;
}

}  // namespace chipfire
