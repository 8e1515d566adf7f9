#pragma once

#include "chipfire/divisor.hpp"
#include "chipfire/error.hpp"
#include "chipfire/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace chipfire {

inline MultiGraph path_graph(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({names[i], names[i + 1], 1});
  return MultiGraph::build(names, edges);
}

inline MultiGraph cycle_graph(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::BadParams, "cycle needs at least 3 vertices");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({names[i], names[(i + 1) % n], 1});
  return MultiGraph::build(names, edges);
}

inline MultiGraph complete_graph(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({names[i], names[j], 1});
  return MultiGraph::build(names, edges);
}

/// Two vertices joined by `m` parallel edges.
inline MultiGraph banana_graph(Chips m) { return MultiGraph::build({"a", "b"}, {{"a", "b", m}}); }

inline MultiGraph petersen_graph() {
  std::vector<std::string> names;
  for (int i = 0; i < 10; ++i) names.push_back("p" + std::to_string(i));
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({names[i], names[(i + 1) % 5], 1});
    edges.push_back({names[i], names[5 + i], 1});
    edges.push_back({names[5 + i], names[5 + (i + 2) % 5], 1});
  }
  return MultiGraph::build(names, edges);
}

struct EdgeProbability {
  double p;
};
struct EdgeCount {
  std::size_t m;
};

/// Connected simple graph on vertices v0..v{n-1}, resampled from G(n, p) or
/// G(n, m) until connected. Deterministic per seed.
inline MultiGraph generate_random_graph(std::size_t n, std::variant<EdgeProbability, EdgeCount> model,
                                        std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::BadParams, "n must be >= 1");
  const std::size_t pairs = n * (n - 1) / 2;
  if (auto* p = std::get_if<EdgeProbability>(&model)) {
    if (!(p->p >= 0.0 && p->p <= 1.0)) throw Error(ErrorKind::BadParams, "p must lie in [0, 1]");
    if (n > 1 && p->p == 0.0) throw Error(ErrorKind::BadParams, "p = 0 never yields a connected graph");
  } else {
    auto m = std::get<EdgeCount>(model).m;
    if (m > pairs || m + 1 < n) throw Error(ErrorKind::BadParams, "edge count cannot give a connected simple graph");
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);

  std::mt19937_64 rng(seed);
  for (;;) {
    std::vector<EdgeSpec> edges;
    if (auto* p = std::get_if<EdgeProbability>(&model)) {
      std::bernoulli_distribution coin(p->p);
      for (auto [i, j] : all)
        if (coin(rng)) edges.push_back({names[i], names[j], 1});
    } else {
      auto picked = all;
      std::shuffle(picked.begin(), picked.end(), rng);
      picked.resize(std::get<EdgeCount>(model).m);
      std::sort(picked.begin(), picked.end());
      for (auto [i, j] : picked) edges.push_back({names[i], names[j], 1});
    }
    try {
      return MultiGraph::build(names, edges);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Disconnected) throw;
    }
  }
}

/// Divisor of the given degree: entries drawn from [-spread, spread], then one
/// random vertex absorbs the difference.
template <class Rng>
Divisor random_divisor(const GraphPtr& host, Chips degree, Chips spread, Rng& rng) {
  Divisor d(host);
  std::uniform_int_distribution<Chips> entry(-spread, spread);
  std::uniform_int_distribution<std::size_t> pick(0, host->num_vertices() - 1);
  for (std::size_t v = 0; v < d.size(); ++v) d[v] = entry(rng);
  d[pick(rng)] += degree - d.degree();
  return d;
}

/// Effective divisor of the given degree, chips dropped on uniform vertices.
template <class Rng>
Divisor random_effective_divisor(const GraphPtr& host, Chips degree, Rng& rng) {
  Divisor d(host);
  std::uniform_int_distribution<std::size_t> pick(0, host->num_vertices() - 1);
  for (Chips i = 0; i < degree; ++i) ++d[pick(rng)];
  return d;
}

}  // namespace chipfire
