#pragma once

#include "chipfire/divisor.hpp"
#include "chipfire/error.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/reduction.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace chipfire::io {

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << text;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line.substr(0, line.find('#')));
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

inline long long parse_int(const std::string& s, int line_no) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected an integer, got '" + s + "'");
  }
}

}  // namespace detail

struct NamedGraph {
  std::string name;
  MultiGraph graph;
};

/// Edge-list text:
///   graph <name> <|V|>
///   <vertex>                 (optional; fixes the vertex's position in the order)
///   <u> <v> <multiplicity>
/// `#` starts a comment.
inline NamedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::optional<std::pair<std::string, long long>> header;
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = detail::tokens(line);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 3 || tok[0] != "graph")
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'graph <name> <|V|>'");
      header = {tok[1], detail::parse_int(tok[2], line_no)};
      continue;
    }
    if (tok.size() == 1) {
      vertices.push_back(tok[0]);
    } else if (tok.size() == 3) {
      edges.push_back({tok[0], tok[1], detail::parse_int(tok[2], line_no)});
    } else {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected '<u> <v> <mult>'");
    }
  }
  if (!header) throw Error(ErrorKind::ParseError, "missing 'graph' header");
  auto g = MultiGraph::build(vertices, edges);
  if (static_cast<long long>(g.num_vertices()) != header->second)
    throw Error(ErrorKind::ParseError, "header declares " + std::to_string(header->second) + " vertices, found " +
                                           std::to_string(g.num_vertices()));
  return {header->first, std::move(g)};
}

inline std::string emit_graph(const MultiGraph& g, const std::string& name = "G") {
  std::ostringstream out;
  out << "graph " << name << " " << g.num_vertices() << "\n";
  for (const auto& v : g.names()) out << v << "\n";
  for (const auto& grp : g.edge_groups()) out << g.name(grp.u) << " " << g.name(grp.v) << " " << grp.multiplicity << "\n";
  return out.str();
}

inline NamedGraph load_graph(const std::filesystem::path& path) { return parse_graph(detail::read_file(path)); }

/// DOT with multiplicities as edge labels.
inline std::string to_dot(const MultiGraph& g, const std::string& name = "G") {
  std::ostringstream out;
  out << "graph \"" << name << "\" {\n";
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    out << "  \"" << g.name(v) << "\"";
    if (!g.label(v).empty()) out << " [xlabel=\"" << g.label(v) << "\"]";
    out << ";\n";
  }
  for (const auto& grp : g.edge_groups()) {
    out << "  \"" << g.name(grp.u) << "\" -- \"" << g.name(grp.v) << "\"";
    if (grp.multiplicity > 1) out << " [label=\"" << grp.multiplicity << "\", penwidth=2]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

/// Divisor text: one `<vertex> <count>` per line, or a JSON object
/// {"vertex": count}. Unlisted vertices carry 0 chips.
inline Divisor parse_divisor(const GraphPtr& host, const std::string& text) {
  std::map<std::string, Chips> coeffs;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
    for (const auto& [k, v] : j.items()) {
      if (!v.is_number_integer()) throw Error(ErrorKind::ParseError, "chip count for " + k + " is not an integer");
      coeffs[k] += v.get<Chips>();
    }
  } else {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto tok = detail::tokens(line);
      if (tok.empty()) continue;
      if (tok.size() != 2)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected '<vertex> <count>'");
      coeffs[tok[0]] += detail::parse_int(tok[1], line_no);
    }
  }
  return Divisor::from_map(host, coeffs);
}

inline std::string emit_divisor(const Divisor& d) {
  std::ostringstream out;
  for (std::size_t v = 0; v < d.size(); ++v)
    if (d[v] != 0) out << d.graph().name(v) << " " << d[v] << "\n";
  return out.str();
}

inline nlohmann::ordered_json divisor_json(const Divisor& d) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t v = 0; v < d.size(); ++v)
    if (d[v] != 0) j[d.graph().name(v)] = d[v];
  return j;
}

inline Divisor load_divisor(const GraphPtr& host, const std::filesystem::path& path) {
  return parse_divisor(host, detail::read_file(path));
}

/// Comma-separated vertex names.
inline VertexSet parse_vertex_set(const MultiGraph& g, const std::string& text) {
  VertexSet s(g.num_vertices());
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    auto tok = detail::tokens(item);
    if (tok.empty()) continue;
    if (tok.size() != 1) throw Error(ErrorKind::ParseError, "bad vertex name '" + item + "'");
    s.insert(g.index_of(tok[0]));
  }
  return s;
}

inline nlohmann::ordered_json vertex_set_json(const MultiGraph& g, const VertexSet& s) {
  auto j = nlohmann::ordered_json::array();
  for (auto v : s.members()) j.push_back(g.name(v));
  return j;
}

inline nlohmann::ordered_json roles_json(const ReductionInstance& inst) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t w = 0; w < inst.roles.size(); ++w) {
    const auto& role = inst.roles[w];
    nlohmann::ordered_json entry{{"role", role_tag(role.kind)}};
    if (role.kind != RoleKind::Apex) entry["vertex"] = inst.base->name(role.vertex);
    if (role.kind == RoleKind::EdgeEnd) entry["edge"] = role.edge;
    j[inst.gadget->name(w)] = entry;
  }
  return j;
}

inline nlohmann::ordered_json meta_json(const ReductionInstance& inst) {
  return {{"r", inst.r},
          {"M", inst.M},
          {"base_vertices", inst.base->num_vertices()},
          {"base_edges", inst.base->num_edges()},
          {"gadget_vertices", inst.gadget->num_vertices()}};
}

/// Instance bundle directory: base.graph, gadget.graph, roles.json, meta.json.
inline void write_instance(const ReductionInstance& inst, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  detail::write_file(dir / "base.graph", emit_graph(*inst.base, "base"));
  detail::write_file(dir / "gadget.graph", emit_graph(*inst.gadget, "gadget"));
  detail::write_file(dir / "roles.json", roles_json(inst).dump(2) + "\n");
  detail::write_file(dir / "meta.json", meta_json(inst).dump(2) + "\n");
}

/// Rebuilds the instance from the base graph and r, then checks that the
/// stored gadget and metadata agree with it.
inline ReductionInstance read_instance(const std::filesystem::path& dir) {
  auto base = load_graph(dir / "base.graph");
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(detail::read_file(dir / "meta.json"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!meta.contains("r") || !meta["r"].is_number_integer()) throw Error(ErrorKind::ParseError, "meta.json lacks r");
  auto inst = build_reduction(std::make_shared<const MultiGraph>(std::move(base.graph)), meta["r"].get<int>());
  auto stored = load_graph(dir / "gadget.graph");
  if (!(stored.graph == *inst.gadget)) throw Error(ErrorKind::ParseError, "gadget.graph does not match base graph and r");
  if (meta.contains("M") && meta["M"].get<Chips>() != inst.M) throw Error(ErrorKind::ParseError, "meta.json M mismatch");
  return inst;
}

}  // namespace chipfire::io
