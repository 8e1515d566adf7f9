// chipfire: command-line front end.
// Exit status: 0 yes/success, 1 no, 2 budget exhausted, 3 bad input.

#include "chipfire/acceptance.hpp"
#include "chipfire/generators.hpp"
#include "chipfire/gonality.hpp"
#include "chipfire/io.hpp"
#include "chipfire/rank.hpp"
#include "chipfire/reduction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

using namespace chipfire;
using Json = nlohmann::ordered_json;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kBudget = 2;
constexpr int kInput = 3;

GraphPtr load_shared(const std::string& path) {
  return std::make_shared<const MultiGraph>(io::load_graph(path).graph);
}

Json trace_json(const std::vector<DegreeTrace>& trace) {
  auto j = Json::array();
  for (const auto& t : trace)
    j.push_back({{"degree", t.degree}, {"candidates", t.candidates}, {"failures", t.failures}, {"rank_calls", t.rank_calls}});
  return j;
}

std::optional<VertexSet> parse_set_option(const MultiGraph& g, const std::string& text) {
  if (text.empty()) return std::nullopt;
  return io::parse_vertex_set(g, text);
}

OrientedIndependentData oriented_set(const ReductionInstance& inst, const std::string& set_text) {
  auto s = parse_set_option(*inst.base, set_text);
  return orient_independent_set(*inst.base, s ? *s : independence_number(*inst.base).witness);
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chip-firing divisors, gonality and the independent-set gadget"};
  app.require_subcommand(1);

  std::string graph_path, instance_dir, divisor_path, set_text, out_path;
  int r = 1;
  int k = 0;
  int k_max = 1;
  std::uint64_t budget_nodes = Budget::kDefaultNodes;
  std::optional<double> budget_seconds;
  bool as_json = false;
  bool as_dot = false;

  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", budget_nodes, "node budget (q-reductions / visited divisors)");
    sub->add_option("--seconds", budget_seconds, "wall-clock budget");
  };

  auto* gonality = app.add_subcommand("gonality", "exact r-th gonality, optionally with subdivision bounds");
  gonality->add_option("--graph", graph_path, "graph file")->required();
  gonality->add_option("--rank,-r", r, "rank r")->check(CLI::PositiveNumber);
  gonality->add_option("--kmax", k_max, "also bound over sigma_2..sigma_kmax")->check(CLI::PositiveNumber);
  add_budget(gonality);

  auto* decide = app.add_subcommand("decide", "is dgon_r(G) <= k?");
  decide->add_option("--graph", graph_path, "graph file")->required();
  decide->add_option("--rank,-r", r, "rank r")->check(CLI::PositiveNumber);
  decide->add_option("--k,-k", k, "degree threshold")->required();
  add_budget(decide);

  auto* reduce = app.add_subcommand("reduce", "build the gadget G'_r and write an instance bundle");
  reduce->add_option("--graph", graph_path, "base graph file")->required();
  reduce->add_option("--rank,-r", r, "rank r")->check(CLI::PositiveNumber);
  reduce->add_option("--out", out_path, "instance directory")->required();
  reduce->add_flag("--dot", as_dot, "print the gadget as DOT");

  auto* witness = app.add_subcommand("witness", "rank-r divisor built from an independent set");
  witness->add_option("--instance", instance_dir, "instance directory")->required();
  witness->add_option("--set", set_text, "comma-separated independent set (default: a maximum one)");
  witness->add_flag("--json", as_json, "JSON instead of text");

  auto* verify = app.add_subcommand("verify", "check a divisor has rank >= r");
  verify->add_option("--instance", instance_dir, "instance directory (structured check)");
  verify->add_option("--set", set_text, "independent set for the structured check");
  verify->add_option("--graph", graph_path, "graph file (plain rank check)");
  verify->add_option("--divisor", divisor_path, "divisor file (default with --instance: the witness)");
  verify->add_option("--rank,-r", r, "rank r for --graph")->check(CLI::PositiveNumber);
  add_budget(verify);

  auto* extract = app.add_subcommand("extract", "independent set recovered from a gadget divisor");
  extract->add_option("--instance", instance_dir, "instance directory")->required();
  extract->add_option("--divisor", divisor_path, "divisor file")->required();
  add_budget(extract);

  auto* subdivide = app.add_subcommand("subdivide", "uniform subdivision sigma_k");
  subdivide->add_option("--graph", graph_path, "graph file")->required();
  subdivide->add_option("--k,-k", k, "edges per original edge")->required();
  subdivide->add_flag("--dot", as_dot, "DOT instead of edge-list text");

  AcceptanceConfig accept_config;
  std::string accept_graph;
  auto* accept = app.add_subcommand("accept", "run the acceptance criteria");
  accept->add_option("--budget", accept_config.budget_nodes, "node budget per criterion");
  accept->add_option("--seed", accept_config.seed, "seed for randomized criteria");
  accept->add_option("--graph", accept_graph, "extra graph to solve");

  std::size_t gen_n = 0;
  std::optional<double> gen_p;
  std::optional<std::size_t> gen_m;
  std::uint64_t gen_seed = 0;
  std::string gen_name = "G";
  auto* gen = app.add_subcommand("gen", "seeded random connected simple graph");
  gen->add_option("--n,-n", gen_n, "vertices")->required();
  auto* p_opt = gen->add_option("--p,-p", gen_p, "edge probability");
  gen->add_option("--m,-m", gen_m, "edge count")->excludes(p_opt);
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--name", gen_name, "graph name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  auto make_budget = [&] { return Budget(budget_nodes, budget_seconds); };

  try {
    if (*gonality) {
      auto g = load_shared(graph_path);
      auto budget = make_budget();
      auto res = dgon(g, r, &budget);
      Json out{{"r", r}, {"degree", res.degree}, {"witness", io::divisor_json(res.witness)}, {"trace", trace_json(res.trace)}};
      if (k_max > 1) {
        auto sub = sdgon_upper(g, r, k_max, &budget);
        out["subdivision_upper"] = {{"degree", sub.degree}, {"best_k", sub.best_k}, {"k_max", k_max}};
      }
      out["nodes"] = budget.used();
      print(out);
      return kYes;
    }

    if (*decide) {
      auto g = load_shared(graph_path);
      const auto limit = r * static_cast<long long>(g->num_vertices());
      if (k < 0 || k > limit) throw Error(ErrorKind::BadParams, "k must lie in [0, r|V|] = [0, " + std::to_string(limit) + "]");
      auto budget = make_budget();
      std::vector<DegreeTrace> exhausted;
      auto res = search_gonality(g, r, {&budget, k, &exhausted});
      Json out{{"r", r}, {"k", k}};
      if (res) {
        if (!dgon_upper_witness(res->witness, r)) throw std::logic_error("witness failed independent check");
        out["answer"] = "yes";
        out["degree"] = res->degree;
        out["witness"] = io::divisor_json(res->witness);
        print(out);
        return kYes;
      }
      // Every class of every degree up to k was tried and failed.
      out["answer"] = "no";
      out["certificate"] = trace_json(exhausted);
      print(out);
      return kNo;
    }

    if (*reduce) {
      auto base = load_shared(graph_path);
      auto inst = build_reduction(base, r);
      io::write_instance(inst, out_path);
      if (as_dot)
        std::cout << io::to_dot(*inst.gadget, "gadget");
      else
        print(io::meta_json(inst));
      return kYes;
    }

    if (*witness) {
      auto inst = io::read_instance(instance_dir);
      auto data = oriented_set(inst, set_text);
      auto d = witness_divisor(inst, data);
      if (as_json)
        print({{"set", io::vertex_set_json(*inst.base, data.independent)},
               {"degree", d.degree()},
               {"divisor", io::divisor_json(d)}});
      else
        std::cout << io::emit_divisor(d);
      return kYes;
    }

    if (*verify) {
      auto budget = make_budget();
      if (!instance_dir.empty()) {
        auto inst = io::read_instance(instance_dir);
        auto data = oriented_set(inst, set_text);
        auto d = divisor_path.empty() ? witness_divisor(inst, data) : io::load_divisor(inst.gadget, divisor_path);
        auto res = verify_witness(inst, data, d, true, &budget);
        Json out{{"ok", res.ok}, {"degree", d.degree()}, {"examined", res.examined}, {"structured_plays", res.structured_plays}};
        if (res.failing) out["failing"] = io::divisor_json(*res.failing);
        print(out);
        return res.ok ? kYes : kNo;
      }
      if (graph_path.empty() || divisor_path.empty())
        throw Error(ErrorKind::BadParams, "verify needs --instance, or --graph with --divisor");
      auto g = load_shared(graph_path);
      auto d = io::load_divisor(g, divisor_path);
      auto res = rank_at_least(d, r, &budget);
      Json out{{"ok", res.holds}, {"r", r}, {"degree", d.degree()}, {"examined", res.examined}};
      if (res.failing) out["failing"] = io::divisor_json(*res.failing);
      print(out);
      return res.holds ? kYes : kNo;
    }

    if (*extract) {
      auto inst = io::read_instance(instance_dir);
      auto d = io::load_divisor(inst.gadget, divisor_path);
      auto budget = make_budget();
      auto s = extract_independent_set(inst, d, &budget);
      print({{"set", io::vertex_set_json(*inst.base, s)}, {"size", s.size()}, {"divisor_degree", d.degree()}});
      return kYes;
    }

    if (*subdivide) {
      auto ng = io::load_graph(graph_path);
      auto s = subdivide_uniform(ng.graph, k);
      const auto name = ng.name + "_s" + std::to_string(k);
      std::cout << (as_dot ? io::to_dot(s, name) : io::emit_graph(s, name));
      return kYes;
    }

    if (*accept) {
      if (!accept_graph.empty()) accept_config.graph_file = accept_graph;
      std::cout << "seed " << accept_config.seed << ", budget " << accept_config.budget_nodes << " nodes per criterion\n";
      bool budget_hit = false;
      bool input_bad = false;
      bool failed = false;
      run_acceptance_suite(accept_config, [&](const AcceptanceRow& row) {
        std::cout << row << std::endl;
        if (row.pass) return;
        failed = true;
        if (row.error == ErrorKind::BudgetExceeded) budget_hit = true;
        if (row.error == ErrorKind::ParseError) input_bad = true;
      });
      if (input_bad) return kInput;
      if (budget_hit) return kBudget;
      return failed ? kNo : kYes;
    }

    if (*gen) {
      std::variant<EdgeProbability, EdgeCount> model = EdgeProbability{gen_p.value_or(0.5)};
      if (gen_m) model = EdgeCount{*gen_m};
      std::cout << "# seed " << gen_seed << "\n" << io::emit_graph(generate_random_graph(gen_n, model, gen_seed), gen_name);
      return kYes;
    }
  } catch (const Error& e) {
    std::cerr << "chipfire: " << e.what() << "\n";
    return e.kind() == ErrorKind::BudgetExceeded ? kBudget : kInput;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "chipfire: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
