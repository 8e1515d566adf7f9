// Builds the gadget for a small base graph, compares the exact gonality with
// the closed form, and pulls an independent set back out of the optimum.
//
//   gadget_tour            (path on three vertices, r = 1)
//   gadget_tour 2          (same base, r = 2; slower)

#include "chipfire/generators.hpp"
#include "chipfire/gonality.hpp"
#include "chipfire/reduction.hpp"

#include <iostream>
#include <memory>
#include <string>

using namespace chipfire;

int main(int argc, char** argv) {
  const int r = argc > 1 ? std::stoi(argv[1]) : 1;
  auto base = std::make_shared<const MultiGraph>(path_graph(3));
  auto inst = build_reduction(base, r);
  std::cout << "base P_3, r = " << r << ": gadget has " << inst.gadget->num_vertices() << " vertices, "
            << inst.gadget->num_edges() << " edges, M = " << inst.M << "\n";

  auto best = independence_number(*base);
  auto data = orient_independent_set(*base, best.witness);
  auto w = witness_divisor(inst, data);
  auto check = verify_witness(inst, data, w);
  std::cout << "witness from a maximum independent set: " << w << "\n"
            << "  degree " << w.degree() << ", formula " << formula_gonality(*base, r, best.alpha) << ", "
            << check.examined << " debt placements, " << check.structured_plays << " cleared by one firing\n";

  Budget budget(50'000'000);
  auto exact = dgon(inst.gadget, r, &budget);
  std::cout << "exact search: dgon = " << exact.degree << " after " << budget.used() << " q-reductions\n"
            << "  colex-least optimum: " << exact.witness << "\n";

  auto back = extract_independent_set(inst, exact.witness);
  std::cout << "extracted set:";
  for (auto v : back.members()) std::cout << " " << base->name(v);
  std::cout << " (alpha = " << best.alpha << ")\n";
}
