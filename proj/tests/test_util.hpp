#pragma once

#include "chipfire/divisor.hpp"
#include "chipfire/graph.hpp"

#include <memory>

namespace chipfire::testing {

inline GraphPtr share(MultiGraph g) { return std::make_shared<const MultiGraph>(std::move(g)); }

inline Divisor div(const GraphPtr& g, std::vector<Chips> coeffs) { return Divisor(g, std::move(coeffs)); }

}  // namespace chipfire::testing
