#ifndef CCK_CANONICAL_HPP
#define CCK_CANONICAL_HPP

#include "cck/graph.hpp"

#include <string>
#include <vector>

namespace cck {

// Canonical string form of a vertex-coloured graph with an optional strict
// order relation on the vertices. Two inputs get equal strings exactly when
// an isomorphism exists that preserves adjacency, colour values and the
// order relation. Individualisation-refinement with full backtracking;
// intended for desk-scale graphs only.
std::string canonical_form(
    const Graph& g, const std::vector<int>& colour,
    const std::vector<std::vector<char>>* strict_order = nullptr);

std::string canonical_form(const Graph& g);

}  // namespace cck

#endif
