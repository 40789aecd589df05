#ifndef CCK_PATHWIDTH_HPP
#define CCK_PATHWIDTH_HPP

#include "cck/elimination.hpp"
#include "cck/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cck {

/// Ordered bag sequence; width is the largest bag size minus one.
struct PathDecomposition {
    std::vector<std::vector<int>> bags;

    int width() const;
};

inline constexpr int kDefaultPathwidthCap = 12;

// Checks the interval property of every vertex (nonempty, contiguous bag
// range) and coverage of every edge. Returns a violation message, if any.
std::optional<std::string> validate_path_decomposition(
    const Graph& g, const PathDecomposition& pd);

struct PathwidthResult {
    int width = 0;
    PathDecomposition decomposition;
};

// Exact pathwidth by the vertex-separation DP over vertex subsets.
PathwidthResult exact_pathwidth(const Graph& g, int cap = kDefaultPathwidthCap);

struct TwoColourResult {
    Colouring colouring;  // 0 = red, 1 = blue
    // width of the decomposition entering each recursion level, outermost
    // first; strictly decreasing by construction
    std::vector<int> level_widths;
};

// Bag-sweep 2-colouring: alternately colours a maximal sequence of pairwise
// disjoint bags, then recurses on the decomposition induced by the
// uncoloured vertices (validated at every level, width drops by one each
// time). Base case of width <= 1 is coloured properly per component.
TwoColourResult two_colour(const Graph& g, const PathDecomposition& pd);

struct MonoTreedepthReport {
    bool ok = false;
    bool exact = true;  // false when the DFS-height fallback was used
    int worst = 0;
    std::vector<int> witness_component;
    std::string note;
};

// Checks that every monochromatic component has treedepth at most bound,
// using the exact oracle up to td_cap vertices and the DFS-height upper
// bound (sufficient only) beyond it.
MonoTreedepthReport mono_treedepth_check(const Graph& g, const Colouring& col,
                                         int bound,
                                         int td_cap = kDefaultTreedepthCap);

// Pairs the two colourings pointwise; colour classes are intersections, so
// every monochromatic component lies inside a monochromatic component of
// each factor.
Colouring product_colouring(const Graph& g, const Colouring& a,
                            const Colouring& b);

}  // namespace cck

#endif
