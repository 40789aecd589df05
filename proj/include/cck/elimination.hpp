#ifndef CCK_ELIMINATION_HPP
#define CCK_ELIMINATION_HPP

#include "cck/generators.hpp"
#include "cck/graph.hpp"

#include <vector>

namespace cck {

/// Rooted tree over V(G) whose closure contains G; level[v] is the root
/// distance of v in the tree.
struct EliminationTree {
    RootedTree tree;
    std::vector<int> level;

    int depth() const;  // vertices on the longest root-leaf path
};

inline constexpr int kDefaultTreedepthCap = 14;

EliminationTree make_elimination_tree(const Graph& g, RootedTree t);

// Throws unless every edge of g joins an ancestor-descendant pair and the
// levels match tree distances.
void validate_elimination_tree(const Graph& g, const EliminationTree& e);

struct TreedepthResult {
    int treedepth = 0;
    int connected_treedepth = 0;
    // Single rooted tree with G inside its closure. Depth equals treedepth
    // for connected inputs and connected treedepth otherwise.
    EliminationTree witness;
};

// Exact treedepth by recursive vertex deletion, memoised on canonical forms
// of the induced subgraphs encountered.
TreedepthResult treedepth_exact(const Graph& g, int cap = kDefaultTreedepthCap);

// Elimination tree from a DFS spanning tree rooted at vertex 0 (neighbours
// visited in increasing index order). Requires a connected graph.
EliminationTree dfs_elimination_tree(const Graph& g);

struct NormalizeResult {
    EliminationTree tree;
    int rehang_count = 0;
};

// Re-hangs subtrees until G[T_v] is connected for every v, never increasing
// the depth. Requires a connected graph.
NormalizeResult normalize_tree(const Graph& g, const EliminationTree& e);

bool is_normalized(const Graph& g, const EliminationTree& e);

// V(T_v) together with the vertices on the v-to-root path, sorted.
std::vector<int> subtree_plus(const EliminationTree& e, int v);

// Vertices of the maximal subtree rooted at v, sorted.
std::vector<int> subtree_vertices(const EliminationTree& e, int v);

}  // namespace cck

#endif
