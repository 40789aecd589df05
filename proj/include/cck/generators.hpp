#ifndef CCK_GENERATORS_HPP
#define CCK_GENERATORS_HPP

#include "cck/graph.hpp"

#include <vector>

namespace cck {

/// Rooted tree with parent pointers; the root is its own parent.
/// Vertices of generated trees are numbered in BFS order from the root.
struct RootedTree {
    int n = 0;
    std::vector<int> parent;  // parent[root] == root
    int root = 0;

    // Number of vertices on the longest root-to-leaf path.
    int depth() const;
    // Root distance of each vertex (root -> 0).
    std::vector<int> levels() const;
    std::vector<std::vector<int>> children() const;
    bool is_ancestor(int u, int v) const;  // true also when u == v
};

void validate_rooted_tree(const RootedTree& t);

inline constexpr long long kDefaultTreeSizeCap = 100000;

// Complete k-ary tree of depth h (h vertices per root-leaf path), BFS order.
RootedTree complete_kary_tree(int h, int k,
                              long long cap = kDefaultTreeSizeCap);

// Edges between every strict ancestor-descendant pair.
Graph closure(const RootedTree& t);

// Edges between every leaf and each of its strict ancestors.
Graph weak_closure(const RootedTree& t);

}  // namespace cck

#endif
