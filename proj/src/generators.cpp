#include "cck/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cck {

std::vector<int> RootedTree::levels() const {
    std::vector<int> lvl(n, -1);
    // parents are numbered before children in BFS order, but accept any
    // valid parent array by iterating until fixed
    lvl[root] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (v == root || lvl[v] != -1) continue;
            if (lvl[parent[v]] != -1) {
                lvl[v] = lvl[parent[v]] + 1;
                changed = true;
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (lvl[v] == -1) throw std::invalid_argument("tree has unreachable vertex");
    return lvl;
}

int RootedTree::depth() const {
    auto lvl = levels();
    int d = 0;
    for (int v = 0; v < n; ++v) d = std::max(d, lvl[v]);
    return d + 1;
}

std::vector<std::vector<int>> RootedTree::children() const {
    std::vector<std::vector<int>> ch(n);
    for (int v = 0; v < n; ++v)
        if (v != root) ch[parent[v]].push_back(v);
    return ch;
}

bool RootedTree::is_ancestor(int u, int v) const {
    while (true) {
        if (v == u) return true;
        if (v == root) return false;
        v = parent[v];
    }
}

void validate_rooted_tree(const RootedTree& t) {
    if (t.n <= 0) throw std::invalid_argument("empty tree");
    if (static_cast<int>(t.parent.size()) != t.n)
        throw std::invalid_argument("parent array size mismatch");
    if (t.root < 0 || t.root >= t.n || t.parent[t.root] != t.root)
        throw std::invalid_argument("root must be its own parent");
    for (int v = 0; v < t.n; ++v) {
        if (t.parent[v] < 0 || t.parent[v] >= t.n)
            throw std::invalid_argument("parent out of range");
        if (v != t.root && t.parent[v] == v)
            throw std::invalid_argument("non-root vertex is its own parent");
    }
    t.levels();  // throws if disconnected (i.e. cyclic parent chains)
}

RootedTree complete_kary_tree(int h, int k, long long cap) {
    if (h < 1 || k < 1) throw std::invalid_argument("require h >= 1 and k >= 1");
    long long size = 1, layer = 1;
    for (int lvl = 1; lvl < h; ++lvl) {
        layer *= k;
        size += layer;
        if (size > cap)
            throw cap_exceeded("complete_kary_tree: size exceeds cap " +
                               std::to_string(cap));
    }
    RootedTree t;
    t.n = static_cast<int>(size);
    t.root = 0;
    t.parent.assign(t.n, 0);
    // BFS order: vertex v > 0 has parent (v-1)/k
    for (int v = 1; v < t.n; ++v) t.parent[v] = (v - 1) / k;
    return t;
}

Graph closure(const RootedTree& t) {
    validate_rooted_tree(t);
    Graph g(t.n);
    for (int v = 0; v < t.n; ++v)
        for (int a = t.parent[v]; ; a = t.parent[a]) {
            if (a == v) break;
            g.add_edge(a, v);
            if (a == t.root) break;
        }
    return g;
}

Graph weak_closure(const RootedTree& t) {
    validate_rooted_tree(t);
    auto ch = t.children();
    Graph g(t.n);
    for (int v = 0; v < t.n; ++v) {
        if (!ch[v].empty()) continue;  // not a leaf
        for (int a = t.parent[v]; ; a = t.parent[a]) {
            if (a == v) break;  // single-vertex tree
            g.add_edge(a, v);
            if (a == t.root) break;
        }
    }
    return g;
}

}  // namespace cck
