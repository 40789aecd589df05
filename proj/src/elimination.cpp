#include "cck/elimination.hpp"

#include "cck/canonical.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace cck {

int EliminationTree::depth() const {
    int d = 0;
    for (int l : level) d = std::max(d, l);
    return d + 1;
}

EliminationTree make_elimination_tree(const Graph& g, RootedTree t) {
    EliminationTree e;
    e.level = t.levels();
    e.tree = std::move(t);
    validate_elimination_tree(g, e);
    return e;
}

void validate_elimination_tree(const Graph& g, const EliminationTree& e) {
    validate_rooted_tree(e.tree);
    if (e.tree.n != g.vertex_count())
        throw std::invalid_argument("elimination tree size differs from graph");
    if (e.level != e.tree.levels())
        throw std::invalid_argument("levels inconsistent with tree distances");
    for (auto [u, v] : g.edges())
        if (!e.tree.is_ancestor(u, v) && !e.tree.is_ancestor(v, u))
            throw std::invalid_argument(
                "edge " + std::to_string(u) + "-" + std::to_string(v) +
                " joins incomparable vertices");
}

namespace {

// treedepth of a connected induced subgraph, memoised on canonical form
int td_connected(const Graph& g, const std::vector<int>& verts,
                 std::unordered_map<std::string, int>& memo) {
    int m = static_cast<int>(verts.size());
    if (m == 1) return 1;
    auto sub = induced_subgraph(g, verts);
    std::string key = canonical_form(sub.graph);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    int best = m;  // delete everything: depth m always works
    for (int del = 0; del < m && best > 2; ++del) {
        std::vector<int> rest;
        rest.reserve(m - 1);
        for (int i = 0; i < m; ++i)
            if (i != del) rest.push_back(i);
        auto pieces = induced_subgraph(sub.graph, rest);
        int worst = 0;
        for (const auto& comp : connected_components(pieces.graph)) {
            std::vector<int> host_comp;
            host_comp.reserve(comp.size());
            for (int c : comp) host_comp.push_back(sub.to_host[pieces.to_host[c]]);
            worst = std::max(worst, td_connected(g, host_comp, memo));
            if (1 + worst >= best) break;
        }
        best = std::min(best, 1 + worst);
    }
    memo.emplace(std::move(key), best);
    return best;
}

// rebuilds a witness tree of depth td for a connected vertex set
void build_witness(const Graph& g, const std::vector<int>& verts,
                   std::unordered_map<std::string, int>& memo, int parent_of_root,
                   std::vector<int>& parent_out) {
    if (verts.size() == 1) {
        parent_out[verts[0]] = parent_of_root < 0 ? verts[0] : parent_of_root;
        return;
    }
    int target = td_connected(g, verts, memo);
    for (int root : verts) {
        std::vector<int> rest;
        for (int v : verts)
            if (v != root) rest.push_back(v);
        auto sub = induced_subgraph(g, rest);
        int worst = 0;
        std::vector<std::vector<int>> comps_host;
        for (const auto& comp : connected_components(sub.graph)) {
            std::vector<int> host;
            for (int c : comp) host.push_back(sub.to_host[c]);
            worst = std::max(worst, td_connected(g, host, memo));
            comps_host.push_back(std::move(host));
        }
        if (1 + worst == target) {
            parent_out[root] = parent_of_root < 0 ? root : parent_of_root;
            for (auto& host : comps_host)
                build_witness(g, host, memo, root, parent_out);
            return;
        }
    }
    throw std::logic_error("treedepth witness reconstruction failed");
}

}  // namespace

TreedepthResult treedepth_exact(const Graph& g, int cap) {
    int n = g.vertex_count();
    if (n > cap)
        throw cap_exceeded("treedepth_exact: " + std::to_string(n) +
                           " vertices exceeds cap " + std::to_string(cap));
    if (n == 0) throw std::invalid_argument("treedepth of the empty graph");

    std::unordered_map<std::string, int> memo;
    auto comps = connected_components(g);
    int td = 0, attain = 0;
    std::vector<int> comp_td(comps.size());
    for (size_t i = 0; i < comps.size(); ++i) {
        comp_td[i] = td_connected(g, comps[i], memo);
        if (comp_td[i] > td) {
            td = comp_td[i];
            attain = 1;
        } else if (comp_td[i] == td) {
            ++attain;
        }
    }
    int ctd = (comps.size() > 1 && attain >= 2) ? td + 1 : td;

    std::vector<int> parent(n, -1);
    size_t main_comp = 0;
    while (comp_td[main_comp] != td) ++main_comp;
    build_witness(g, comps[main_comp], memo, -1, parent);
    int main_root = -1;
    for (int v : comps[main_comp])
        if (parent[v] == v) main_root = v;
    for (size_t i = 0; i < comps.size(); ++i) {
        if (i == main_comp) continue;
        build_witness(g, comps[i], memo, main_root, parent);
    }

    RootedTree t;
    t.n = n;
    t.parent = std::move(parent);
    t.root = main_root;
    TreedepthResult r;
    r.treedepth = td;
    r.connected_treedepth = ctd;
    r.witness = make_elimination_tree(g, std::move(t));
    return r;
}

EliminationTree dfs_elimination_tree(const Graph& g) {
    if (!is_connected(g))
        throw std::invalid_argument("dfs_elimination_tree: graph disconnected");
    int n = g.vertex_count();
    std::vector<int> parent(n, -1);
    std::vector<int> stack{0};
    parent[0] = 0;
    // explicit stack, re-scanning neighbours so order matches recursive DFS
    std::vector<int> next_idx(n, 0);
    while (!stack.empty()) {
        int v = stack.back();
        bool advanced = false;
        const auto& nb = g.neighbours(v);
        while (next_idx[v] < static_cast<int>(nb.size())) {
            int w = nb[next_idx[v]++];
            if (parent[w] == -1) {
                parent[w] = v;
                stack.push_back(w);
                advanced = true;
                break;
            }
        }
        if (!advanced) stack.pop_back();
    }
    RootedTree t;
    t.n = n;
    t.parent = std::move(parent);
    t.root = 0;
    return make_elimination_tree(g, std::move(t));
}

namespace {

bool subtree_connected(const Graph& g, const EliminationTree& e, int v) {
    auto verts = subtree_vertices(e, v);
    return is_connected(induced_subgraph(g, verts).graph);
}

}  // namespace

bool is_normalized(const Graph& g, const EliminationTree& e) {
    for (int v = 0; v < e.tree.n; ++v)
        if (!subtree_connected(g, e, v)) return false;
    return true;
}

NormalizeResult normalize_tree(const Graph& g, const EliminationTree& e) {
    if (!is_connected(g))
        throw std::invalid_argument("normalize_tree: graph disconnected");
    validate_elimination_tree(g, e);
    RootedTree t = e.tree;
    int n = t.n;
    int rehangs = 0;
    long long guard = static_cast<long long>(n) * e.depth() + 1;

    while (true) {
        if (--guard < 0) throw std::logic_error("normalize_tree failed to terminate");
        auto lvl = t.levels();
        EliminationTree cur{t, lvl};
        // deepest vertex with disconnected G[T_v]; ties to smallest index
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (subtree_connected(g, cur, v)) continue;
            if (pick == -1 || lvl[v] > lvl[pick] ||
                (lvl[v] == lvl[pick] && v < pick))
                pick = v;
        }
        if (pick == -1) break;
        if (pick == t.root)
            throw std::logic_error("connected graph with disconnected root subtree");
        // child w of pick with no G-edge from pick into T_w; smallest index
        auto ch = cur.tree.children();
        std::sort(ch[pick].begin(), ch[pick].end());
        int moved = -1;
        for (int w : ch[pick]) {
            bool touched = false;
            for (int x : subtree_vertices(cur, w))
                if (g.has_edge(pick, x)) {
                    touched = true;
                    break;
                }
            if (!touched) {
                moved = w;
                break;
            }
        }
        if (moved == -1)
            throw std::logic_error("disconnected subtree with all children attached");
        t.parent[moved] = t.parent[pick];
        ++rehangs;
    }

    NormalizeResult r;
    r.tree = make_elimination_tree(g, std::move(t));
    r.rehang_count = rehangs;
    return r;
}

std::vector<int> subtree_vertices(const EliminationTree& e, int v) {
    std::vector<int> out;
    auto ch = e.tree.children();
    std::vector<int> stack{v};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        out.push_back(x);
        for (int c : ch[x]) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> subtree_plus(const EliminationTree& e, int v) {
    auto out = subtree_vertices(e, v);
    int x = v;
    while (x != e.tree.root) {
        x = e.tree.parent[x];
        out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace cck
