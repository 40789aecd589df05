#include "cck/canonical.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace cck {

namespace {

struct CanonSearch {
    int n;
    std::vector<std::vector<char>> adj;
    std::vector<std::vector<char>> ord;  // ord[u][v] = 1 iff u strictly below v
    std::vector<int> base_colour;        // colour values to preserve
    std::string best;

    // Refines cls (vertex -> class id, ids dense and order-stable) until no
    // signature distinguishes vertices within a class.
    void refine(std::vector<int>& cls) const {
        while (true) {
            // signature: (old class, multiset of (relation, other class))
            std::vector<std::vector<std::tuple<int, int, int>>> sig(n);
            for (int v = 0; v < n; ++v) {
                for (int u = 0; u < n; ++u) {
                    if (u == v) continue;
                    int rel = adj[v][u] | (ord[v][u] << 1) | (ord[u][v] << 2);
                    if (rel) sig[v].push_back({rel, cls[u], 0});
                }
                std::sort(sig[v].begin(), sig[v].end());
            }
            std::map<std::pair<int, std::vector<std::tuple<int, int, int>>>, int> next;
            for (int v = 0; v < n; ++v) next.insert({{cls[v], sig[v]}, 0});
            int id = 0;
            for (auto& [key, val] : next) val = id++;
            bool changed = false;
            for (int v = 0; v < n; ++v) {
                int c = next[{cls[v], sig[v]}];
                if (c != cls[v]) changed = true;
                cls[v] = c;
            }
            if (!changed) return;
        }
    }

    std::string encode(const std::vector<int>& cls) const {
        // cls is discrete: class id = canonical position
        std::vector<int> vert(n);
        for (int v = 0; v < n; ++v) vert[cls[v]] = v;
        std::string s;
        s += std::to_string(n);
        s += ';';
        for (int i = 0; i < n; ++i) {
            s += std::to_string(base_colour[vert[i]]);
            s += ',';
        }
        s += ';';
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                s += adj[vert[i]][vert[j]] ? '1' : '0';
        s += ';';
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += ord[vert[i]][vert[j]] ? '1' : '0';
        return s;
    }

    void search(std::vector<int> cls) {
        refine(cls);
        // locate first non-singleton class
        std::vector<int> count(n, 0);
        for (int v = 0; v < n; ++v) ++count[cls[v]];
        int target = -1;
        for (int c = 0; c < n; ++c)
            if (count[c] > 1) {
                target = c;
                break;
            }
        if (target == -1) {
            std::string s = encode(cls);
            if (best.empty() || s < best) best = std::move(s);
            return;
        }
        // individualise one representative per twin class: if swapping u and
        // v is an automorphism, both branches end in the same encoding
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (cls[v] == target) members.push_back(v);
        std::vector<char> skip(members.size(), 0);
        for (size_t a = 0; a < members.size(); ++a) {
            if (skip[a]) continue;
            for (size_t b = a + 1; b < members.size(); ++b)
                if (!skip[b] && twins(members[a], members[b])) skip[b] = 1;
            int v = members[a];
            auto next = cls;
            for (int u = 0; u < n; ++u)
                if (next[u] > target || (next[u] == target && u != v)) ++next[u];
            search(std::move(next));
        }
    }

    bool twins(int u, int v) const {
        if (base_colour[u] != base_colour[v]) return false;
        if (ord[u][v] != ord[v][u]) return false;
        for (int w = 0; w < n; ++w) {
            if (w == u || w == v) continue;
            if (adj[u][w] != adj[v][w]) return false;
            if (ord[u][w] != ord[v][w]) return false;
            if (ord[w][u] != ord[w][v]) return false;
        }
        return true;
    }
};

}  // namespace

std::string canonical_form(const Graph& g, const std::vector<int>& colour,
                           const std::vector<std::vector<char>>* strict_order) {
    int n = g.vertex_count();
    if (static_cast<int>(colour.size()) != n)
        throw std::invalid_argument("canonical_form: colour size mismatch");
    CanonSearch cs;
    cs.n = n;
    cs.adj.assign(n, std::vector<char>(n, 0));
    for (auto [u, v] : g.edges()) cs.adj[u][v] = cs.adj[v][u] = 1;
    cs.ord.assign(n, std::vector<char>(n, 0));
    if (strict_order) {
        if (static_cast<int>(strict_order->size()) != n)
            throw std::invalid_argument("canonical_form: order size mismatch");
        cs.ord = *strict_order;
    }
    cs.base_colour = colour;
    if (n == 0) return "0;;;";

    // initial classes follow increasing colour value
    std::vector<int> values = colour;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<int> cls(n);
    for (int v = 0; v < n; ++v)
        cls[v] = static_cast<int>(
            std::lower_bound(values.begin(), values.end(), colour[v]) -
            values.begin());
    cs.search(std::move(cls));
    return cs.best;
}

std::string canonical_form(const Graph& g) {
    return canonical_form(g, std::vector<int>(g.vertex_count(), 0), nullptr);
}

}  // namespace cck
