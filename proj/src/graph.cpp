#include "cck/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <sstream>

namespace cck {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges)
    : n_(n), adj_(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v});
    if (it != edges_.end() && *it == std::pair{u, v})
        throw std::invalid_argument("duplicate edge");
    edges_.insert(it, {u, v});
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::uint64_t> Graph::adjacency_masks() const {
    if (n_ > 64) throw std::invalid_argument("adjacency_masks: n > 64");
    std::vector<std::uint64_t> m(n_, 0);
    for (auto [u, v] : edges_) {
        m[u] |= std::uint64_t{1} << v;
        m[v] |= std::uint64_t{1} << u;
    }
    return m;
}

Colouring make_colouring(std::vector<int> assignment) {
    std::map<int, int> remap;
    for (int c : assignment) {
        if (c < 0) throw std::invalid_argument("negative colour");
        remap.emplace(c, 0);
    }
    int next = 0;
    for (auto& [value, idx] : remap) idx = next++;
    for (int& c : assignment) c = remap[c];
    return Colouring{std::move(assignment), next};
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    auto fail = [&](const std::string& what) -> void {
        throw parse_error("line " + std::to_string(lineno) + ": " + what);
    };

    if (!std::getline(in, line)) {
        lineno = 1;
        fail("missing header");
    }
    ++lineno;
    long long n = -1, m = -1;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra)) fail("malformed header, expected \"n m\"");
        if (n < 0 || m < 0) fail("negative count in header");
        if (n > 10'000'000 || m > 100'000'000) fail("header counts too large");
    }
    Graph g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        if (!std::getline(in, line)) {
            ++lineno;
            fail("expected " + std::to_string(m) + " edges, file ended early");
        }
        ++lineno;
        std::istringstream es(line);
        long long u, v;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra)) fail("malformed edge line, expected \"u v\"");
        if (u < 0 || u >= n || v < 0 || v >= n) fail("endpoint out of range");
        if (u == v) fail("self-loop");
        if (g.has_edge(static_cast<int>(u), static_cast<int>(v))) fail("duplicate edge");
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty()) fail("trailing content after declared edges");
    }
    return g;
}

std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& s) {
    InducedSubgraph r;
    r.to_sub.assign(g.vertex_count(), -1);
    for (int v : s) {
        if (v < 0 || v >= g.vertex_count())
            throw std::invalid_argument("induced_subgraph: vertex out of range");
        if (r.to_sub[v] != -1)
            throw std::invalid_argument("induced_subgraph: repeated vertex");
        r.to_sub[v] = 0;
    }
    r.to_host = s;
    std::sort(r.to_host.begin(), r.to_host.end());
    for (int i = 0; i < static_cast<int>(r.to_host.size()); ++i)
        r.to_sub[r.to_host[i]] = i;
    r.graph = Graph(static_cast<int>(r.to_host.size()));
    for (auto [u, v] : g.edges())
        if (r.to_sub[u] != -1 && r.to_sub[v] != -1)
            r.graph.add_edge(r.to_sub[u], r.to_sub[v]);
    return r;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::queue<int> q;
        q.push(s);
        comp[s] = id;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            out[id].push_back(v);
            for (int w : g.neighbours(v))
                if (comp[w] == -1) {
                    comp[w] = id;
                    q.push(w);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

bool is_connected(const Graph& g) {
    return g.vertex_count() <= 1 || connected_components(g).size() == 1;
}

ColouringReport verify_colouring(const Graph& g, const Colouring& col,
                                 ColourMode mode, int bound) {
    if (static_cast<int>(col.assignment.size()) != g.vertex_count())
        throw std::invalid_argument("colouring does not cover the graph");
    for (int c : col.assignment)
        if (c < 0 || c >= col.colours)
            throw std::invalid_argument("colour index out of range");

    ColouringReport rep;
    rep.ok = true;
    int n = g.vertex_count();
    std::vector<int> seen(n, 0);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        // monochromatic component of s
        std::vector<int> comp;
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comp.push_back(v);
            for (int w : g.neighbours(v))
                if (!seen[w] && col.assignment[w] == col.assignment[s]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        int maxdeg = 0;
        for (int v : comp) {
            int d = 0;
            for (int w : g.neighbours(v))
                if (col.assignment[w] == col.assignment[v]) ++d;
            maxdeg = std::max(maxdeg, d);
        }
        int size = static_cast<int>(comp.size());
        bool violates = (mode == ColourMode::clustering) ? size > bound
                                                         : maxdeg > bound;
        bool record = false;
        if (mode == ColourMode::clustering) {
            if (size > rep.worst_component_size) record = true;
        } else {
            if (maxdeg > rep.worst_max_degree) record = true;
        }
        rep.worst_component_size = std::max(rep.worst_component_size, size);
        rep.worst_max_degree = std::max(rep.worst_max_degree, maxdeg);
        if (violates && rep.ok) {
            rep.ok = false;
            rep.witness_component = comp;
        } else if (violates && record) {
            rep.witness_component = comp;
        }
    }
    return rep;
}

namespace {

int longest_path_from(const Graph& g, int v, std::uint64_t visited,
                      const std::vector<std::uint64_t>& adj) {
    int best = 1;
    std::uint64_t next = adj[v] & ~visited;
    while (next) {
        int w = std::countr_zero(next);
        next &= next - 1;
        best = std::max(
            best, 1 + longest_path_from(g, w, visited | (std::uint64_t{1} << w), adj));
    }
    return best;
}

}  // namespace

int longest_path_length(const Graph& g, int cap) {
    int n = g.vertex_count();
    if (n > cap)
        throw cap_exceeded("longest_path_length: " + std::to_string(n) +
                           " vertices exceeds cap " + std::to_string(cap) +
                           "; exact search is exponential, raise the cap only "
                           "for small instances");
    if (n == 0) return 0;
    auto adj = g.adjacency_masks();
    int best = 1;
    for (int v = 0; v < n; ++v)
        best = std::max(best,
                        longest_path_from(g, v, std::uint64_t{1} << v, adj));
    return best;
}

std::optional<std::string> verify_minor_model(const MinorModel& m) {
    int pn = m.pattern.vertex_count();
    if (static_cast<int>(m.branch_sets.size()) != pn)
        return "branch set count differs from pattern vertex count";
    std::vector<int> owner(m.host.vertex_count(), -1);
    for (int p = 0; p < pn; ++p) {
        const auto& bs = m.branch_sets[p];
        if (bs.empty()) return "branch set " + std::to_string(p) + " is empty";
        for (int v : bs) {
            if (v < 0 || v >= m.host.vertex_count())
                return "branch set " + std::to_string(p) + " has an out-of-range vertex";
            if (owner[v] != -1)
                return "branch sets " + std::to_string(owner[v]) + " and " +
                       std::to_string(p) + " overlap at vertex " + std::to_string(v);
            owner[v] = p;
        }
        auto sub = induced_subgraph(m.host, bs);
        if (!is_connected(sub.graph))
            return "branch set " + std::to_string(p) + " is disconnected";
    }
    for (auto [p, q] : m.pattern.edges()) {
        bool found = false;
        for (int u : m.branch_sets[p]) {
            for (int v : m.host.neighbours(u))
                if (owner[v] == q) {
                    found = true;
                    break;
                }
            if (found) break;
        }
        if (!found)
            return "pattern edge " + std::to_string(p) + "-" + std::to_string(q) +
                   " not realised between branch sets";
    }
    return std::nullopt;
}

}  // namespace cck
