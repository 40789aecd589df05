#include "cck/cluster.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace cck {

void validate_ranked_graph(const RankedGraph& rg, int d) {
    int n = rg.graph.vertex_count();
    if (static_cast<int>(rg.level.size()) != n ||
        static_cast<int>(rg.below.size()) != n)
        throw std::invalid_argument("ranked graph field sizes disagree");
    for (const auto& row : rg.below)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("order matrix is not square");
    for (int v = 0; v < n; ++v)
        if (rg.level[v] < 0 || rg.level[v] > d - 1)
            throw std::invalid_argument("level outside [0, d-1]");
    for (int u = 0; u < n; ++u) {
        if (rg.below[u][u])
            throw std::invalid_argument("order is not irreflexive");
        for (int v = 0; v < n; ++v) {
            if (rg.below[u][v] && rg.below[v][u])
                throw std::invalid_argument("order is not antisymmetric");
            if (rg.below[u][v] && rg.level[u] >= rg.level[v])
                throw std::invalid_argument("order not increasing along levels");
            for (int w = 0; w < n && rg.below[u][v]; ++w)
                if (rg.below[v][w] && !rg.below[u][w])
                    throw std::invalid_argument("order is not transitive");
        }
    }
}

namespace {

void encode_candidate(const RankedGraph& rg, const std::vector<int>& pos_to_orig,
                      std::string& out) {
    int n = rg.graph.vertex_count();
    out.clear();
    out += std::to_string(n);
    out += ';';
    for (int i = 0; i < n; ++i) {
        out += std::to_string(rg.level[pos_to_orig[i]]);
        out += ',';
    }
    out += ';';
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out += rg.graph.has_edge(pos_to_orig[i], pos_to_orig[j]) ? '1' : '0';
    out += ';';
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) out += rg.below[pos_to_orig[i]][pos_to_orig[j]] ? '1' : '0';
}

void level_block_search(const RankedGraph& rg, std::vector<int>& perm,
                        const std::vector<std::pair<int, int>>& blocks,
                        size_t b, std::string& best,
                        std::vector<int>* best_perm, std::string& scratch) {
    if (b == blocks.size()) {
        encode_candidate(rg, perm, scratch);
        if (best.empty() || scratch < best) {
            best = scratch;
            if (best_perm) *best_perm = perm;
        }
        return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(perm.begin() + lo, perm.begin() + hi);
    do {
        level_block_search(rg, perm, blocks, b + 1, best, best_perm, scratch);
    } while (std::next_permutation(perm.begin() + lo, perm.begin() + hi));
}

std::pair<std::string, std::vector<int>> canonical_ranked_impl(
    const RankedGraph& rg, bool want_perm) {
    int n = rg.graph.vertex_count();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        return std::pair{rg.level[a], a} < std::pair{rg.level[b], b};
    });
    std::vector<std::pair<int, int>> blocks;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && rg.level[perm[j]] == rg.level[perm[i]]) ++j;
        blocks.push_back({i, j});
        i = j;
    }
    std::string best, scratch;
    std::vector<int> best_perm;
    level_block_search(rg, perm, blocks, 0, best,
                       want_perm ? &best_perm : nullptr, scratch);
    return {std::move(best), std::move(best_perm)};
}

}  // namespace

std::string canonical_ranked_form(const RankedGraph& rg) {
    return canonical_ranked_impl(rg, false).first;
}

long long profile_bound(int d, int h, int k, int level) {
    if (d < 1 || h < 1 || k < 1 || level < 0 || level > d - 1)
        throw std::invalid_argument("profile_bound: parameters out of range");
    __int128 value = static_cast<__int128>(d + 1) * (h - 1);
    for (int i = 0; i < d - 1 - level; ++i) {
        value *= (k + 1);
        if (value > std::numeric_limits<long long>::max())
            throw std::overflow_error("profile_bound exceeds int64");
    }
    return static_cast<long long>(value);
}

SpliceResult splice(const RankedGraph& rg, int i, int k) {
    if (k < 1) throw std::invalid_argument("splice: k must be positive");
    int n = rg.graph.vertex_count();
    SpliceResult res;
    std::vector<std::vector<int>> id(n);  // source -> new ids (by copy)
    for (int v = 0; v < n; ++v) {
        if (rg.level[v] <= i) {
            id[v] = {static_cast<int>(res.origin.size())};
            res.origin.push_back({v, 0});
        } else {
            for (int c = 1; c <= k; ++c) {
                id[v].push_back(static_cast<int>(res.origin.size()));
                res.origin.push_back({v, c});
            }
        }
    }
    int m = static_cast<int>(res.origin.size());
    res.graph.graph = Graph(m);
    res.graph.level.resize(m);
    for (int nv = 0; nv < m; ++nv)
        res.graph.level[nv] = rg.level[res.origin[nv].first];
    for (auto [v, w] : rg.graph.edges()) {
        bool vlow = rg.level[v] <= i, wlow = rg.level[w] <= i;
        if (vlow && wlow) {
            res.graph.graph.add_edge(id[v][0], id[w][0]);
        } else if (vlow != wlow) {
            int lo = vlow ? v : w, hi = vlow ? w : v;
            for (int c = 0; c < k; ++c)
                res.graph.graph.add_edge(id[lo][0], id[hi][c]);
        } else {
            for (int c = 0; c < k; ++c)
                res.graph.graph.add_edge(id[v][c], id[w][c]);
        }
    }
    res.graph.below.assign(m, std::vector<char>(m, 0));
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w) {
            if (!rg.below[v][w]) continue;
            bool vlow = rg.level[v] <= i, wlow = rg.level[w] <= i;
            if (vlow && wlow) {
                res.graph.below[id[v][0]][id[w][0]] = 1;
            } else if (vlow && !wlow) {
                for (int c = 0; c < k; ++c)
                    res.graph.below[id[v][0]][id[w][c]] = 1;
            } else if (!vlow && !wlow) {
                for (int c = 0; c < k; ++c)
                    res.graph.below[id[v][c]][id[w][c]] = 1;
            }
            // a vertex below another can never sit at a higher level
        }
    return res;
}

namespace {

struct HostView {
    std::vector<int> verts;                   // sorted host vertices of T_v^+
    std::vector<int> level;                   // per local index
    std::vector<std::vector<char>> adj;       // local adjacency
    std::vector<std::vector<char>> strict_anc;  // [a][b]: a strict ancestor of b
};

HostView host_view(const Graph& g, const EliminationTree& e, int v) {
    HostView hv;
    hv.verts = subtree_plus(e, v);
    int m = static_cast<int>(hv.verts.size());
    hv.level.resize(m);
    hv.adj.assign(m, std::vector<char>(m, 0));
    hv.strict_anc.assign(m, std::vector<char>(m, 0));
    std::vector<int> local(e.tree.n, -1);
    for (int i = 0; i < m; ++i) local[hv.verts[i]] = i;
    for (int i = 0; i < m; ++i) {
        hv.level[i] = e.level[hv.verts[i]];
        for (int x = hv.verts[i]; x != e.tree.root;) {
            x = e.tree.parent[x];
            if (local[x] != -1) hv.strict_anc[local[x]][i] = 1;
        }
        for (int w : g.neighbours(hv.verts[i]))
            if (local[w] != -1) hv.adj[i][local[w]] = 1;
    }
    return hv;
}

bool contained_rec(const RankedGraph& rg, const HostView& hv,
                   const std::vector<int>& order, size_t pos,
                   std::vector<int>& phi, std::vector<char>& used,
                   long long& budget) {
    if (pos == order.size()) return true;
    if (--budget < 0) return false;
    int x = order[pos];
    for (int cand = 0; cand < static_cast<int>(hv.verts.size()); ++cand) {
        if (used[cand] || hv.level[cand] != rg.level[x]) continue;
        bool ok = true;
        for (size_t p = 0; p < pos && ok; ++p) {
            int y = order[p];
            int img = phi[y];
            if (rg.graph.has_edge(x, y) && !hv.adj[cand][img]) ok = false;
            if (ok && rg.below[x][y] != hv.strict_anc[cand][img]) ok = false;
            if (ok && rg.below[y][x] != hv.strict_anc[img][cand]) ok = false;
        }
        if (!ok) continue;
        phi[x] = cand;
        used[cand] = 1;
        if (contained_rec(rg, hv, order, pos + 1, phi, used, budget)) return true;
        used[cand] = 0;
        phi[x] = -1;
        if (budget < 0) return false;
    }
    return false;
}

}  // namespace

ContainmentSearch contained(const RankedGraph& rg, const Graph& g,
                            const EliminationTree& e, int v,
                            long long node_budget) {
    validate_ranked_graph(rg, e.depth());
    auto hv = host_view(g, e, v);
    int n = rg.graph.vertex_count();
    ContainmentSearch out;
    if (n == 0) {
        out.status = ContainmentSearch::Status::found;
        return out;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair{rg.level[a], a} < std::pair{rg.level[b], b};
    });
    std::vector<int> phi(n, -1);
    std::vector<char> used(hv.verts.size(), 0);
    long long budget = node_budget;
    bool found = contained_rec(rg, hv, order, 0, phi, used, budget);
    if (found) {
        out.status = ContainmentSearch::Status::found;
        out.phi.resize(n);
        for (int x = 0; x < n; ++x) out.phi[x] = hv.verts[phi[x]];
    } else if (budget < 0) {
        out.status = ContainmentSearch::Status::out_of_budget;
    } else {
        out.status = ContainmentSearch::Status::absent;
    }
    return out;
}

RankedGraph ranked_from_hosts(const Graph& g, const EliminationTree& e,
                              const std::vector<int>& hosts) {
    int m = static_cast<int>(hosts.size());
    RankedGraph rg;
    rg.graph = Graph(m);
    rg.level.resize(m);
    rg.below.assign(m, std::vector<char>(m, 0));
    for (int i = 0; i < m; ++i) rg.level[i] = e.level[hosts[i]];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i < j && g.has_edge(hosts[i], hosts[j]))
                rg.graph.add_edge(i, j);
            if (i != j && hosts[i] != hosts[j] &&
                e.tree.is_ancestor(hosts[i], hosts[j]))
                rg.below[i][j] = 1;
        }
    return rg;
}

bool Profile::same_entries(const Profile& o) const {
    if (entries.size() != o.entries.size()) return false;
    auto a = entries.begin();
    auto b = o.entries.begin();
    for (; a != entries.end(); ++a, ++b)
        if (a->first != b->first) return false;
    return true;
}

namespace {

void enumerate_subsets(const std::vector<int>& pool, int max_size,
                       std::vector<int>& cur, size_t start,
                       const std::function<void(const std::vector<int>&)>& fn) {
    if (!cur.empty()) fn(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (size_t i = start; i < pool.size(); ++i) {
        cur.push_back(pool[i]);
        enumerate_subsets(pool, max_size, cur, i + 1, fn);
        cur.pop_back();
    }
}

}  // namespace

Profile compute_profile(const Graph& g, const EliminationTree& e, int v,
                        int h, int k, int cap) {
    if (cap < 1) throw std::invalid_argument("compute_profile: cap must be >= 1");
    Profile pr;
    pr.owner = v;
    int d = e.depth();
    long long nbound;
    try {
        nbound = profile_bound(d, h, k, e.level[v]);
    } catch (const std::overflow_error&) {
        nbound = std::numeric_limits<long long>::max();
    }
    pr.effective_bound = static_cast<int>(std::min<long long>(nbound, cap));
    if (pr.effective_bound < 1) pr.effective_bound = 1;

    auto pool = subtree_plus(e, v);
    std::vector<int> cur;
    enumerate_subsets(pool, pr.effective_bound, cur, 0,
                      [&](const std::vector<int>& hosts) {
                          RankedGraph rg = ranked_from_hosts(g, e, hosts);
                          auto [canon, perm] = canonical_ranked_impl(rg, true);
                          auto it = pr.entries.find(canon);
                          if (it != pr.entries.end()) return;
                          std::vector<int> witness(hosts.size());
                          for (size_t i = 0; i < hosts.size(); ++i)
                              witness[i] = hosts[perm[i]];
                          pr.entries.emplace(std::move(canon), std::move(witness));
                      });
    return pr;
}

GroupPartition group_partition(const Graph& g, const EliminationTree& e,
                               const std::vector<Profile>& profiles, int k) {
    int n = e.tree.n;
    if (static_cast<int>(profiles.size()) != n)
        throw std::invalid_argument("group_partition: need one profile per vertex");
    auto ch = e.tree.children();
    for (auto& c : ch) std::sort(c.begin(), c.end());

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair{-e.level[a], a} < std::pair{-e.level[b], b};
    });

    std::vector<int> group_of(n, -1);
    std::vector<std::vector<int>> members;
    std::vector<int> root_of;

    for (int v : order) {
        std::vector<int> merge_with;  // children whose groups join v
        if (!ch[v].empty()) {
            const auto& kids = ch[v];
            for (int y : kids) {
                int count = 0;
                for (int z : kids)
                    if (profiles[y].same_entries(profiles[z])) ++count;
                if (count >= 1 && count <= k - 1) merge_with.push_back(y);
            }
        }
        if (merge_with.empty()) {
            group_of[v] = static_cast<int>(members.size());
            members.push_back({v});
            root_of.push_back(v);
        } else {
            int id = static_cast<int>(members.size());
            members.push_back({v});
            root_of.push_back(v);
            group_of[v] = id;
            for (int y : merge_with) {
                int old = group_of[y];
                for (int x : members[old]) {
                    group_of[x] = id;
                    members[id].push_back(x);
                }
                members[old].clear();
            }
        }
    }

    // compact dead (emptied) group ids, ordered by (root level, root index)
    std::vector<int> alive;
    for (int i = 0; i < static_cast<int>(members.size()); ++i)
        if (!members[i].empty()) alive.push_back(i);
    std::sort(alive.begin(), alive.end(), [&](int a, int b) {
        return std::pair{e.level[root_of[a]], root_of[a]} <
               std::pair{e.level[root_of[b]], root_of[b]};
    });
    GroupPartition gp;
    gp.group_of.assign(n, -1);
    for (int newid = 0; newid < static_cast<int>(alive.size()); ++newid) {
        int old = alive[newid];
        auto m = members[old];
        std::sort(m.begin(), m.end());
        for (int x : m) gp.group_of[x] = newid;
        gp.members.push_back(std::move(m));
        gp.root_of.push_back(root_of[old]);
    }

    // above-neighbour lists via G-edges across groups
    int gcount = static_cast<int>(gp.members.size());
    std::vector<std::set<int>> above(gcount);
    for (auto [u, w] : g.edges()) {
        int gu = gp.group_of[u], gw = gp.group_of[w];
        if (gu == gw) continue;
        int ru = gp.root_of[gu], rw = gp.root_of[gw];
        if (e.tree.is_ancestor(ru, rw)) {
            above[gw].insert(gu);
        } else if (e.tree.is_ancestor(rw, ru)) {
            above[gu].insert(gw);
        } else {
            throw std::logic_error(
                "G-edge between groups with incomparable roots");
        }
    }
    gp.above_neighbours.resize(gcount);
    for (int i = 0; i < gcount; ++i)
        gp.above_neighbours[i].assign(above[i].begin(), above[i].end());
    return gp;
}

namespace {

void verify_embedding(const RankedGraph& rg, const std::vector<int>& phi,
                      const Graph& g, const EliminationTree& e) {
    int n = rg.graph.vertex_count();
    std::set<int> image(phi.begin(), phi.end());
    if (static_cast<int>(image.size()) != n)
        throw std::logic_error("spliced embedding is not injective");
    for (auto [x, y] : rg.graph.edges())
        if (!g.has_edge(phi[x], phi[y]))
            throw std::logic_error("spliced embedding misses a graph edge");
    for (int x = 0; x < n; ++x) {
        if (rg.level[x] != e.level[phi[x]])
            throw std::logic_error("spliced embedding breaks levels");
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            bool anc = phi[x] != phi[y] && e.tree.is_ancestor(phi[x], phi[y]);
            if (static_cast<bool>(rg.below[x][y]) != anc)
                throw std::logic_error("spliced embedding breaks the order");
        }
    }
}

Colouring group_first_fit(const Graph& g, const GroupPartition& gp, int h) {
    int gcount = static_cast<int>(gp.members.size());
    std::vector<int> colour_of_group(gcount, -1);
    for (int gi = 0; gi < gcount; ++gi) {
        // groups are ordered by root distance already
        std::vector<char> taken(h, 0);
        for (int ga : gp.above_neighbours[gi]) {
            if (colour_of_group[ga] < 0)
                throw std::logic_error("group above coloured after group below");
            taken[colour_of_group[ga]] = 1;
        }
        int c = 0;
        while (c < h - 1 && taken[c]) ++c;
        if (c >= h - 1)
            throw std::logic_error("first-fit exceeded h-1 colours");
        colour_of_group[gi] = c;
    }
    std::vector<int> assignment(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        assignment[v] = colour_of_group[gp.group_of[v]];
    return make_colouring(std::move(assignment));
}

}  // namespace

ClusterOutcome colour_or_minor(const Graph& g, const EliminationTree& e,
                               int h, int k, int cap, long long node_budget) {
    if (h < 1 || k < 1) throw std::invalid_argument("require h >= 1 and k >= 1");
    if (!is_connected(g))
        throw std::invalid_argument("colour_or_minor: graph disconnected");
    validate_elimination_tree(g, e);
    if (!is_normalized(g, e))
        throw std::invalid_argument(
            "colour_or_minor: tree not normalized (some G[T_v] disconnected)");

    int n = g.vertex_count();
    std::vector<Profile> profiles;
    profiles.reserve(n);
    for (int v = 0; v < n; ++v)
        profiles.push_back(compute_profile(g, e, v, h, k, cap));
    GroupPartition gp = group_partition(g, e, profiles, k);

    int x0 = -1;
    for (int gi = 0; gi < static_cast<int>(gp.members.size()); ++gi) {
        if (static_cast<int>(gp.above_neighbours[gi].size()) >= h - 1) {
            if (x0 == -1 || gp.root_of[gi] < gp.root_of[x0]) x0 = gi;
        }
    }

    ClusterOutcome out;
    if (x0 == -1) {
        // colouring branch
        out.kind = ClusterOutcome::Kind::colouring;
        out.colouring = group_first_fit(g, gp, h);
        out.groups = gp.members;
        auto rep = verify_colouring(g, out.colouring, ColourMode::clustering, n);
        out.max_cluster = rep.worst_component_size;
        if (out.colouring.colours > h - 1)
            throw std::logic_error("colouring branch used too many colours");
        // every monochromatic component must stay inside one group
        std::vector<char> seen(n, 0);
        for (int s = 0; s < n; ++s) {
            if (seen[s]) continue;
            std::queue<int> q;
            q.push(s);
            seen[s] = 1;
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                if (gp.group_of[v] != gp.group_of[s])
                    throw std::logic_error(
                        "monochromatic component crosses group boundary");
                for (int w : g.neighbours(v))
                    if (!seen[w] && out.colouring.assignment[w] ==
                                        out.colouring.assignment[s]) {
                        seen[w] = 1;
                        q.push(w);
                    }
            }
        }
        return out;
    }

    // minor branch
    out.minor_h = h;
    out.minor_k = k;
    RootedTree pattern_tree = complete_kary_tree(h, k);
    Graph pattern = weak_closure(pattern_tree);

    if (h == 1) {
        out.kind = ClusterOutcome::Kind::minor;
        out.minor = MinorModel{g, pattern, {{gp.root_of[x0]}}};
        if (auto bad = verify_minor_model(out.minor))
            throw std::logic_error("trivial minor model rejected: " + *bad);
        return out;
    }

    // groups above x0, earliest root indices, ordered deepest-first
    std::vector<int> chosen(gp.above_neighbours[x0].begin(),
                            gp.above_neighbours[x0].end());
    std::sort(chosen.begin(), chosen.end(), [&](int a, int b) {
        return gp.root_of[a] < gp.root_of[b];
    });
    chosen.resize(h - 1);
    std::sort(chosen.begin(), chosen.end(), [&](int a, int b) {
        return e.level[gp.root_of[a]] > e.level[gp.root_of[b]];
    });

    int v0 = gp.root_of[x0];
    std::vector<int> vroots{v0};
    for (int gi : chosen) vroots.push_back(gp.root_of[gi]);

    // w_i in X_i adjacent to z_i in X_0, both smallest-index
    std::vector<int> wvert(h), zvert(h);
    for (int i = 1; i <= h - 1; ++i) {
        wvert[i] = zvert[i] = -1;
        for (int w : gp.members[chosen[i - 1]]) {
            for (int z : gp.members[x0])
                if (g.has_edge(w, z)) {
                    wvert[i] = w;
                    zvert[i] = z;
                    break;
                }
            if (wvert[i] != -1) break;
        }
        if (wvert[i] == -1)
            throw std::logic_error("adjacent group without a connecting edge");
    }

    // H_0: the z_j-to-root paths carrying only the z_j w_j edges
    std::vector<int> hosts;
    for (int j = 1; j <= h - 1; ++j) {
        int x = zvert[j];
        hosts.push_back(x);
        while (x != e.tree.root) {
            x = e.tree.parent[x];
            hosts.push_back(x);
        }
    }
    std::sort(hosts.begin(), hosts.end());
    hosts.erase(std::unique(hosts.begin(), hosts.end()), hosts.end());
    std::vector<int> host_index(n, -1);
    for (size_t i = 0; i < hosts.size(); ++i) host_index[hosts[i]] = static_cast<int>(i);

    RankedGraph cur = ranked_from_hosts(g, e, hosts);
    cur.graph = Graph(static_cast<int>(hosts.size()));
    for (int j = 1; j <= h - 1; ++j)
        cur.graph.add_edge(host_index[zvert[j]], host_index[wvert[j]]);

    std::vector<int> phi = hosts;                       // identity embedding
    std::vector<int> base(hosts.size());                // H_0 origin of each vertex
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> digits(hosts.size());

    auto ch = e.tree.children();
    for (auto& c : ch) std::sort(c.begin(), c.end());

    for (int step = 0; step <= h - 2; ++step) {
        int vi = vroots[step];
        int u = e.tree.parent[vi];
        if (u == vi) throw std::logic_error("splice step reached the root early");

        std::vector<int> cands;
        for (int y : ch[u])
            if (profiles[y].same_entries(profiles[vi])) cands.push_back(y);
        if (std::find(cands.begin(), cands.end(), vi) == cands.end() ||
            static_cast<int>(cands.size()) < k)
            throw std::logic_error("group rule promised k equal-profile siblings");

        // embeddings of the current ranked graph into each sibling's T_y^+
        std::vector<std::vector<int>> sibling_phi;
        sibling_phi.push_back(phi);  // y_1 = v_i, inductive embedding
        for (int y : cands) {
            if (y == vi) continue;
            if (static_cast<int>(sibling_phi.size()) == k) break;
            auto found = contained(cur, g, e, y, node_budget);
            if (found.status == ContainmentSearch::Status::out_of_budget) {
                out.kind = ClusterOutcome::Kind::cap_limited;
                out.reason = "containment search exceeded its node budget "
                             "while extending the minor";
                return out;
            }
            if (found.status == ContainmentSearch::Status::found)
                sibling_phi.push_back(std::move(found.phi));
        }
        if (static_cast<int>(sibling_phi.size()) < k) {
            out.kind = ClusterOutcome::Kind::cap_limited;
            out.reason =
                "profile cap " + std::to_string(cap) +
                " equated siblings that do not all contain the spliced graph";
            return out;
        }

        auto spliced = splice(cur, e.level[u], k);
        std::vector<int> nphi(spliced.origin.size());
        std::vector<int> nbase(spliced.origin.size());
        std::vector<std::vector<int>> ndigits(spliced.origin.size());
        for (size_t nv = 0; nv < spliced.origin.size(); ++nv) {
            auto [src, copy] = spliced.origin[nv];
            nphi[nv] = copy == 0 ? phi[src] : sibling_phi[copy - 1][src];
            nbase[nv] = base[src];
            ndigits[nv] = digits[src];
            ndigits[nv].push_back(copy);
        }
        cur = std::move(spliced.graph);
        phi = std::move(nphi);
        base = std::move(nbase);
        digits = std::move(ndigits);
        verify_embedding(cur, phi, g, e);
    }

    // assemble the branch sets following the copy digits
    int pat_n = pattern.vertex_count();
    std::vector<std::vector<int>> branch(pat_n);
    int v0_base = host_index[v0];
    std::vector<int> wbase(h);
    for (int j = 1; j <= h - 1; ++j) wbase[j] = host_index[wvert[j]];

    auto pattern_id = [&](const std::vector<int>& dg, int upto) {
        // digits consumed from the last splice down to position `upto`
        long long id = 0;
        for (int t = h - 2; t >= upto; --t) {
            if (dg[t] < 1 || dg[t] > k)
                throw std::logic_error("copy digit out of range in minor assembly");
            id = id * k + dg[t];
        }
        return static_cast<int>(id);
    };

    for (size_t x = 0; x < base.size(); ++x) {
        if (base[x] == v0_base) {
            branch[pattern_id(digits[x], 0)] = subtree_vertices(e, phi[x]);
            continue;
        }
        for (int j = 1; j <= h - 1; ++j) {
            if (base[x] != wbase[j]) continue;
            bool zeros = true;
            for (int t = 0; t < j; ++t) zeros &= digits[x][t] == 0;
            if (!zeros)
                throw std::logic_error("kept vertex acquired a nonzero copy digit");
            branch[pattern_id(digits[x], j)] = {phi[x]};
        }
    }
    for (int p = 0; p < pat_n; ++p)
        if (branch[p].empty())
            throw std::logic_error("minor assembly left a branch set empty");

    out.kind = ClusterOutcome::Kind::minor;
    out.minor = MinorModel{g, std::move(pattern), std::move(branch)};
    if (auto bad = verify_minor_model(out.minor))
        throw std::logic_error("constructed minor model rejected: " + *bad);
    return out;
}

TowerValue theoretical_cluster_bound(int d, int h, int k, int level) {
    if (d < 1 || h < 1 || k < 1 || level < 0 || level > d - 1)
        throw std::invalid_argument("theoretical_cluster_bound: bad parameters");
    TowerValue tv;
    if (level == d - 1) {
        tv.exact = mpz_class(1);
        tv.description = "1";
        return tv;
    }
    if (k == 1) {
        tv.exact = mpz_class(0);
        tv.description = "0";
        return tv;
    }
    int factors = d - 1 - level;
    mpz_class exponent_sum = 0;
    bool representable = true;
    std::string per_level;
    for (int j = level + 1; j <= d - 1; ++j) {
        long long nj;
        try {
            nj = profile_bound(d, h, k, j);
        } catch (const std::overflow_error&) {
            nj = -1;
        }
        if (!per_level.empty()) per_level += " * ";
        if (nj < 0 || nj > 20000) {
            per_level += "2^(2^C(N,2)*d^N*3^C(N,2)) with N=N_" + std::to_string(j);
            representable = false;
            continue;
        }
        mpz_class c2 = mpz_class(static_cast<long>(nj)) *
                       static_cast<long>(nj - 1) / 2;
        if (c2 > 40000) {
            per_level += "2^(2^" + c2.get_str() + "*" + std::to_string(d) + "^" +
                         std::to_string(nj) + "*3^" + c2.get_str() + ")";
            representable = false;
            continue;
        }
        mpz_class e_j = 1;
        mpz_mul_2exp(e_j.get_mpz_t(), e_j.get_mpz_t(), c2.get_ui());
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d),
                      static_cast<unsigned long>(nj));
        e_j *= p;
        mpz_ui_pow_ui(p.get_mpz_t(), 3, c2.get_ui());
        e_j *= p;
        per_level += "2^" + e_j.get_str();
        exponent_sum += e_j;
        if (exponent_sum > static_cast<long>(kTowerExponentBitLimit))
            representable = false;
    }
    tv.description =
        "(k-1)^" + std::to_string(factors) + " * " + per_level;
    if (representable) {
        mpz_class value;
        mpz_ui_pow_ui(value.get_mpz_t(), static_cast<unsigned long>(k - 1),
                      static_cast<unsigned long>(factors));
        mpz_mul_2exp(value.get_mpz_t(), value.get_mpz_t(), exponent_sum.get_ui());
        tv.exact = value;
    }
    return tv;
}

}  // namespace cck
