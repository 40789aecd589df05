#include "cck/fractional.hpp"

#include "cck/cluster.hpp"
#include "cck/elimination.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace cck {

mpq_class parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        mpq_class q;
        if (slash == std::string::npos) {
            q = mpq_class(mpz_class(s));
        } else {
            mpz_class num(s.substr(0, slash));
            mpz_class den(s.substr(slash + 1));
            if (den == 0) throw std::invalid_argument("zero denominator");
            q = mpq_class(num, den);
        }
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw parse_error("not a rational: \"" + s + "\"");
    }
}

std::string rational_to_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<std::string> verify_fractional(const Graph& g,
                                             const FractionalColouring& fc) {
    if (fc.sets.size() != fc.weights.size())
        return "set and weight counts differ";
    mpq_class sum = 0;
    for (size_t i = 0; i < fc.sets.size(); ++i) {
        if (fc.weights[i] < 0 || fc.weights[i] > 1)
            return "weight " + std::to_string(i) + " outside [0,1]";
        sum += fc.weights[i];
        auto sub = induced_subgraph(g, fc.sets[i]);
        for (const auto& comp : connected_components(sub.graph)) {
            if (fc.mode == ColourMode::clustering) {
                if (static_cast<int>(comp.size()) > fc.bound)
                    return "set " + std::to_string(i) +
                           " has a component larger than the clustering bound";
            } else {
                for (int v : comp) {
                    int deg = 0;
                    for (int w : sub.graph.neighbours(v))
                        if (std::find(comp.begin(), comp.end(), w) != comp.end()) ++deg;
                    if (deg > fc.bound)
                        return "set " + std::to_string(i) +
                               " has a vertex above the defect bound";
                }
            }
        }
    }
    if (sum > fc.total) return "weights sum beyond the declared total";
    for (int v = 0; v < g.vertex_count(); ++v) {
        mpq_class cover = 0;
        for (size_t i = 0; i < fc.sets.size(); ++i)
            if (std::find(fc.sets[i].begin(), fc.sets[i].end(), v) !=
                fc.sets[i].end())
                cover += fc.weights[i];
        if (cover < 1)
            return "coverage < 1 at vertex " + std::to_string(v);
    }
    return std::nullopt;
}

std::optional<std::string> verify_fragility_cover(const Graph& g,
                                                  const FragilityCover& cover,
                                                  int td_cap) {
    if (cover.delta < 0 || cover.delta >= 1) return "delta outside [0,1)";
    long s = static_cast<long>(cover.sets.size());
    if (s == 0) return "cover has no sets";
    for (size_t i = 0; i < cover.sets.size(); ++i) {
        auto sub = induced_subgraph(g, cover.sets[i]);
        if (sub.graph.vertex_count() == 0) continue;
        if (sub.graph.vertex_count() <= td_cap) {
            int td = treedepth_exact(sub.graph, td_cap).treedepth;
            if (td > cover.treedepth_bound)
                return "set " + std::to_string(i) + " has treedepth " +
                       std::to_string(td) + " above the declared bound";
        }
        // beyond the oracle cap the declared bound is taken on trust
    }
    mpq_class need = (1 - cover.delta) * s;
    for (int v = 0; v < g.vertex_count(); ++v) {
        long hits = 0;
        for (const auto& set : cover.sets)
            if (std::find(set.begin(), set.end(), v) != set.end()) ++hits;
        if (mpq_class(hits) < need)
            return "vertex " + std::to_string(v) + " covered only " +
                   std::to_string(hits) + " times";
    }
    return std::nullopt;
}

namespace {

// ---- exact rational simplex for the covering LP ----------------------

// min sum x_j  s.t.  A x >= 1, x >= 0, columns = candidate sets.
// Two-phase dense tableau with Bland's rule.
struct CoverLp {
    int rows;                       // one per vertex
    int cols;                       // structural columns
    std::vector<std::vector<mpq_class>> tab;  // rows x (cols + 2*rows)
    std::vector<mpq_class> rhs;
    std::vector<int> basis;

    int total() const { return cols + 2 * rows; }
    int surplus(int r) const { return cols + r; }
    int artificial(int r) const { return cols + rows + r; }

    void pivot(int pr, int pc) {
        mpq_class inv = tab[pr][pc];
        for (auto& x : tab[pr]) x /= inv;
        rhs[pr] /= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == pr || tab[r][pc] == 0) continue;
            mpq_class f = tab[r][pc];
            for (int c = 0; c < total(); ++c) tab[r][c] -= f * tab[pr][c];
            rhs[r] -= f * rhs[pr];
        }
        basis[pr] = pc;
    }

    // runs simplex for the given cost vector; returns optimum
    mpq_class optimise(const std::vector<mpq_class>& cost,
                       const std::vector<char>& allowed) {
        while (true) {
            // reduced costs via the basic cost multipliers
            int enter = -1;
            for (int c = 0; c < total() && enter == -1; ++c) {
                if (!allowed[c]) continue;
                bool basic = false;
                for (int r = 0; r < rows; ++r)
                    if (basis[r] == c) basic = true;
                if (basic) continue;
                mpq_class red = cost[c];
                for (int r = 0; r < rows; ++r)
                    red -= cost[basis[r]] * tab[r][c];
                if (red < 0) enter = c;  // Bland: first improving column
            }
            if (enter == -1) break;
            int leave = -1;
            mpq_class best_ratio;
            for (int r = 0; r < rows; ++r) {
                if (tab[r][enter] <= 0) continue;
                mpq_class ratio = rhs[r] / tab[r][enter];
                if (leave == -1 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[r] < basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == -1)
                throw std::logic_error("covering LP unbounded");
            pivot(leave, enter);
        }
        mpq_class z = 0;
        for (int r = 0; r < rows; ++r) z += cost[basis[r]] * rhs[r];
        return z;
    }
};

std::vector<std::uint32_t> maximal_admissible_sets(const Graph& g, int d) {
    int n = g.vertex_count();
    auto adj64 = g.adjacency_masks();
    std::vector<std::uint32_t> adj(n);
    for (int v = 0; v < n; ++v) adj[v] = static_cast<std::uint32_t>(adj64[v]);
    std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<char> adm(std::size_t{1} << n, 0);
    for (std::uint32_t s = 1; s <= full; ++s) {
        // max induced degree <= d
        bool ok = true;
        std::uint32_t it = s;
        while (it && ok) {
            int v = std::countr_zero(it);
            it &= it - 1;
            if (std::popcount(adj[v] & s) > d) ok = false;
        }
        adm[s] = ok;
        if (s == full) break;
    }
    std::vector<std::uint32_t> maximal;
    for (std::uint32_t s = 1; s <= full; ++s) {
        if (!adm[s]) {
            if (s == full) break;
            continue;
        }
        bool is_max = true;
        for (int v = 0; v < n && is_max; ++v)
            if (!((s >> v) & 1) && adm[s | (1u << v)]) is_max = false;
        if (is_max) maximal.push_back(s);
        if (s == full) break;
    }
    return maximal;
}

}  // namespace

LpLowerResult defect_lp_lower(const Graph& g, int d, int cap) {
    int n = g.vertex_count();
    if (n > cap)
        throw cap_exceeded("defect_lp_lower: " + std::to_string(n) +
                           " vertices exceeds cap " + std::to_string(cap));
    if (n > 24)
        throw cap_exceeded("defect_lp_lower: subset enumeration infeasible beyond 24 vertices");
    if (d < 0) throw std::invalid_argument("negative defect");
    LpLowerResult res;
    if (n == 0) {
        res.value = 0;
        return res;
    }
    auto sets = maximal_admissible_sets(g, d);
    int m = static_cast<int>(sets.size());

    CoverLp lp;
    lp.rows = n;
    lp.cols = m;
    lp.tab.assign(n, std::vector<mpq_class>(lp.total(), 0));
    lp.rhs.assign(n, 1);
    lp.basis.resize(n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < m; ++c)
            if ((sets[c] >> r) & 1) lp.tab[r][c] = 1;
        lp.tab[r][lp.surplus(r)] = -1;
        lp.tab[r][lp.artificial(r)] = 1;
        lp.basis[r] = lp.artificial(r);
    }

    std::vector<char> allowed(lp.total(), 1);
    std::vector<mpq_class> phase1(lp.total(), 0);
    for (int r = 0; r < n; ++r) phase1[lp.artificial(r)] = 1;
    mpq_class infeas = lp.optimise(phase1, allowed);
    if (infeas != 0)
        throw std::logic_error("covering LP infeasible (singletons admissible)");

    for (int r = 0; r < n; ++r) allowed[lp.artificial(r)] = 0;
    std::vector<mpq_class> phase2(lp.total(), 0);
    for (int c = 0; c < m; ++c) phase2[c] = 1;
    res.value = lp.optimise(phase2, allowed);

    std::vector<mpq_class> x(m, 0);
    for (int r = 0; r < n; ++r)
        if (lp.basis[r] < m) x[lp.basis[r]] = lp.rhs[r];
    mpq_class check = 0;
    for (int c = 0; c < m; ++c) {
        if (x[c] == 0) continue;
        check += x[c];
        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if ((sets[c] >> v) & 1) verts.push_back(v);
        res.sets.push_back(std::move(verts));
        res.weights.push_back(x[c]);
    }
    if (check != res.value)
        throw std::logic_error("simplex solution does not match its optimum");
    for (int v = 0; v < n; ++v) {
        mpq_class cover = 0;
        for (size_t i = 0; i < res.sets.size(); ++i)
            if (std::find(res.sets[i].begin(), res.sets[i].end(), v) !=
                res.sets[i].end())
                cover += res.weights[i];
        if (cover < 1) throw std::logic_error("simplex solution uncovers a vertex");
    }
    return res;
}

CertifyResult certify_lower_bound(int h, int k, int d, int cap) {
    if (h < 1 || k < 1 || d < 0)
        throw std::invalid_argument("certify_lower_bound: bad parameters");
    Graph g = closure(complete_kary_tree(h, k, cap));
    if (g.vertex_count() > cap)
        throw cap_exceeded("certify_lower_bound: closure above LP cap");
    CertifyResult res;
    res.lp = defect_lp_lower(g, d, cap).value;
    res.bound = mpq_class(h) - mpq_class(h - 1) * d / k;
    res.ok = res.lp >= res.bound;
    return res;
}

namespace {

struct ExistsSearch {
    const Graph& g;
    int m;
    ColourMode mode;
    int bound;
    long long budget;
    long long nodes = 0;
    std::vector<int> colour;
    std::vector<int> same_degree;  // same-colour degree among assigned
    bool exhausted = false;

    bool feasible_after(int v) {
        if (mode == ColourMode::defect) {
            for (int w : g.neighbours(v)) {
                if (w > v || colour[w] != colour[v]) continue;
                if (++same_degree[w] > bound) return false;
                if (++same_degree[v] > bound) return false;
            }
            return true;
        }
        // clustering: size of v's monochromatic component within the prefix
        int size = 0;
        std::vector<int> stack{v};
        std::vector<char> seen(v + 1, 0);
        seen[v] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (++size > bound) return false;
            for (int w : g.neighbours(x))
                if (w <= v && !seen[w] && colour[w] == colour[v]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        return true;
    }

    bool search(int v, int used) {
        if (v == g.vertex_count()) return true;
        if (++nodes > budget) {
            exhausted = true;
            return false;
        }
        int limit = std::min(m - 1, used);  // one fresh colour at most
        for (int c = 0; c <= limit; ++c) {
            colour[v] = c;
            std::vector<int> saved;
            if (mode == ColourMode::defect) saved = same_degree;
            if (feasible_after(v)) {
                if (search(v + 1, std::max(used, c + 1))) return true;
                if (exhausted) return false;
            }
            if (mode == ColourMode::defect) same_degree = std::move(saved);
            colour[v] = -1;
        }
        return false;
    }
};

}  // namespace

ExistsResult exists_colouring(const Graph& g, int colours, ColourMode mode,
                              int bound, long long budget) {
    if (colours < 1) throw std::invalid_argument("need at least one colour");
    ExistsResult res;
    if (g.vertex_count() == 0) {
        res.status = ExistsResult::Status::yes;
        res.witness = Colouring{{}, 0};
        return res;
    }
    ExistsSearch s{g, colours, mode, bound, budget, 0, {}, {}, false};
    s.colour.assign(g.vertex_count(), -1);
    s.same_degree.assign(g.vertex_count(), 0);
    bool found = s.search(0, 0);
    res.nodes = s.nodes;
    if (found) {
        res.status = ExistsResult::Status::yes;
        res.witness = make_colouring(s.colour);
        auto rep = verify_colouring(g, res.witness, mode, bound);
        if (!rep.ok) throw std::logic_error("exists_colouring witness rejected");
    } else if (s.exhausted) {
        res.status = ExistsResult::Status::out_of_budget;
    } else {
        res.status = ExistsResult::Status::no;
    }
    return res;
}

namespace {

struct MinorSearchState {
    const Graph& host;
    const Graph& pattern;
    std::vector<std::uint64_t> hadj;
    std::vector<int> order;  // pattern vertices, most constrained first
    std::vector<std::uint64_t> branch;
    long long budget;
    long long nodes = 0;
    bool exhausted = false;

    std::uint64_t neighbourhood(std::uint64_t mask) const {
        std::uint64_t nb = 0;
        std::uint64_t it = mask;
        while (it) {
            int v = std::countr_zero(it);
            it &= it - 1;
            nb |= hadj[v];
        }
        return nb & ~mask;
    }

    void connected_subsets(std::uint64_t allowed,
                           std::vector<std::uint64_t>& out) {
        // subsets grouped by minimum vertex; frontier extension where every
        // offered vertex is afterwards either inside the set or banned, so
        // each subset appears exactly once
        std::uint64_t it = allowed;
        while (it) {
            int s = std::countr_zero(it);
            it &= it - 1;
            std::uint64_t scope =
                allowed & ~((std::uint64_t{1} << s) - 1);  // min vertex is s
            std::uint64_t seed = std::uint64_t{1} << s;
            grow(seed, hadj[s] & scope & ~seed, 0, scope, out);
            if (exhausted) return;
        }
    }

    void grow(std::uint64_t set, std::uint64_t ext, std::uint64_t banned,
              std::uint64_t scope, std::vector<std::uint64_t>& out) {
        if (++nodes > budget) {
            exhausted = true;
            return;
        }
        out.push_back(set);
        std::uint64_t processed = 0;
        std::uint64_t it = ext;
        while (it) {
            int v = std::countr_zero(it);
            it &= it - 1;
            std::uint64_t nset = set | (std::uint64_t{1} << v);
            std::uint64_t nbanned = banned | processed;
            std::uint64_t fresh = hadj[v] & scope & ~nset & ~nbanned & ~ext;
            grow(nset, it | fresh, nbanned, scope, out);
            if (exhausted) return;
            processed |= std::uint64_t{1} << v;
        }
    }

    bool place(size_t idx, std::uint64_t free) {
        if (idx == order.size()) return true;
        if (exhausted) return false;
        int p = order[idx];
        int remaining = static_cast<int>(order.size() - idx - 1);

        // collect required earlier branch sets (pattern neighbours)
        std::vector<std::uint64_t> required;
        for (size_t j = 0; j < idx; ++j)
            if (pattern.has_edge(order[j], p))
                required.push_back(branch[order[j]]);
        std::vector<std::uint64_t> req_nb(required.size());
        for (size_t i = 0; i < required.size(); ++i)
            req_nb[i] = neighbourhood(required[i]);

        std::vector<std::uint64_t> cands;
        connected_subsets(free, cands);
        if (exhausted) return false;
        std::sort(cands.begin(), cands.end(), [](std::uint64_t a, std::uint64_t b) {
            int pa = std::popcount(a), pb = std::popcount(b);
            return pa != pb ? pa < pb : a < b;
        });
        for (std::uint64_t s : cands) {
            if (std::popcount(free & ~s) < remaining) continue;
            bool ok = true;
            for (size_t i = 0; i < required.size() && ok; ++i)
                if (!(req_nb[i] & s)) ok = false;
            if (!ok) continue;
            if (++nodes > budget) {
                exhausted = true;
                return false;
            }
            branch[p] = s;
            if (place(idx + 1, free & ~s)) return true;
            if (exhausted) return false;
            branch[p] = 0;
        }
        return false;
    }
};

}  // namespace

MinorSearch minor_contains(const Graph& host, const Graph& pattern,
                           long long budget) {
    if (pattern.vertex_count() > kMinorPatternCap)
        throw std::invalid_argument("minor_contains: pattern above cap of " +
                                    std::to_string(kMinorPatternCap));
    if (host.vertex_count() > 64)
        throw cap_exceeded("minor_contains: host above 64 vertices");
    MinorSearch res;
    if (pattern.vertex_count() == 0) {
        res.status = MinorSearch::Status::found;
        res.model = MinorModel{host, pattern, {}};
        return res;
    }
    if (pattern.vertex_count() > host.vertex_count() ||
        pattern.edge_count() > host.edge_count()) {
        res.status = MinorSearch::Status::absent;
        return res;
    }

    MinorSearchState st{host, pattern, host.adjacency_masks(), {}, {}, budget, 0, false};
    st.order.resize(pattern.vertex_count());
    std::iota(st.order.begin(), st.order.end(), 0);
    std::sort(st.order.begin(), st.order.end(), [&](int a, int b) {
        return std::pair{-pattern.degree(a), a} < std::pair{-pattern.degree(b), b};
    });
    st.branch.assign(pattern.vertex_count(), 0);
    std::uint64_t all =
        host.vertex_count() == 64
            ? ~std::uint64_t{0}
            : ((std::uint64_t{1} << host.vertex_count()) - 1);
    bool found = st.place(0, all);
    res.nodes = st.nodes;
    if (found) {
        res.status = MinorSearch::Status::found;
        std::vector<std::vector<int>> bs(pattern.vertex_count());
        for (int p = 0; p < pattern.vertex_count(); ++p)
            for (int v = 0; v < host.vertex_count(); ++v)
                if ((st.branch[p] >> v) & 1) bs[p].push_back(v);
        res.model = MinorModel{host, pattern, std::move(bs)};
        if (auto bad = verify_minor_model(res.model))
            throw std::logic_error("minor_contains model rejected: " + *bad);
    } else if (st.exhausted) {
        res.status = MinorSearch::Status::out_of_budget;
    } else {
        res.status = MinorSearch::Status::absent;
    }
    return res;
}

CombineResult combine_fragility(const Graph& g, const FragilityCover& cover,
                                int h, int k, int profile_cap,
                                long long node_budget) {
    if (h < 2) throw std::invalid_argument("combine_fragility: require h >= 2");
    if (auto bad = verify_fragility_cover(g, cover, kDefaultTreedepthCap))
        throw std::invalid_argument("invalid fragility cover: " + *bad);
    long s = static_cast<long>(cover.sets.size());
    mpq_class weight = 1 / ((1 - cover.delta) * s);
    if (weight > 1)
        throw std::invalid_argument(
            "cover too sparse: uniform weight 1/((1-delta)s) exceeds 1");

    CombineResult res;
    res.epsilon = mpq_class(h - 1) * cover.delta / (1 - cover.delta);
    res.fractional.mode = ColourMode::clustering;
    res.fractional.total = mpq_class(h - 1) / (1 - cover.delta);

    for (size_t i = 0; i < cover.sets.size(); ++i) {
        std::vector<std::vector<int>> classes(h - 1);
        auto sub = induced_subgraph(g, cover.sets[i]);
        for (const auto& comp : connected_components(sub.graph)) {
            std::vector<int> comp_host;
            for (int c : comp) comp_host.push_back(sub.to_host[c]);
            auto piece = induced_subgraph(g, comp_host);

            EliminationTree et =
                piece.graph.vertex_count() <= kDefaultTreedepthCap
                    ? treedepth_exact(piece.graph).witness
                    : dfs_elimination_tree(piece.graph);
            et = normalize_tree(piece.graph, et).tree;

            auto outcome =
                colour_or_minor(piece.graph, et, h, k, profile_cap, node_budget);
            if (outcome.kind == ClusterOutcome::Kind::minor) {
                res.status = CombineResult::Status::minor_found;
                res.reason = "cover set " + std::to_string(i) +
                             " contains the excluded weak-closure minor";
                return res;
            }
            if (outcome.kind == ClusterOutcome::Kind::cap_limited) {
                res.status = CombineResult::Status::cap_limited;
                res.reason = "cover set " + std::to_string(i) + ": " +
                             outcome.reason;
                return res;
            }
            res.max_cluster = std::max(res.max_cluster, outcome.max_cluster);
            for (int v = 0; v < piece.graph.vertex_count(); ++v)
                classes[outcome.colouring.assignment[v]].push_back(
                    piece.to_host[v]);
        }
        for (auto& cls : classes) {
            std::sort(cls.begin(), cls.end());
            res.fractional.sets.push_back(std::move(cls));
            res.fractional.weights.push_back(weight);
        }
    }
    res.fractional.bound = std::max(res.max_cluster, 1);
    res.status = CombineResult::Status::ok;
    if (auto bad = verify_fractional(g, res.fractional))
        throw std::logic_error("combiner output rejected: " + *bad);
    return res;
}

}  // namespace cck
