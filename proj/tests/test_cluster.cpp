#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cck/canonical.hpp"
#include "cck/cluster.hpp"
#include "cck/elimination.hpp"
#include "cck/fractional.hpp"
#include "cck/generators.hpp"
#include "cck/graph.hpp"
#include "helpers.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace cck;
using namespace cck_tests;

namespace {

RankedGraph single_vertex(int level) {
    RankedGraph rg;
    rg.graph = Graph(1);
    rg.level = {level};
    rg.below = {{0}};
    return rg;
}

RankedGraph ranked_edge(int la, int lb, bool ordered) {
    RankedGraph rg;
    rg.graph = Graph(2);
    rg.graph.add_edge(0, 1);
    rg.level = {la, lb};
    rg.below.assign(2, {0, 0});
    if (ordered) rg.below[0][1] = 1;
    return rg;
}

// random ranked graph: levels first, order sampled below the levels and
// transitively closed, edges independent
RankedGraph random_ranked(int n, int d, std::mt19937& rng) {
    RankedGraph rg;
    rg.graph = Graph(n);
    rg.level.resize(n);
    std::uniform_int_distribution<int> lv(0, d - 1);
    for (int& l : rg.level) l = lv(rng);
    std::bernoulli_distribution edge(0.4), ord(0.4);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (edge(rng)) rg.graph.add_edge(u, v);
    rg.below.assign(n, std::vector<char>(n, 0));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (rg.level[u] < rg.level[v] && ord(rng)) rg.below[u][v] = 1;
    // transitive closure
    for (int w = 0; w < n; ++w)
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (rg.below[u][w] && rg.below[w][v]) rg.below[u][v] = 1;
    return rg;
}

EliminationTree defining_tree(const Graph& g, int h, int k) {
    return make_elimination_tree(g, complete_kary_tree(h, k));
}

}  // namespace

TEST_CASE("profile bound formula") {
    CHECK(profile_bound(4, 4, 2, 3) == 15);   // 5*3*3^0
    CHECK(profile_bound(2, 2, 1, 1) == 3);    // 3*1*2^0
    CHECK(profile_bound(4, 4, 2, 0) == 405);  // 5*3*3^3
    for (int d = 1; d <= 5; ++d)
        for (int h = 1; h <= 4; ++h)
            for (int k = 1; k <= 3; ++k)
                CHECK(profile_bound(d, h, k, d - 1) == (d + 1) * (h - 1));
    CHECK_THROWS_AS(profile_bound(80, 9, 9, 0), std::overflow_error);
}

TEST_CASE("splice of a single high vertex yields isolated copies") {
    auto res = splice(single_vertex(2), 1, 3);
    CHECK(res.graph.graph.vertex_count() == 3);
    CHECK(res.graph.graph.edge_count() == 0);
    for (int u = 0; u < 3; ++u) {
        CHECK(res.graph.level[u] == 2);
        for (int v = 0; v < 3; ++v) CHECK(!res.graph.below[u][v]);
    }
    for (int c = 1; c <= 3; ++c) CHECK(res.origin[c - 1] == std::pair{0, c});
}

TEST_CASE("splice of an ordered edge fans out the high endpoint") {
    auto res = splice(ranked_edge(0, 1, true), 0, 2);
    REQUIRE(res.graph.graph.vertex_count() == 3);
    // (u,0) kept once, (v,1) and (v,2)
    CHECK(res.origin[0] == std::pair{0, 0});
    CHECK(res.origin[1] == std::pair{1, 1});
    CHECK(res.origin[2] == std::pair{1, 2});
    CHECK(res.graph.graph.edge_count() == 2);
    CHECK(res.graph.graph.has_edge(0, 1));
    CHECK(res.graph.graph.has_edge(0, 2));
    CHECK(res.graph.below[0][1]);
    CHECK(res.graph.below[0][2]);
    CHECK(!res.graph.below[1][2]);
}

TEST_CASE("splice size accounting and validity on random ranked graphs") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        int d = 2 + trial % 4;
        int n = 1 + trial % 6;
        RankedGraph rg = random_ranked(n, d, rng);
        validate_ranked_graph(rg, d);
        int i = trial % d;
        int k = 1 + trial % 3;
        auto res = splice(rg, i, k);
        validate_ranked_graph(res.graph, d);

        int low = 0;
        for (int v = 0; v < n; ++v)
            if (rg.level[v] <= i) ++low;
        CHECK(res.graph.graph.vertex_count() == low + k * (n - low));
        CHECK(res.graph.graph.vertex_count() <= (k + 1) * n);

        // the kept part plus any single copy is the original ranked graph
        for (int copy = 1; copy <= k; ++copy) {
            std::vector<int> back(n, -1);
            for (size_t nv = 0; nv < res.origin.size(); ++nv) {
                auto [src, c] = res.origin[nv];
                if (c == 0 || c == copy) back[src] = static_cast<int>(nv);
            }
            for (int v = 0; v < n; ++v) {
                REQUIRE(back[v] != -1);
                CHECK(res.graph.level[back[v]] == rg.level[v]);
            }
            int edges = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    CHECK(res.graph.graph.has_edge(back[u], back[v]) ==
                          rg.graph.has_edge(u, v));
                    if (rg.graph.has_edge(u, v)) ++edges;
                    CHECK(static_cast<bool>(res.graph.below[back[u]][back[v]]) ==
                          static_cast<bool>(rg.below[u][v]));
                }
            CHECK(edges == rg.graph.edge_count());
        }
    }
}

TEST_CASE("containment search") {
    Graph c32 = closure(complete_kary_tree(3, 2));
    auto e = defining_tree(c32, 3, 2);

    // single vertex at the right level
    auto hit = contained(single_vertex(1), c32, e, 1);
    REQUIRE(hit.status == ContainmentSearch::Status::found);
    CHECK(hit.phi == std::vector<int>{1});

    // two level-0 vertices cannot both embed
    RankedGraph k2_flat;
    k2_flat.graph = Graph(2);
    k2_flat.graph.add_edge(0, 1);
    k2_flat.level = {0, 0};
    k2_flat.below.assign(2, {0, 0});
    CHECK(contained(k2_flat, c32, e, 0).status ==
          ContainmentSearch::Status::absent);

    // ordered edge spanning levels 0 and 2 maps to the root plus a leaf
    auto span = contained(ranked_edge(0, 2, true), c32, e, 0);
    REQUIRE(span.status == ContainmentSearch::Status::found);
    CHECK(span.phi[0] == 0);
    CHECK(span.phi[1] >= 3);

    // unordered edge across comparable levels cannot satisfy the iff
    auto unordered = contained(ranked_edge(0, 2, false), c32, e, 0);
    CHECK(unordered.status == ContainmentSearch::Status::absent);

    // budget exhaustion is reported, not mistaken for absence
    auto broke = contained(ranked_edge(0, 2, true), c32, e, 0, 0);
    CHECK(broke.status == ContainmentSearch::Status::out_of_budget);
}

TEST_CASE("profiles on the two-vertex path tree") {
    Graph k2 = complete_graph(2);
    auto e = make_elimination_tree(k2, complete_kary_tree(2, 1));
    auto pr = compute_profile(k2, e, 1, 2, 1);
    // vertex at level 1, vertex at level 0, ordered edge across them
    CHECK(pr.entries.size() == 3);
    CHECK(pr.entries.count(canonical_ranked_form(single_vertex(0))) == 1);
    CHECK(pr.entries.count(canonical_ranked_form(single_vertex(1))) == 1);
    CHECK(pr.entries.count(canonical_ranked_form(ranked_edge(0, 1, true))) == 1);
}

TEST_CASE("sibling leaves have equal profiles") {
    Graph c22 = closure(complete_kary_tree(2, 2));
    auto e = defining_tree(c22, 2, 2);
    auto p1 = compute_profile(c22, e, 1, 2, 2);
    auto p2 = compute_profile(c22, e, 2, 2, 2);
    CHECK(p1.same_entries(p2));

    Graph c33 = closure(complete_kary_tree(3, 3));
    auto e33 = defining_tree(c33, 3, 3);
    auto q1 = compute_profile(c33, e33, 4, 3, 2);
    auto q2 = compute_profile(c33, e33, 5, 3, 2);
    auto qmid = compute_profile(c33, e33, 1, 3, 2);
    CHECK(q1.same_entries(q2));
    CHECK(!q1.same_entries(qmid));
}

TEST_CASE("profiles grow monotonically towards the root") {
    std::mt19937 rng(31);
    Graph base = closure(complete_kary_tree(3, 2));
    int done = 0;
    while (done < 8) {
        Graph g = random_spanning_subgraph(base, 0.8, rng);
        if (!is_connected(g)) continue;
        ++done;
        auto e = normalize_tree(g, defining_tree(g, 3, 2)).tree;
        std::vector<Profile> prof;
        for (int v = 0; v < g.vertex_count(); ++v)
            prof.push_back(compute_profile(g, e, v, 3, 2, 3));
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (v == e.tree.root) continue;
            int u = e.tree.parent[v];
            for (const auto& [key, wit] : prof[v].entries)
                if (static_cast<int>(wit.size()) <= prof[u].effective_bound)
                    CHECK(prof[u].entries.count(key) == 1);
        }
    }
}

TEST_CASE("group partition follows the sibling-count rule") {
    // single vertex: one singleton group
    Graph one(1);
    auto e1 = make_elimination_tree(one, complete_kary_tree(1, 1));
    auto pr1 = std::vector<Profile>{compute_profile(one, e1, 0, 2, 2)};
    auto gp1 = group_partition(one, e1, pr1, 2);
    CHECK(gp1.members.size() == 1);

    // star tree with k identical leaves and parameter k: count k is outside
    // [1, k-1], so the root starts its own group
    Graph star3 = closure(complete_kary_tree(2, 3));
    auto e3 = defining_tree(star3, 2, 3);
    std::vector<Profile> pr3;
    for (int v = 0; v < 4; ++v) pr3.push_back(compute_profile(star3, e3, v, 2, 3));
    auto gp3 = group_partition(star3, e3, pr3, 3);
    CHECK(gp3.members.size() == 4);
    CHECK(gp3.group_of[0] != gp3.group_of[1]);

    // star tree with k-1 identical leaves at parameter k = 3: merge all
    Graph star2 = closure(complete_kary_tree(2, 2));
    auto e2 = defining_tree(star2, 2, 2);
    std::vector<Profile> pr2;
    for (int v = 0; v < 3; ++v) pr2.push_back(compute_profile(star2, e2, v, 2, 3));
    auto gp2 = group_partition(star2, e2, pr2, 3);
    CHECK(gp2.members.size() == 1);
    CHECK(gp2.members[0] == std::vector<int>{0, 1, 2});
    CHECK(gp2.root_of[0] == 0);
}

TEST_CASE("groups are subtrees rooted at their closest-to-root member") {
    std::mt19937 rng(37);
    Graph base = closure(complete_kary_tree(4, 2));
    int done = 0;
    while (done < 6) {
        Graph g = random_spanning_subgraph(base, 0.75, rng);
        if (!is_connected(g)) continue;
        ++done;
        auto e = normalize_tree(g, defining_tree(g, 4, 2)).tree;
        std::vector<Profile> prof;
        for (int v = 0; v < g.vertex_count(); ++v)
            prof.push_back(compute_profile(g, e, v, 3, 2, 3));
        auto gp = group_partition(g, e, prof, 2);
        for (size_t gi = 0; gi < gp.members.size(); ++gi) {
            int root = gp.root_of[gi];
            for (int v : gp.members[gi]) {
                CHECK(e.tree.is_ancestor(root, v));
                // the path from v to the group root stays inside the group
                int x = v;
                while (x != root) {
                    CHECK(gp.group_of[x] == static_cast<int>(gi));
                    x = e.tree.parent[x];
                }
            }
        }
    }
}

TEST_CASE("dichotomy: K2 with k = 1 extracts the two-vertex weak closure") {
    // the sibling-count range [1, k-1] is empty for k = 1, so both vertices
    // are singleton groups and the lower one sees one group above it
    Graph k2 = complete_graph(2);
    auto e = make_elimination_tree(k2, complete_kary_tree(2, 1));
    auto out = colour_or_minor(k2, e, 2, 1);
    REQUIRE(out.kind == ClusterOutcome::Kind::minor);
    CHECK(out.minor.pattern.vertex_count() == 2);
    CHECK(!verify_minor_model(out.minor).has_value());
}

TEST_CASE("dichotomy: stars at h = 2") {
    Graph star = closure(complete_kary_tree(2, 3));
    auto e = defining_tree(star, 2, 3);
    auto out = colour_or_minor(star, e, 2, 2);
    // every leaf group sees the root group above it, so the minor fires
    REQUIRE(out.kind == ClusterOutcome::Kind::minor);
    CHECK(out.minor.pattern == weak_closure(complete_kary_tree(2, 2)));
    CHECK(!verify_minor_model(out.minor).has_value());
}

TEST_CASE("dichotomy: colouring branch on merged closures") {
    // with k = 3 the two-sibling counts fall inside [1, 2] everywhere, all
    // groups merge, and the single group needs one colour
    Graph c32 = closure(complete_kary_tree(3, 2));
    auto e = defining_tree(c32, 3, 2);
    auto out = colour_or_minor(c32, e, 4, 3);
    REQUIRE(out.kind == ClusterOutcome::Kind::colouring);
    CHECK(out.colouring.colours == 1);
    CHECK(out.groups.size() == 1);
    CHECK(out.max_cluster == 7);
}

TEST_CASE("dichotomy: closure host yields a verified weak-closure minor") {
    Graph c33 = closure(complete_kary_tree(3, 3));
    auto e = defining_tree(c33, 3, 3);
    auto out = colour_or_minor(c33, e, 3, 2);
    REQUIRE(out.kind == ClusterOutcome::Kind::minor);
    CHECK(out.minor.pattern == weak_closure(complete_kary_tree(3, 2)));
    CHECK(!verify_minor_model(out.minor).has_value());
    for (const auto& bs : out.minor.branch_sets)
        for (int v : bs) CHECK(v < c33.vertex_count());
}

TEST_CASE("dichotomy: exhausted search budget reports cap-limited") {
    Graph c33 = closure(complete_kary_tree(3, 3));
    auto e = defining_tree(c33, 3, 3);
    auto out = colour_or_minor(c33, e, 3, 2, kDefaultProfileCap, 1);
    REQUIRE(out.kind == ClusterOutcome::Kind::cap_limited);
    CHECK(!out.reason.empty());
}

TEST_CASE("claim: cross-group splices stay contained one level up") {
    Graph c33 = closure(complete_kary_tree(3, 3));
    auto e = defining_tree(c33, 3, 3);
    std::vector<Profile> prof;
    for (int v = 0; v < c33.vertex_count(); ++v)
        prof.push_back(compute_profile(c33, e, v, 3, 2, 3));
    auto gp = group_partition(c33, e, prof, 2);

    int checked = 0;
    for (int v = 0; v < c33.vertex_count(); ++v) {
        if (v == e.tree.root) continue;
        int u = e.tree.parent[v];
        if (gp.group_of[u] == gp.group_of[v]) continue;
        int taken = 0;
        for (const auto& [key, wit] : prof[v].entries) {
            if (++taken > 4) break;
            RankedGraph entry = ranked_from_hosts(c33, e, wit);
            auto spliced = splice(entry, e.level[u], 2);
            auto res = contained(spliced.graph, c33, e, u);
            CHECK(res.status == ContainmentSearch::Status::found);
            ++checked;
        }
    }
    CHECK(checked >= 8);
}

TEST_CASE("dichotomy: three chained splices build the depth-4 weak closure") {
    Graph c42 = closure(complete_kary_tree(4, 2));
    auto e = defining_tree(c42, 4, 2);
    auto out = colour_or_minor(c42, e, 4, 2);
    REQUIRE(out.kind == ClusterOutcome::Kind::minor);
    CHECK(out.minor.pattern == weak_closure(complete_kary_tree(4, 2)));
    CHECK(out.minor.pattern.vertex_count() == 15);
    CHECK(!verify_minor_model(out.minor).has_value());

    // merged variant: k = 3 swallows every sibling pair into one group
    auto merged = colour_or_minor(c42, e, 4, 3);
    REQUIRE(merged.kind == ClusterOutcome::Kind::colouring);
    CHECK(merged.colouring.colours <= 3);
}

TEST_CASE("dichotomy minors agree with the exhaustive oracle") {
    // wherever the branch extraction finds a weak-closure minor and the
    // pattern is small enough for the oracle, the oracle must concur
    std::vector<std::pair<Graph, RootedTree>> hosts;
    for (auto [h, k] : {std::pair{2, 3}, {3, 2}, {3, 3}}) {
        RootedTree t = complete_kary_tree(h, k);
        hosts.push_back({closure(t), t});
        hosts.push_back({weak_closure(t), t});
    }
    int agreed = 0;
    for (auto& [g, t] : hosts) {
        auto e = normalize_tree(g, make_elimination_tree(g, t)).tree;
        for (auto [h, k] : {std::pair{2, 2}, {3, 2}}) {
            auto out = colour_or_minor(g, e, h, k);
            if (out.kind != ClusterOutcome::Kind::minor) continue;
            auto oracle = minor_contains(g, out.minor.pattern);
            REQUIRE(oracle.status == MinorSearch::Status::found);
            ++agreed;
        }
    }
    CHECK(agreed >= 6);
}

TEST_CASE("theoretical cluster bound") {
    auto base = theoretical_cluster_bound(3, 3, 2, 2);
    REQUIRE(base.exact.has_value());
    CHECK(*base.exact == 1);

    auto degenerate = theoretical_cluster_bound(4, 3, 1, 0);
    REQUIRE(degenerate.exact.has_value());
    CHECK(*degenerate.exact == 0);

    // d=2, h=2, k=2: the root-level bound is 2^1728
    auto tower = theoretical_cluster_bound(2, 2, 2, 0);
    REQUIRE(tower.exact.has_value());
    mpz_class expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), 2, 1728);
    CHECK(*tower.exact == expect);
    CHECK(tower.description.find("1728") != std::string::npos);

    // far beyond the bit limit: symbolic only
    auto huge = theoretical_cluster_bound(6, 4, 3, 0);
    CHECK(!huge.exact.has_value());
    CHECK(!huge.description.empty());
}

TEST_CASE("canonical ranked forms identify isomorphic entries only") {
    std::mt19937 rng(43);
    // relabelling preserves the form
    for (int trial = 0; trial < 40; ++trial) {
        RankedGraph rg = random_ranked(5, 3, rng);
        std::vector<int> perm(5);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        RankedGraph moved;
        moved.graph = Graph(5);
        moved.level.resize(5);
        moved.below.assign(5, std::vector<char>(5, 0));
        for (int v = 0; v < 5; ++v) moved.level[perm[v]] = rg.level[v];
        for (auto [u, v] : rg.graph.edges()) moved.graph.add_edge(perm[u], perm[v]);
        for (int u = 0; u < 5; ++u)
            for (int v = 0; v < 5; ++v)
                if (rg.below[u][v]) moved.below[perm[u]][perm[v]] = 1;
        CHECK(canonical_ranked_form(rg) == canonical_ranked_form(moved));
    }
    // levels are part of the identity
    CHECK(canonical_ranked_form(single_vertex(0)) !=
          canonical_ranked_form(single_vertex(1)));
    CHECK(canonical_ranked_form(ranked_edge(0, 1, true)) !=
          canonical_ranked_form(ranked_edge(0, 1, false)));
}
