#ifndef CCK_TESTS_HELPERS_HPP
#define CCK_TESTS_HELPERS_HPP

#include "cck/graph.hpp"

#include <random>
#include <vector>

namespace cck_tests {

// deterministic Erdos-Renyi-style graph
inline cck::Graph random_graph(int n, double p, std::mt19937& rng) {
    std::bernoulli_distribution coin(p);
    cck::Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

// keeps each edge of g independently with probability p
inline cck::Graph random_spanning_subgraph(const cck::Graph& g, double p,
                                           std::mt19937& rng) {
    std::bernoulli_distribution coin(p);
    cck::Graph out(g.vertex_count());
    for (auto [u, v] : g.edges())
        if (coin(rng)) out.add_edge(u, v);
    return out;
}

inline cck::Graph path_graph(int n) {
    cck::Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline cck::Graph complete_graph(int n) {
    cck::Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline cck::Graph grid_graph(int rows, int cols) {
    cck::Graph g(rows * cols);
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
            if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
        }
    return g;
}

// column-sweep decomposition of a grid: width = rows
inline std::vector<std::vector<int>> grid_bags(int rows, int cols) {
    std::vector<std::vector<int>> bags;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int c = 0; c + 1 < cols; ++c)
        for (int r = 0; r < rows; ++r) {
            std::vector<int> bag;
            for (int rr = r; rr < rows; ++rr) bag.push_back(id(rr, c));
            for (int rr = 0; rr <= r; ++rr) bag.push_back(id(rr, c + 1));
            bags.push_back(bag);
        }
    if (cols == 1) {
        std::vector<int> bag;
        for (int r = 0; r < rows; ++r) bag.push_back(id(r, 0));
        bags.push_back(bag);
    }
    return bags;
}

}  // namespace cck_tests

#endif
