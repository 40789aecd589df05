#ifndef CCK_GRAPH_HPP
#define CCK_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cck {

// Thrown when an exact search would exceed its configured size cap.
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown on malformed input files; message names the offending line.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite simple undirected graph on vertices 0..n-1.
/// No self-loops, no duplicate edges; edge list kept sorted with u < v.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n) {}
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbours(int v) const { return adj_.at(v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
    bool has_edge(int u, int v) const;

    // Adds uv; rejects loops, out-of-range endpoints and duplicates.
    void add_edge(int u, int v);

    // Adjacency rows as 64-bit masks; only valid for n <= 64.
    std::vector<std::uint64_t> adjacency_masks() const;

    bool operator==(const Graph& o) const {
        return n_ == o.n_ && edges_ == o.edges_;
    }

  private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

/// Vertex -> colour map over a fixed graph; colour indices contiguous from 0.
struct Colouring {
    std::vector<int> assignment;
    int colours = 0;
};

// Builds a Colouring from a raw assignment, compressing colour values to a
// contiguous 0-based range (order of first appearance by colour value).
Colouring make_colouring(std::vector<int> assignment);

enum class ColourMode { clustering, defect };

struct ColouringReport {
    bool ok = false;
    int worst_component_size = 0;
    int worst_max_degree = 0;
    std::vector<int> witness_component;  // a violating component when !ok
};

/// Map from pattern vertices to disjoint connected branch sets of the host.
struct MinorModel {
    Graph host;
    Graph pattern;
    std::vector<std::vector<int>> branch_sets;  // indexed by pattern vertex
};

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_sub;   // host vertex -> new index, -1 if absent
    std::vector<int> to_host;  // new index -> host vertex
};

inline constexpr int kDefaultLongestPathCap = 25;

// Edge-list text format: first line "n m", then m lines "u v", 0-based, LF.
Graph parse_edge_list(const std::string& text);
std::string serialize_edge_list(const Graph& g);

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& s);

std::vector<std::vector<int>> connected_components(const Graph& g);

bool is_connected(const Graph& g);

ColouringReport verify_colouring(const Graph& g, const Colouring& col,
                                 ColourMode mode, int bound);

// Exact maximum number of vertices on a simple path. Exhaustive; refuses
// graphs above the cap instead of degrading to a heuristic.
int longest_path_length(const Graph& g, int cap = kDefaultLongestPathCap);

// Checks the three branch-set invariants: pairwise disjoint nonempty sets,
// each inducing a connected host subgraph, and a host edge between the
// branch sets of every pattern edge. Returns a violation message, if any.
std::optional<std::string> verify_minor_model(const MinorModel& m);

}  // namespace cck

#endif
