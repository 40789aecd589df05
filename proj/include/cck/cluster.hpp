#ifndef CCK_CLUSTER_HPP
#define CCK_CLUSTER_HPP

#include "cck/elimination.hpp"
#include "cck/graph.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cck {

/// Graph with a level per vertex and a strict partial order compatible with
/// the levels (u below v forces level[u] < level[v]).
struct RankedGraph {
    Graph graph;
    std::vector<int> level;
    std::vector<std::vector<char>> below;  // below[u][v] = 1 iff u strictly below v
};

// Throws unless levels lie in [0, d-1] and the order is a strict partial
// order increasing along levels.
void validate_ranked_graph(const RankedGraph& rg, int d);

// Canonical string over level-preserving relabelings; equal strings exactly
// for isomorphic ranked graphs. Brute force within level classes, so only
// for small entries (profile-cap sized).
std::string canonical_ranked_form(const RankedGraph& rg);

// Profile size bound (d+1)(h-1)(k+1)^(d-1-level); throws on int64 overflow.
long long profile_bound(int d, int h, int k, int level);

struct SpliceResult {
    RankedGraph graph;
    // new vertex -> (source vertex, copy index); copy 0 marks the kept part
    std::vector<std::pair<int, int>> origin;
};

// Keeps vertices of level <= i once and duplicates the rest k times; edges
// and order connect the kept part to every copy and each copy to itself.
SpliceResult splice(const RankedGraph& rg, int i, int k);

inline constexpr long long kDefaultContainBudget = 10'000'000;

struct ContainmentSearch {
    enum class Status { found, absent, out_of_budget };
    Status status = Status::absent;
    std::vector<int> phi;  // ranked vertex -> host vertex, when found
};

// Exhaustive backtracking for an injective edge-preserving map into
// G[T_v^+] matching levels exactly and mapping the order onto strict tree
// ancestry (in both directions).
ContainmentSearch contained(const RankedGraph& rg, const Graph& g,
                            const EliminationTree& e, int v,
                            long long node_budget = kDefaultContainBudget);

inline constexpr int kDefaultProfileCap = 6;

/// All induced ranked subgraphs of G[T_v^+] up to the effective size bound,
/// keyed by canonical form; the stored witness lists the host vertices in
/// canonical vertex order. Edge-subgraphs of entries are implied, so entry
/// sets decide profile equality.
struct Profile {
    int owner = -1;
    int effective_bound = 0;  // min(profile bound, cap)
    std::map<std::string, std::vector<int>> entries;

    bool same_entries(const Profile& o) const;
};

Profile compute_profile(const Graph& g, const EliminationTree& e, int v,
                        int h, int k, int cap = kDefaultProfileCap);

// Rebuilds the induced ranked graph a profile witness points at.
RankedGraph ranked_from_hosts(const Graph& g, const EliminationTree& e,
                              const std::vector<int>& hosts);

/// Partition of V(T) into subtrees built leaves-first: a vertex either
/// starts a fresh group or absorbs the groups of its children whose profile
/// multiplicity among the siblings is between 1 and k-1.
struct GroupPartition {
    std::vector<int> group_of;               // vertex -> group id
    std::vector<int> root_of;                // group id -> root vertex
    std::vector<std::vector<int>> members;   // group id -> sorted vertices
    // group ids adjacent through a G-edge whose root lies on this group's
    // root-to-r path, per group, sorted
    std::vector<std::vector<int>> above_neighbours;
};

GroupPartition group_partition(const Graph& g, const EliminationTree& e,
                               const std::vector<Profile>& profiles, int k);

struct ClusterOutcome {
    enum class Kind { colouring, minor, cap_limited };
    Kind kind = Kind::cap_limited;

    // colouring branch: at most h-1 colours, every monochromatic component
    // inside one group
    Colouring colouring;
    std::vector<std::vector<int>> groups;
    int max_cluster = 0;

    // minor branch: verified model of the weak closure of the complete
    // k-ary tree of depth h
    MinorModel minor;
    int minor_h = 0, minor_k = 0;

    std::string reason;  // cap_limited explanation
};

// The dichotomy: if some group sees h-1 or more groups above it, extract a
// weak-closure minor by repeated splicing; otherwise colour the groups
// top-down with first-fit. Both certificates are re-verified before return.
ClusterOutcome colour_or_minor(const Graph& g, const EliminationTree& e,
                               int h, int k, int cap = kDefaultProfileCap,
                               long long node_budget = kDefaultContainBudget);

/// Group-size bound from the level recursion; exact when the exponent tower
/// stays below the bit limit, otherwise a symbolic description.
struct TowerValue {
    std::optional<mpz_class> exact;
    std::string description;
};

inline constexpr long long kTowerExponentBitLimit = 1'000'000;

TowerValue theoretical_cluster_bound(int d, int h, int k, int level);

}  // namespace cck

#endif
