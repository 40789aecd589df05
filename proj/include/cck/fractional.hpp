#ifndef CCK_FRACTIONAL_HPP
#define CCK_FRACTIONAL_HPP

#include "cck/graph.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace cck {

// "p/q" or plain integer strings; exact, canonicalised.
mpq_class parse_rational(const std::string& s);
std::string rational_to_string(const mpq_class& q);

/// Weighted family of vertex sets covering every vertex with total weight
/// at most `total`; each set induces components within the mode bound.
struct FractionalColouring {
    std::vector<std::vector<int>> sets;
    std::vector<mpq_class> weights;
    ColourMode mode = ColourMode::clustering;
    int bound = 0;
    mpq_class total;
};

// Checks all three defining conditions exactly. Returns a message on the
// first violation.
std::optional<std::string> verify_fractional(const Graph& g,
                                             const FractionalColouring& fc);

/// Vertex sets of bounded induced treedepth covering every vertex at least
/// (1-delta)s times. The cover itself is input, never computed here.
struct FragilityCover {
    std::vector<std::vector<int>> sets;
    int treedepth_bound = 0;
    mpq_class delta;
};

std::optional<std::string> verify_fragility_cover(const Graph& g,
                                                  const FragilityCover& cover,
                                                  int td_cap);

inline constexpr int kDefaultLpCap = 14;

struct LpLowerResult {
    mpq_class value;
    // an optimal fractional cover by maximal admissible sets, as a
    // re-checkable certificate of the upper direction
    std::vector<std::vector<int>> sets;
    std::vector<mpq_class> weights;
};

// Exact minimum total weight of a fractional cover of V by sets inducing
// maximum degree <= d. Maximal admissible sets are enumerated exhaustively
// and the covering LP is solved by exact rational simplex.
LpLowerResult defect_lp_lower(const Graph& g, int d, int cap = kDefaultLpCap);

struct CertifyResult {
    mpq_class lp;
    mpq_class bound;  // h - (h-1) d / k
    bool ok = false;
};

CertifyResult certify_lower_bound(int h, int k, int d, int cap = kDefaultLpCap);

inline constexpr long long kDefaultExistsBudget = 100'000'000;

struct ExistsResult {
    enum class Status { yes, no, out_of_budget };
    Status status = Status::out_of_budget;
    Colouring witness;  // when yes
    long long nodes = 0;
};

// Pruned exhaustive search over all m-colourings (up to colour permutation).
// A `no` answer is an exhaustive refutation; running out of budget is
// reported explicitly, never as an answer.
ExistsResult exists_colouring(const Graph& g, int colours, ColourMode mode,
                              int bound,
                              long long budget = kDefaultExistsBudget);

inline constexpr long long kDefaultMinorBudget = 20'000'000;
inline constexpr int kMinorPatternCap = 8;

struct MinorSearch {
    enum class Status { found, absent, out_of_budget };
    Status status = Status::out_of_budget;
    MinorModel model;  // when found
    long long nodes = 0;
};

// Exhaustive branch-set search for a minor model of `pattern` in `host`.
MinorSearch minor_contains(const Graph& host, const Graph& pattern,
                           long long budget = kDefaultMinorBudget);

struct CombineResult {
    enum class Status { ok, minor_found, cap_limited };
    Status status = Status::cap_limited;
    FractionalColouring fractional;
    int max_cluster = 0;
    mpq_class epsilon;  // (h-1) delta / (1-delta), for reporting
    std::string reason;
};

// Splits every cover set into at most h-1 cluster-bounded classes via the
// group dichotomy and weights all classes uniformly by 1/((1-delta)s); the
// result totals exactly (h-1)/(1-delta) and is verified before return.
CombineResult combine_fragility(const Graph& g, const FragilityCover& cover,
                                int h, int k, int profile_cap,
                                long long node_budget);

}  // namespace cck

#endif
