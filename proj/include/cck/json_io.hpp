#ifndef CCK_JSON_IO_HPP
#define CCK_JSON_IO_HPP

#include "cck/fractional.hpp"
#include "cck/graph.hpp"
#include "cck/pathwidth.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace cck {

// insertion-ordered so identical runs print identical bytes
using json = nlohmann::ordered_json;

json graph_to_json(const Graph& g);

json colouring_certificate(const Colouring& col,
                           std::optional<int> clustering = std::nullopt,
                           std::optional<int> defect = std::nullopt);

json minor_model_certificate(const MinorModel& m,
                             const std::string& pattern_name = "");

json fractional_certificate(const FractionalColouring& fc);

Colouring colouring_from_json(const json& j, int n);
PathDecomposition path_decomposition_from_json(const json& j);
FragilityCover fragility_cover_from_json(const json& j);
FractionalColouring fractional_from_json(const json& j);
MinorModel minor_model_from_json(const json& j, const Graph& host);

// Re-checks a self-declared certificate ("kind" field) against the graph
// using only the type invariants. Returns a violation message, if any.
std::optional<std::string> verify_certificate(const Graph& g, const json& cert);

}  // namespace cck

#endif
