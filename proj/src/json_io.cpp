#include "cck/json_io.hpp"

#include <algorithm>

namespace cck {

namespace {

json sets_to_json(const std::vector<std::vector<int>>& sets) {
    json arr = json::array();
    for (const auto& s : sets) arr.push_back(s);
    return arr;
}

std::vector<std::vector<int>> sets_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("expected an array of vertex arrays");
    std::vector<std::vector<int>> out;
    for (const auto& row : j) {
        if (!row.is_array()) throw parse_error("expected a vertex array");
        out.push_back(row.get<std::vector<int>>());
    }
    return out;
}

}  // namespace

json graph_to_json(const Graph& g) {
    json j;
    j["schema"] = 1;
    j["n"] = g.vertex_count();
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back(json::array({u, v}));
    j["edges"] = std::move(edges);
    return j;
}

json colouring_certificate(const Colouring& col, std::optional<int> clustering,
                           std::optional<int> defect) {
    json j;
    j["schema"] = 1;
    j["kind"] = "colouring";
    j["colours"] = col.colours;
    j["colouring"] = col.assignment;
    if (clustering) j["clustering"] = *clustering;
    if (defect) j["defect"] = *defect;
    return j;
}

json minor_model_certificate(const MinorModel& m, const std::string& pattern_name) {
    json j;
    j["schema"] = 1;
    j["kind"] = "minor-model";
    json inner;
    if (!pattern_name.empty()) inner["pattern"] = pattern_name;
    inner["pattern_graph"] = graph_to_json(m.pattern);
    inner["branch_sets"] = sets_to_json(m.branch_sets);
    j["minor"] = std::move(inner);
    return j;
}

json fractional_certificate(const FractionalColouring& fc) {
    json j;
    j["schema"] = 1;
    j["kind"] = "fractional-colouring";
    if (fc.mode == ColourMode::clustering)
        j["mode"] = json{{"clustering", fc.bound}};
    else
        j["mode"] = json{{"defect", fc.bound}};
    j["total"] = rational_to_string(fc.total);
    j["sets"] = sets_to_json(fc.sets);
    json weights = json::array();
    for (const auto& w : fc.weights) weights.push_back(rational_to_string(w));
    j["weights"] = std::move(weights);
    return j;
}

Colouring colouring_from_json(const json& j, int n) {
    if (!j.contains("colouring") || !j["colouring"].is_array())
        throw parse_error("certificate lacks a \"colouring\" array");
    auto assignment = j["colouring"].get<std::vector<int>>();
    if (static_cast<int>(assignment.size()) != n)
        throw parse_error("colouring length differs from vertex count");
    int colours = j.value("colours", 0);
    for (int c : assignment) {
        if (c < 0) throw parse_error("negative colour index");
        colours = std::max(colours, c + 1);
    }
    return Colouring{std::move(assignment), colours};
}

PathDecomposition path_decomposition_from_json(const json& j) {
    PathDecomposition pd;
    pd.bags = sets_from_json(j.is_object() && j.contains("bags") ? j["bags"] : j);
    return pd;
}

FragilityCover fragility_cover_from_json(const json& j) {
    FragilityCover cover;
    if (!j.contains("delta") || !j.contains("d") || !j.contains("sets"))
        throw parse_error("fragility cover needs \"delta\", \"d\" and \"sets\"");
    cover.delta = parse_rational(j["delta"].get<std::string>());
    cover.treedepth_bound = j["d"].get<int>();
    cover.sets = sets_from_json(j["sets"]);
    return cover;
}

FractionalColouring fractional_from_json(const json& j) {
    FractionalColouring fc;
    const json& mode = j.at("mode");
    if (mode.contains("clustering")) {
        fc.mode = ColourMode::clustering;
        fc.bound = mode["clustering"].get<int>();
    } else if (mode.contains("defect")) {
        fc.mode = ColourMode::defect;
        fc.bound = mode["defect"].get<int>();
    } else {
        throw parse_error("mode must declare clustering or defect");
    }
    fc.total = parse_rational(j.at("total").get<std::string>());
    fc.sets = sets_from_json(j.at("sets"));
    for (const auto& w : j.at("weights"))
        fc.weights.push_back(parse_rational(w.get<std::string>()));
    return fc;
}

MinorModel minor_model_from_json(const json& j, const Graph& host) {
    const json& inner = j.contains("minor") ? j["minor"] : j;
    const json& pg = inner.at("pattern_graph");
    Graph pattern(pg.at("n").get<int>());
    for (const auto& e : pg.at("edges"))
        pattern.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    MinorModel m;
    m.host = host;
    m.pattern = std::move(pattern);
    m.branch_sets = sets_from_json(inner.at("branch_sets"));
    return m;
}

std::optional<std::string> verify_certificate(const Graph& g, const json& cert) {
    if (!cert.contains("kind")) return "certificate lacks a \"kind\" field";
    std::string kind = cert["kind"].get<std::string>();
    try {
        if (kind == "colouring") {
            Colouring col = colouring_from_json(cert, g.vertex_count());
            // structural invariants: totality checked on parse; the used
            // colour indices must be contiguous from 0
            int max_used = -1;
            for (int c : col.assignment) max_used = std::max(max_used, c);
            std::vector<char> used(max_used + 1, 0);
            for (int c : col.assignment) used[c] = 1;
            for (int c = 0; c <= max_used; ++c)
                if (!used[c]) return "colour indices not contiguous";
            if (cert.contains("clustering")) {
                auto rep = verify_colouring(g, col, ColourMode::clustering,
                                            cert["clustering"].get<int>());
                if (!rep.ok)
                    return "clustering bound violated: component of size " +
                           std::to_string(rep.worst_component_size);
            }
            if (cert.contains("defect")) {
                auto rep = verify_colouring(g, col, ColourMode::defect,
                                            cert["defect"].get<int>());
                if (!rep.ok)
                    return "defect bound violated: monochromatic degree " +
                           std::to_string(rep.worst_max_degree);
            }
            return std::nullopt;
        }
        if (kind == "minor-model") {
            MinorModel m = minor_model_from_json(cert, g);
            return verify_minor_model(m);
        }
        if (kind == "fractional-colouring") {
            FractionalColouring fc = fractional_from_json(cert);
            return verify_fractional(g, fc);
        }
    } catch (const std::exception& ex) {
        return std::string("malformed certificate: ") + ex.what();
    }
    return "unknown certificate kind \"" + kind + "\"";
}

}  // namespace cck
