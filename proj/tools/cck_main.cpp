#include "cck/canonical.hpp"
#include "cck/cluster.hpp"
#include "cck/elimination.hpp"
#include "cck/fractional.hpp"
#include "cck/generators.hpp"
#include "cck/graph.hpp"
#include "cck/json_io.hpp"
#include "cck/pathwidth.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using cck::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAlternate = 2;  // minor branch fired
constexpr int kExitLimited = 3;    // cap-limited or indeterminate

std::string read_all(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

cck::Graph read_graph(const std::string& path) {
    return cck::parse_edge_list(read_all(path));
}

json read_json(const std::string& path) {
    return json::parse(read_all(path));
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

long long budget_override(long long fallback) {
    if (const char* env = std::getenv("CCK_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return fallback;
}

json parent_array_json(const cck::EliminationTree& e) {
    json j;
    j["depth"] = e.depth();
    j["root"] = e.tree.root;
    j["parent"] = e.tree.parent;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clustered colouring toolkit"};
    app.require_subcommand(1);
    // --h is a parameter name below, so help must not claim -h
    app.set_help_flag("--help", "print help");

    // generate
    std::string gen_kind, gen_format = "edge-list";
    int gen_h = 1, gen_k = 1;
    auto* gen = app.add_subcommand("generate", "emit a standard example graph");
    gen->add_option("kind", gen_kind, "closure|weak")->required();
    gen->add_option("h", gen_h, "tree depth")->required();
    gen->add_option("k", gen_k, "tree arity")->required();
    gen->add_option("--format", gen_format, "edge-list|json");

    // treedepth
    std::string td_input = "-";
    bool td_dfs = false, td_exact = false;
    auto* td = app.add_subcommand("treedepth", "treedepth / elimination tree");
    td->add_flag("--exact", td_exact, "exact recursion (default)");
    td->add_flag("--dfs", td_dfs, "DFS spanning tree bound");
    td->add_option("input", td_input, "edge-list file or - for stdin");

    // normalize
    std::string norm_input = "-", norm_tree;
    auto* norm = app.add_subcommand("normalize",
                                    "re-hang an elimination tree until every "
                                    "subtree induces a connected subgraph");
    norm->add_option("input", norm_input, "edge-list file or - for stdin");
    norm->add_option("--tree", norm_tree,
                     "parent-array JSON (defaults to the DFS tree)");

    // cluster-colour
    std::string cc_input = "-";
    int cc_h = 2, cc_k = 2, cc_cap = cck::kDefaultProfileCap;
    auto* cc = app.add_subcommand("cluster-colour",
                                  "group colouring or weak-closure minor");
    cc->add_option("--h", cc_h, "colour budget is h-1")->required();
    cc->add_option("--k", cc_k, "minor arity")->required();
    cc->add_option("--cap", cc_cap, "profile size cap");
    cc->add_option("input", cc_input, "edge-list file or - for stdin");

    // pw-2colour
    std::string pw_input = "-", pw_pd;
    bool pw_exact = false;
    auto* pw = app.add_subcommand("pw-2colour", "bag-sweep 2-colouring");
    pw->add_option("--pd", pw_pd, "path decomposition JSON file");
    pw->add_flag("--exact-pd", pw_exact, "compute an optimal decomposition");
    pw->add_option("input", pw_input, "edge-list file or - for stdin");

    // product
    std::string pr_input = "-", pr_a, pr_b;
    auto* pr = app.add_subcommand("product", "pointwise product of colourings");
    pr->add_option("--a", pr_a, "first colouring JSON")->required();
    pr->add_option("--b", pr_b, "second colouring JSON")->required();
    pr->add_option("input", pr_input, "edge-list file or - for stdin");

    // lp-lower
    std::string lp_input = "-";
    int lp_d = 0;
    auto* lp = app.add_subcommand("lp-lower",
                                  "exact fractional defective cover optimum");
    lp->add_option("--d", lp_d, "defect bound")->required();
    lp->add_option("input", lp_input, "edge-list file or - for stdin");

    // certify
    int cert_h = 2, cert_k = 2, cert_d = 1;
    auto* cert = app.add_subcommand("certify",
                                    "check the closure lower-bound inequality");
    cert->add_option("--h", cert_h)->required();
    cert->add_option("--k", cert_k)->required();
    cert->add_option("--d", cert_d)->required();

    // combine
    std::string cb_input = "-", cb_cover;
    int cb_h = 2, cb_k = 2, cb_cap = cck::kDefaultProfileCap;
    auto* cb = app.add_subcommand("combine",
                                  "fractional colouring from a fragility cover");
    cb->add_option("--cover", cb_cover, "fragility cover JSON")->required();
    cb->add_option("--h", cb_h)->required();
    cb->add_option("--k", cb_k)->required();
    cb->add_option("--cap", cb_cap, "profile size cap");
    cb->add_option("input", cb_input, "edge-list file or - for stdin");

    // exists
    std::string ex_input = "-";
    int ex_colours = 1, ex_clustering = -1, ex_defect = -1;
    auto* ex = app.add_subcommand("exists", "exhaustive colouring search");
    ex->add_option("--colours", ex_colours)->required();
    ex->add_option("--clustering", ex_clustering, "clustering bound");
    ex->add_option("--defect", ex_defect, "defect bound");
    ex->add_option("input", ex_input, "edge-list file or - for stdin");

    // minor
    std::string mi_input = "-", mi_pattern;
    auto* mi = app.add_subcommand("minor", "exhaustive minor-model search");
    mi->add_option("--pattern", mi_pattern, "pattern edge-list file")->required();
    mi->add_option("input", mi_input, "host edge-list file or - for stdin");

    // verify
    std::string vf_input = "-", vf_cert;
    auto* vf = app.add_subcommand("verify", "re-check an emitted certificate");
    vf->add_option("--certificate", vf_cert, "certificate JSON file")->required();
    vf->add_option("input", vf_input, "edge-list file or - for stdin");

    for (auto* sub : app.get_subcommands({}))
        sub->set_help_flag("--help", "print help");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            cck::RootedTree t = cck::complete_kary_tree(gen_h, gen_k);
            cck::Graph g;
            if (gen_kind == "closure") {
                g = cck::closure(t);
            } else if (gen_kind == "weak") {
                g = cck::weak_closure(t);
            } else {
                std::cerr << "unknown kind \"" << gen_kind << "\" (closure|weak)\n";
                return kExitError;
            }
            if (gen_format == "edge-list") {
                std::cout << cck::serialize_edge_list(g);
            } else if (gen_format == "json") {
                emit(cck::graph_to_json(g));
            } else {
                std::cerr << "unknown format \"" << gen_format << "\"\n";
                return kExitError;
            }
            return kExitOk;
        }

        if (td->parsed()) {
            cck::Graph g = read_graph(td_input);
            json out;
            out["schema"] = 1;
            if (td_dfs && td_exact) {
                std::cerr << "choose one of --exact / --dfs\n";
                return kExitError;
            }
            if (td_dfs) {
                auto e = cck::dfs_elimination_tree(g);
                out["mode"] = "dfs";
                out["depth"] = e.depth();
                out.update(parent_array_json(e));
            } else {
                auto r = cck::treedepth_exact(g);
                out["mode"] = "exact";
                out["treedepth"] = r.treedepth;
                out["connected_treedepth"] = r.connected_treedepth;
                out.update(parent_array_json(r.witness));
            }
            emit(out);
            return kExitOk;
        }

        if (norm->parsed()) {
            cck::Graph g = read_graph(norm_input);
            cck::EliminationTree e;
            if (norm_tree.empty()) {
                e = cck::dfs_elimination_tree(g);
            } else {
                json tj = read_json(norm_tree);
                cck::RootedTree t;
                t.parent = tj.at("parent").get<std::vector<int>>();
                t.n = static_cast<int>(t.parent.size());
                t.root = tj.contains("root") ? tj["root"].get<int>() : 0;
                e = cck::make_elimination_tree(g, std::move(t));
            }
            auto r = cck::normalize_tree(g, e);
            json out;
            out["schema"] = 1;
            out["rehangs"] = r.rehang_count;
            out.update(parent_array_json(r.tree));
            emit(out);
            return kExitOk;
        }

        if (cc->parsed()) {
            cck::Graph g = read_graph(cc_input);
            auto e = g.vertex_count() <= cck::kDefaultTreedepthCap
                         ? cck::treedepth_exact(g).witness
                         : cck::dfs_elimination_tree(g);
            e = cck::normalize_tree(g, e).tree;
            auto outcome = cck::colour_or_minor(
                g, e, cc_h, cc_k, cc_cap,
                budget_override(cck::kDefaultContainBudget));
            if (outcome.kind == cck::ClusterOutcome::Kind::cap_limited) {
                json out;
                out["schema"] = 1;
                out["cap_limited"] = true;
                out["reason"] = outcome.reason;
                emit(out);
                return kExitLimited;
            }
            if (outcome.kind == cck::ClusterOutcome::Kind::minor) {
                json out = cck::minor_model_certificate(
                    outcome.minor, "W(" + std::to_string(outcome.minor_h) + "," +
                                       std::to_string(outcome.minor_k) + ")");
                emit(out);
                return kExitAlternate;
            }
            json out;
            out["schema"] = 1;
            out["kind"] = "colouring";
            out["colouring"] = outcome.colouring.assignment;
            out["colours"] = outcome.colouring.colours;
            out["max_cluster"] = outcome.max_cluster;
            out["clustering"] = outcome.max_cluster;
            out["groups"] = outcome.groups;
            emit(out);
            return kExitOk;
        }

        if (pw->parsed()) {
            cck::Graph g = read_graph(pw_input);
            cck::PathDecomposition pd;
            if (pw_exact) {
                pd = cck::exact_pathwidth(g).decomposition;
            } else if (!pw_pd.empty()) {
                pd = cck::path_decomposition_from_json(read_json(pw_pd));
            } else {
                std::cerr << "supply --pd FILE or --exact-pd\n";
                return kExitError;
            }
            auto r = cck::two_colour(g, pd);
            json out;
            out["schema"] = 1;
            out["kind"] = "colouring";
            out["colouring"] = r.colouring.assignment;
            out["colours"] = r.colouring.colours;
            out["level_widths"] = r.level_widths;
            emit(out);
            return kExitOk;
        }

        if (pr->parsed()) {
            cck::Graph g = read_graph(pr_input);
            auto a = cck::colouring_from_json(read_json(pr_a), g.vertex_count());
            auto b = cck::colouring_from_json(read_json(pr_b), g.vertex_count());
            auto p = cck::product_colouring(g, a, b);
            json out;
            out["schema"] = 1;
            out["kind"] = "colouring";
            out["colouring"] = p.assignment;
            out["colours"] = p.colours;
            emit(out);
            return kExitOk;
        }

        if (lp->parsed()) {
            cck::Graph g = read_graph(lp_input);
            auto r = cck::defect_lp_lower(g, lp_d);
            json out;
            out["schema"] = 1;
            out["lp"] = cck::rational_to_string(r.value);
            out["sets"] = r.sets;
            json weights = json::array();
            for (const auto& w : r.weights)
                weights.push_back(cck::rational_to_string(w));
            out["weights"] = std::move(weights);
            emit(out);
            return kExitOk;
        }

        if (cert->parsed()) {
            auto r = cck::certify_lower_bound(cert_h, cert_k, cert_d);
            json out;
            out["schema"] = 1;
            out["lp"] = cck::rational_to_string(r.lp);
            out["bound"] = cck::rational_to_string(r.bound);
            out["ok"] = r.ok;
            emit(out);
            return r.ok ? kExitOk : kExitError;
        }

        if (cb->parsed()) {
            cck::Graph g = read_graph(cb_input);
            auto cover = cck::fragility_cover_from_json(read_json(cb_cover));
            auto r = cck::combine_fragility(
                g, cover, cb_h, cb_k, cb_cap,
                budget_override(cck::kDefaultContainBudget));
            if (r.status == cck::CombineResult::Status::minor_found) {
                json out;
                out["schema"] = 1;
                out["minor_found"] = true;
                out["reason"] = r.reason;
                emit(out);
                return kExitAlternate;
            }
            if (r.status == cck::CombineResult::Status::cap_limited) {
                json out;
                out["schema"] = 1;
                out["cap_limited"] = true;
                out["reason"] = r.reason;
                emit(out);
                return kExitLimited;
            }
            json out = cck::fractional_certificate(r.fractional);
            out["max_cluster"] = r.max_cluster;
            out["delta"] = cck::rational_to_string(cover.delta);
            out["epsilon"] = cck::rational_to_string(r.epsilon);
            emit(out);
            return kExitOk;
        }

        if (ex->parsed()) {
            cck::Graph g = read_graph(ex_input);
            if ((ex_clustering < 0) == (ex_defect < 0)) {
                std::cerr << "choose exactly one of --clustering / --defect\n";
                return kExitError;
            }
            auto mode = ex_clustering >= 0 ? cck::ColourMode::clustering
                                           : cck::ColourMode::defect;
            int bound = ex_clustering >= 0 ? ex_clustering : ex_defect;
            auto r = cck::exists_colouring(
                g, ex_colours, mode, bound,
                budget_override(cck::kDefaultExistsBudget));
            json out;
            out["schema"] = 1;
            if (r.status == cck::ExistsResult::Status::out_of_budget) {
                out["indeterminate"] = true;
                out["nodes"] = r.nodes;
                emit(out);
                return kExitLimited;
            }
            out["exists"] = r.status == cck::ExistsResult::Status::yes;
            if (r.status == cck::ExistsResult::Status::yes)
                out["witness"] = r.witness.assignment;
            emit(out);
            return kExitOk;
        }

        if (mi->parsed()) {
            cck::Graph host = read_graph(mi_input);
            cck::Graph pattern = read_graph(mi_pattern);
            auto r = cck::minor_contains(
                host, pattern, budget_override(cck::kDefaultMinorBudget));
            json out;
            if (r.status == cck::MinorSearch::Status::out_of_budget) {
                out["schema"] = 1;
                out["indeterminate"] = true;
                out["nodes"] = r.nodes;
                emit(out);
                return kExitLimited;
            }
            if (r.status == cck::MinorSearch::Status::found) {
                out = cck::minor_model_certificate(r.model);
                out["contains"] = true;
            } else {
                out["schema"] = 1;
                out["contains"] = false;
            }
            emit(out);
            return kExitOk;
        }

        if (vf->parsed()) {
            cck::Graph g = read_graph(vf_input);
            json certificate = read_json(vf_cert);
            auto violation = cck::verify_certificate(g, certificate);
            json out;
            out["schema"] = 1;
            out["ok"] = !violation.has_value();
            if (violation) out["violation"] = *violation;
            emit(out);
            return violation ? kExitError : kExitOk;
        }
    } catch (const cck::cap_exceeded& ex2) {
        std::cerr << "cap exceeded: " << ex2.what() << "\n";
        return kExitLimited;
    } catch (const std::exception& ex2) {
        std::cerr << "error: " << ex2.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
