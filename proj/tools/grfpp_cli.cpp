// grfpp: benchmark CLI for stitched graph random feature estimators.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grfpp/bench.hpp"
#include "grfpp/exact.hpp"
#include "grfpp/meshtask.hpp"
#include "grfpp/stitch.hpp"

using namespace grfpp;

namespace {

struct KernelOpts {
    std::string preset = "diffusion:1.0";
    std::string alpha_json;  // overrides preset when set
    int k_max = kDefaultKMax;

    CoefficientSeries resolve() const {
        if (!alpha_json.empty()) {
            auto j = nlohmann::json::parse(alpha_json);
            if (!j.is_array() || j.empty())
                throw ParseError("--alpha must be a non-empty JSON array");
            return custom_series(j.get<std::vector<double>>());
        }
        const auto colon = preset.find(':');
        const std::string name = preset.substr(0, colon);
        const double param =
            colon == std::string::npos ? 1.0 : std::stod(preset.substr(colon + 1));
        if (name == "diffusion") return preset_diffusion(param, k_max);
        if (name == "geometric") return preset_geometric(param, k_max);
        throw ParseError("unknown kernel preset: " + name +
                         " (expected diffusion:<lambda> or geometric:<gamma>)");
    }
};

void add_kernel_opts(CLI::App* cmd, KernelOpts& k) {
    cmd->add_option("--kernel", k.preset, "Kernel preset, e.g. diffusion:1.0 or geometric:0.5");
    cmd->add_option("--alpha", k.alpha_json, "Custom coefficients as a JSON array");
    cmd->add_option("--kmax", k.k_max, "Series truncation order");
}

std::unique_ptr<std::ofstream> open_out(const std::string& path, std::ostream*& out) {
    out = &std::cout;
    if (path.empty()) return nullptr;
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw ParseError("cannot open output file: " + path);
    out = f.get();
    return f;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph random feature kernel estimation benchmark suite"};
    app.require_subcommand(1);

    // ---- gen-graph ----
    auto* gen = app.add_subcommand("gen-graph", "Generate a graph and save it as an edge list");
    std::string gen_type = "erdos-renyi", gen_out, gen_normalize = "row_max";
    int gen_nodes = 50, gen_depth = 6, gen_d = 3;
    double gen_p = 0.2;
    std::uint64_t gen_seed = 0;
    gen->add_option("--type", gen_type, "erdos-renyi | binary-tree | d-regular")
        ->check(CLI::IsMember({"erdos-renyi", "binary-tree", "d-regular"}));
    gen->add_option("--nodes", gen_nodes, "Node count (erdos-renyi, d-regular)");
    gen->add_option("--p", gen_p, "Edge probability (erdos-renyi)");
    gen->add_option("--depth", gen_depth, "Tree depth (binary-tree)");
    gen->add_option("--d", gen_d, "Regular degree (d-regular)");
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--normalize", gen_normalize, "none | row_max | sym_degree");
    gen->add_option("--out", gen_out, "Output edge-list path")->required();

    // ---- shared estimator options ----
    struct EstOpts {
        std::string graph, normalize = "none", termination = "bernoulli:0.1", out, format = "csv";
        KernelOpts kernel;
        int degree = 1, walks = 16, threads = 1;
        std::uint64_t seed = 0;
        bool reuse_walks = false;
        double mask_hops = 0.0;
    };
    auto add_common = [](CLI::App* cmd, EstOpts& o, bool with_estimator) {
        cmd->add_option("--graph", o.graph, "Edge-list file")->required();
        cmd->add_option("--normalize", o.normalize,
                        "Normalization applied on load: none | row_max | sym_degree");
        add_kernel_opts(cmd, o.kernel);
        cmd->add_option("--seed", o.seed, "Master seed");
        cmd->add_option("--threads", o.threads, "Worker threads");
        cmd->add_option("--out", o.out, "Output path (default stdout)");
        cmd->add_option("--format", o.format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        if (with_estimator) {
            cmd->add_option("--termination", o.termination,
                            "bernoulli:<p> | poisson:<mean> | table:<path>");
            cmd->add_option("--degree", o.degree, "Stitching degree l");
            cmd->add_option("--walks", o.walks, "Walks per node per factor");
            cmd->add_flag("--reuse-walks", o.reuse_walks,
                          "Share one walk ensemble across all factors (ablation)");
            cmd->add_option("--mask-hops", o.mask_hops,
                            "Score only pairs at hop distance >= this");
        }
    };

    auto* exact_cmd = app.add_subcommand("exact", "Exact truncated-series kernel");
    EstOpts exact_o;
    add_common(exact_cmd, exact_o, false);

    auto* est_cmd = app.add_subcommand("estimate", "One stitched estimate plus its error");
    EstOpts est_o;
    add_common(est_cmd, est_o, true);
    int est_reps = 1;
    est_cmd->add_option("--reps", est_reps, "Independent repetitions to aggregate");

    auto* sweep_cmd = app.add_subcommand("sweep", "Error-vs-walks sweep over a config grid");
    EstOpts sweep_o;
    add_common(sweep_cmd, sweep_o, true);
    std::vector<int> sweep_degrees{1, 2}, sweep_walks{4, 16, 64};
    std::vector<std::string> sweep_terms;
    int sweep_reps = 10;
    sweep_cmd->add_option("--degrees", sweep_degrees, "Degrees to sweep");
    sweep_cmd->add_option("--walk-counts", sweep_walks, "Walk counts to sweep");
    sweep_cmd->add_option("--terminations", sweep_terms,
                          "Termination specs to sweep (defaults to --termination)");
    sweep_cmd->add_option("--reps", sweep_reps, "Repetitions per cell");

    auto* time_cmd = app.add_subcommand("timing", "Walk/stitch wall-clock breakdown by degree");
    EstOpts time_o;
    add_common(time_cmd, time_o, true);
    std::vector<int> time_degrees{1, 2};
    int time_reps = 5;
    double time_p_base = 0.01;
    time_cmd->add_option("--degrees", time_degrees, "Degrees to time");
    time_cmd->add_option("--reps", time_reps, "Repetitions (median reported)");
    time_cmd->add_option("--p-base", time_p_base, "Halting probability at degree 1");

    auto* comp_cmd = app.add_subcommand("compare-termination",
                                        "Bernoulli vs mean-matched poisson error comparison");
    EstOpts comp_o;
    add_common(comp_cmd, comp_o, true);
    int comp_reps = 10;
    comp_cmd->add_option("--reps", comp_reps, "Repetitions per cell");

    // ---- normal-predict ----
    auto* np_cmd = app.add_subcommand("normal-predict",
                                      "Predict masked mesh normals with a graph kernel");
    std::string np_mesh, np_method = "exact", np_edge_weight = "unit", np_term = "bernoulli:0.1";
    std::string np_out, np_format = "csv";
    double np_mask = 0.8, np_lambda = 1.0;
    int np_degree = 2, np_walks = 16, np_threads = 1;
    std::uint64_t np_seed = 0;
    np_cmd->add_option("--mesh", np_mesh, "Triangle OBJ file")->required();
    np_cmd->add_option("--mask", np_mask, "Fraction of vertices to mask");
    np_cmd->add_option("--method", np_method, "exact | grf | grfpp")
        ->check(CLI::IsMember({"exact", "grf", "grfpp"}));
    np_cmd->add_option("--degree", np_degree, "Stitching degree (grfpp)");
    np_cmd->add_option("--walks", np_walks, "Walks per node per factor");
    np_cmd->add_option("--seed", np_seed, "Master seed");
    np_cmd->add_option("--lambda", np_lambda, "Diffusion kernel width");
    np_cmd->add_option("--termination", np_term, "Termination spec for the estimators");
    np_cmd->add_option("--edge-weight", np_edge_weight, "unit | inv-length")
        ->check(CLI::IsMember({"unit", "inv-length"}));
    np_cmd->add_option("--threads", np_threads, "Worker threads");
    np_cmd->add_option("--out", np_out, "Output path (default stdout)");
    np_cmd->add_option("--format", np_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const auto norm = parse_normalization(gen_normalize);
            Graph g;
            if (gen_type == "erdos-renyi")
                g = generate_erdos_renyi(gen_nodes, gen_p, gen_seed, norm);
            else if (gen_type == "binary-tree")
                g = generate_binary_tree(gen_depth, norm);
            else
                g = generate_d_regular(gen_nodes, gen_d, gen_seed, norm);
            save_edge_list(g, gen_out);
            std::printf("wrote %s: %d nodes, %zu edges\n", gen_out.c_str(), g.num_nodes,
                        g.num_edges_stored() / 2);
            return 0;
        }

        if (*exact_cmd) {
            auto g = load_edge_list(exact_o.graph, parse_normalization(exact_o.normalize));
            auto k = exact_kernel(g, exact_o.kernel.resolve());
            std::ostream* out;
            auto guard = open_out(exact_o.out, out);
            nlohmann::json j;
            j["nodes"] = g.num_nodes;
            j["kernel"] = k.series.label;
            j["tail_bound"] = k.tail_bound;
            j["converged"] = k.converged();
            j["matrix"] = nlohmann::json::array();
            for (int i = 0; i < k.matrix.rows; ++i) {
                auto row = nlohmann::json::array();
                for (int c = 0; c < k.matrix.cols; ++c) row.push_back(k.matrix(i, c));
                j["matrix"].push_back(std::move(row));
            }
            *out << j.dump() << '\n';
            return 0;
        }

        auto run_spec = [](const EstOpts& o) {
            ExperimentSpec spec;
            spec.graph_label = o.graph;
            spec.alpha = o.kernel.resolve();
            spec.seed = o.seed;
            spec.mask_min_hops = o.mask_hops;
            spec.reuse_walks = o.reuse_walks;
            spec.num_threads = o.threads;
            return spec;
        };

        if (*est_cmd) {
            auto g = load_edge_list(est_o.graph, parse_normalization(est_o.normalize));
            auto spec = run_spec(est_o);
            spec.degrees = {est_o.degree};
            spec.walk_counts = {est_o.walks};
            spec.terminations = {est_o.termination};
            spec.repetitions = est_reps;
            auto recs = run_error_sweep(g, spec);
            std::ostream* out;
            auto guard = open_out(est_o.out, out);
            write_records(*out, recs, est_o.format == "json");
            return 0;
        }

        if (*sweep_cmd) {
            auto g = load_edge_list(sweep_o.graph, parse_normalization(sweep_o.normalize));
            auto spec = run_spec(sweep_o);
            spec.degrees = sweep_degrees;
            spec.walk_counts = sweep_walks;
            spec.terminations =
                sweep_terms.empty() ? std::vector{sweep_o.termination} : sweep_terms;
            spec.repetitions = sweep_reps;
            auto recs = run_error_sweep(g, spec);
            std::ostream* out;
            auto guard = open_out(sweep_o.out, out);
            write_records(*out, recs, sweep_o.format == "json");
            return 0;
        }

        if (*time_cmd) {
            auto g = load_edge_list(time_o.graph, parse_normalization(time_o.normalize));
            auto spec = run_spec(time_o);
            spec.degrees = time_degrees;
            spec.walk_counts = {time_o.walks};
            spec.repetitions = time_reps;
            spec.timing_p_base = time_p_base;
            auto recs = run_timing(g, spec);
            std::ostream* out;
            auto guard = open_out(time_o.out, out);
            write_records(*out, recs, time_o.format == "json");
            return 0;
        }

        if (*comp_cmd) {
            auto g = load_edge_list(comp_o.graph, parse_normalization(comp_o.normalize));
            auto spec = run_spec(comp_o);
            spec.degrees = {comp_o.degree};
            spec.walk_counts = {comp_o.walks};
            spec.terminations = {comp_o.termination};
            spec.repetitions = comp_reps;
            auto recs = run_termination_compare(g, spec);
            std::ostream* out;
            auto guard = open_out(comp_o.out, out);
            write_records(*out, recs, comp_o.format == "json");
            return 0;
        }

        if (*np_cmd) {
            auto mesh = load_mesh(np_mesh);
            auto g = mesh.to_graph(np_edge_weight == "unit" ? EdgeWeightMode::unit
                                                            : EdgeWeightMode::inv_length);
            const auto alpha = preset_diffusion(np_lambda, kDefaultKMax);
            const int degree = np_method == "grf" ? 1 : np_degree;

            NormalPredictionResult res;
            if (np_method == "exact") {
                auto k = exact_kernel(g, alpha);
                res = predict_normals(mesh, np_mask, applier_from_dense(k.matrix), np_seed);
            } else {
                WalkConfig cfg;
                cfg.num_walks = np_walks;
                cfg.modulation = root_modulation(alpha, degree);
                cfg.termination = TerminationStrategy::parse(np_term);
                cfg.seed = np_seed;
                cfg.num_threads = np_threads;
                auto est = make_estimator(build_feature_pairs(g, cfg, degree));
                res = predict_normals(mesh, np_mask, applier_from_estimator(est), np_seed);
            }

            std::ostream* out;
            auto guard = open_out(np_out, out);
            if (np_format == "json") {
                nlohmann::json j;
                j["mesh"] = np_mesh;
                j["method"] = np_method;
                j["degree"] = degree;
                j["num_walks"] = np_walks;
                j["mask_fraction"] = np_mask;
                j["seed"] = np_seed;
                j["masked_count"] = res.masked_count;
                j["zero_predictions"] = res.zero_prediction_count;
                j["mean_cosine"] = res.mean_cosine;
                *out << j.dump() << '\n';
            } else {
                *out << "mesh,method,degree,num_walks,mask_fraction,seed,masked_count,"
                        "zero_predictions,mean_cosine\n"
                     << np_mesh << ',' << np_method << ',' << degree << ',' << np_walks << ','
                     << np_mask << ',' << np_seed << ',' << res.masked_count << ','
                     << res.zero_prediction_count << ',' << res.mean_cosine << '\n';
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
