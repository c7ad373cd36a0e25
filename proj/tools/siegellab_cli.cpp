// Command-line front end. All computation goes through the C API in
// siegellab.h; this file only translates flags into config JSON and moves
// payload bytes to stdout or a file.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "siegellab.h"

namespace {

using nlohmann::json;

struct AlphaFlags {
    std::string alpha;  // preset name or decimal literal
    std::string cf;     // comma-separated entries
    std::size_t period = 0;

    json to_json() const {
        if (!cf.empty()) {
            json entries = json::array();
            std::string token;
            for (const char c : cf + ",") {
                if (c == ',') {
                    if (!token.empty()) entries.push_back(std::stoll(token));
                    token.clear();
                } else {
                    token.push_back(c);
                }
            }
            json spec;
            spec["cf"] = entries;
            if (period > 0) spec["period"] = period;
            return spec;
        }
        if (alpha == "golden" || alpha == "silver") return json(alpha);
        if (!alpha.empty()) return json{{"decimal", alpha}};
        throw CLI::ValidationError("--alpha or --cf is required");
    }
};

void add_alpha_flags(CLI::App* cmd, AlphaFlags& flags) {
    cmd->add_option("--alpha", flags.alpha, "preset (golden|silver) or decimal in (0,1)");
    cmd->add_option("--cf", flags.cf, "comma-separated continued-fraction entries");
    cmd->add_option("--period", flags.period, "trailing entries of --cf that repeat forever");
}

int emit(const char* subcommand, const json& config, const std::string& out_path) {
    const auto started = std::chrono::steady_clock::now();
    siegel_run* run = nullptr;
    const siegel_status status = siegel_run_command(subcommand, config.dump().c_str(), &run);
    if (status != SIEGEL_OK) {
        json err;
        err["error"] = siegel_last_error();
        err["subcommand"] = subcommand;
        std::cerr << err.dump() << "\n";
        return status == SIEGEL_ERR_USAGE ? 2 : 1;
    }
    int rc = 0;
    if (!out_path.empty()) {
        if (siegel_run_write(run, out_path.c_str()) != SIEGEL_OK) {
            std::cerr << json{{"error", siegel_last_error()}}.dump() << "\n";
            rc = 1;
        }
    } else {
        size_t size = 0;
        const char* payload = siegel_run_payload(run, &size);
        std::fwrite(payload, 1, size, stdout);
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              started);
    std::cerr << "# " << subcommand << ": " << siegel_run_content_type(run) << ", "
              << elapsed.count() << " ms\n";
    siegel_run_free(run);
    return rc;
}

json load_json_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (f == nullptr) throw CLI::ValidationError("cannot open " + path);
    std::string text;
    char buf[4096];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) text.append(buf, got);
    std::fclose(f);
    return json::parse(text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"siegellab: circle-map models, covering certificates and density scans"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write the payload to this file (atomic)")
        ->configurable(false);

    // classify
    auto* classify = app.add_subcommand("classify", "continued-fraction arithmetic report");
    AlphaFlags a_classify;
    add_alpha_flags(classify, a_classify);
    std::size_t classify_n = 20;
    std::string witness_path;
    classify->add_option("--n", classify_n, "entries/convergents to report");
    classify->add_option("--witness", witness_path, "witness JSON for the membership check");

    // rotnum
    auto* rotnum = app.add_subcommand("rotnum", "solve t(alpha) for the circle map");
    AlphaFlags a_rotnum;
    add_alpha_flags(rotnum, a_rotnum);
    double rot_tol = 1e-7;
    rotnum->add_option("--tol", rot_tol, "target |rho(t) - alpha|");

    // partition
    auto* partition = app.add_subcommand("partition", "closest-return partition lengths (CSV)");
    AlphaFlags a_partition;
    add_alpha_flags(partition, a_partition);
    std::size_t part_n = 8;
    double part_tol = 1e-7;
    partition->add_option("--n-max", part_n, "deepest level q_n");
    partition->add_option("--tol", part_tol, "parameter solve tolerance");

    // density-scan
    auto* scan = app.add_subcommand("density-scan", "multi-scale area fractions (CSV)");
    AlphaFlags a_scan;
    add_alpha_flags(scan, a_scan);
    std::string scan_model = "F", scan_center = "crit";
    double scan_r = 0.5, scan_r0 = 0.125, scan_factor = 0.5;
    int scan_scales = 4, scan_grid = 256;
    long long scan_budget = 100000, scan_seed = 0;
    scan->add_option("--model", scan_model, "F or P");
    scan->add_option("--r", scan_r, "collar radius (model F)");
    scan->add_option("--center", scan_center, "crit or x,y");
    scan->add_option("--r0", scan_r0, "largest scan radius");
    scan->add_option("--factor", scan_factor, "radius shrink per scale");
    scan->add_option("--scales", scan_scales, "number of scales");
    scan->add_option("--grid", scan_grid, "stratification grid per side");
    scan->add_option("--budget", scan_budget, "iteration budget per point");
    scan->add_option("--seed", scan_seed, "jitter seed");

    // deep-fit
    auto* deep = app.add_subcommand("deep-fit", "fit the deficiency exponent from a scan CSV");
    std::string deep_csv;
    deep->add_option("--csv", deep_csv, "density-scan CSV path")->required();

    // render
    auto* render = app.add_subcommand("render", "fate raster as a binary P5 pixmap");
    AlphaFlags a_render;
    add_alpha_flags(render, a_render);
    std::string render_model = "F";
    double render_r = 0.5;
    std::vector<double> render_window{0.5, 1.5, -0.5, 0.5};
    int render_w = 512, render_h = 512;
    long long render_budget = 2000;
    render->add_option("--model", render_model, "F or P");
    render->add_option("--r", render_r, "collar radius (model F)");
    render->add_option("--window", render_window, "x0 x1 y0 y1")->expected(4);
    render->add_option("--width", render_w, "pixels");
    render->add_option("--height", render_h, "pixels");
    render->add_option("--budget", render_budget, "iteration budget per pixel");

    // cover-check
    auto* cover = app.add_subcommand("cover-check", "covering-bound certification report");
    int cover_lemma = 1;
    std::string cover_c = "16", cover_eta = "1/2", cover_lambda = "1/50", instance_path;
    int cover_N = 0, cover_depth = 0, cover_sites = 24;
    long long cover_seed = 0;
    cover->add_option("--lemma", cover_lemma, "1 or 2");
    cover->add_option("--c", cover_c, "hypothesis constant c (rational)");
    cover->add_option("--eta", cover_eta, "radius ratio eta (rational)");
    cover->add_option("--N", cover_N, "number of scales (default 2*n0)");
    cover->add_option("--seed", cover_seed, "generator seed");
    cover->add_option("--sites", cover_sites, "generator target sites");
    cover->add_option("--depth", cover_depth, "cell depth K");
    cover->add_option("--lambda", cover_lambda, "density bound (lemma 2)");
    cover->add_option("--instance", instance_path, "instance JSON instead of a generator run");

    // cellgraph
    auto* graph = app.add_subcommand("cellgraph", "imbedded-graph cells and strip heights");
    AlphaFlags a_graph;
    add_alpha_flags(graph, a_graph);
    int graph_nmax = 8;
    std::string graph_model = "blaschke", graph_render;
    double graph_tol = 1e-7;
    graph->add_option("--n-max", graph_nmax, "deepest partition level");
    graph->add_option("--model", graph_model, "blaschke or rotation");
    graph->add_option("--tol", graph_tol, "parameter solve tolerance");
    graph->add_option("--render", graph_render, "also write a P5 rendering of the graph here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) {
            json config{{"alpha", a_classify.to_json()}, {"n", classify_n}};
            if (!witness_path.empty()) config["witness"] = load_json_file(witness_path);
            return emit("classify", config, out_path);
        }
        if (rotnum->parsed()) {
            return emit("rotnum", json{{"alpha", a_rotnum.to_json()}, {"tol", rot_tol}},
                        out_path);
        }
        if (partition->parsed()) {
            return emit("partition",
                        json{{"alpha", a_partition.to_json()},
                             {"n_max", part_n},
                             {"tol", part_tol}},
                        out_path);
        }
        if (scan->parsed()) {
            json config{{"alpha", a_scan.to_json()}, {"model", scan_model}, {"r", scan_r},
                        {"r0", scan_r0},             {"factor", scan_factor},
                        {"scales", scan_scales},     {"grid", scan_grid},
                        {"budget", scan_budget},     {"seed", scan_seed}};
            if (scan_center != "crit") {
                const auto comma = scan_center.find(',');
                if (comma == std::string::npos)
                    throw CLI::ValidationError("--center expects crit or x,y");
                config["center"] = {std::stod(scan_center.substr(0, comma)),
                                    std::stod(scan_center.substr(comma + 1))};
            }
            return emit("density-scan", config, out_path);
        }
        if (deep->parsed()) return emit("deep-fit", json{{"csv_path", deep_csv}}, out_path);
        if (render->parsed()) {
            return emit("render",
                        json{{"alpha", a_render.to_json()},
                             {"model", render_model},
                             {"r", render_r},
                             {"window", render_window},
                             {"width", render_w},
                             {"height", render_h},
                             {"budget", render_budget}},
                        out_path);
        }
        if (cover->parsed()) {
            json config{{"lemma", cover_lemma}, {"c", cover_c},       {"eta", cover_eta},
                        {"seed", cover_seed},   {"sites", cover_sites}};
            if (cover_N > 0) config["N"] = cover_N;
            if (cover_depth > 0) config["depth"] = cover_depth;
            if (cover_lemma == 2) config["lambda"] = cover_lambda;
            if (!instance_path.empty()) config["instance"] = load_json_file(instance_path);
            return emit("cover-check", config, out_path);
        }
        if (graph->parsed()) {
            json config{{"alpha", a_graph.to_json()},
                        {"n_max", graph_nmax},
                        {"model", graph_model},
                        {"tol", graph_tol}};
            const int rc = emit("cellgraph", config, out_path);
            if (rc == 0 && !graph_render.empty()) return emit("cellgraph-render", config,
                                                              graph_render);
            return rc;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }
    return 2;
}
