#include "treebed/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "treebed/serialize.hpp"
#include "treebed/simd/kernels.hpp"

namespace treebed::cli {

namespace {

struct Config {
    int n = 1;
    int p = 5;
    std::uint64_t seed = 1;
    std::size_t samples = 0;  // 0: per-command default
    std::optional<double> t_min, t_max, x_radius;
    std::string norm = "l1";
    std::string strategy = "uniform";
    int scan_cap = kDefaultScanCap;
    unsigned threads = 1;
    std::string output;
    std::string format;
    bool json = false;
    bool timing = false;
    int m_max = 10;

    std::string point, from, to, u, v, ids_file;
    std::vector<int> colors;
    std::uint64_t cell_budget = 1'000'000;
    int k_min = -3;
    int k_max = 4;
    std::int64_t gamma_bound = 0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("bad number '" + item + "' in '" + text + "'");
        }
        if (used != item.size()) throw UsageError("bad number '" + item + "' in '" + text + "'");
        out.push_back(v);
    }
    return out;
}

HoroPoint parse_point(const Params& P, const std::string& text) {
    const auto values = parse_doubles(text);
    if (values.size() != static_cast<std::size_t>(P.n()) + 1)
        throw UsageError("point '" + text + "' needs t and " + std::to_string(P.n()) +
                         " coordinates");
    return HoroPoint{values[0], std::vector<double>(values.begin() + 1, values.end())};
}

CubeId parse_id(const Params& P, const std::string& text) {
    CubeId id;
    try {
        id = parse_cube_id(text);
        check_cube_id(P, id);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    return id;
}

void emit(const Config& cfg, std::ostream& out, const std::string& text) {
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw UsageError("cannot write " + cfg.output);
    file << text;
}

void add_common(CLI::App* sub, Config& cfg) {
    sub->add_option("--n", cfg.n, "horosphere dimension (embeds H^{n+1})");
    sub->add_option("--p", cfg.p, "subdivision factor");
    sub->add_option("--scan-cap", cfg.scan_cap, "levels scanned per parent search")
        ->check(CLI::PositiveNumber);
    sub->add_option("--output,-o", cfg.output, "write the result to this file");
    sub->add_flag("--json", cfg.json, "machine-readable output");
}

void add_sampling(CLI::App* sub, Config& cfg) {
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--samples", cfg.samples, "number of sampled pairs");
    sub->add_option("--threads", cfg.threads, "worker threads")
        ->envname("TREEBED_THREADS")
        ->check(CLI::PositiveNumber);
}

int cmd_embed(const Params& P, const Config& cfg, std::ostream& out) {
    const EmbeddedPoint e = embed(P, parse_point(P, cfg.point));
    emit(cfg, out, to_json(e).dump(cfg.json ? -1 : 2) + "\n");
    return kOk;
}

int cmd_distance(const Params& P, const Config& cfg, std::ostream& out) {
    const double d = hyp_distance(P, parse_point(P, cfg.from), parse_point(P, cfg.to));
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    if (cfg.json)
        emit(cfg, out, Json{{"d_hyp", d}}.dump() + "\n");
    else
        emit(cfg, out, std::string(buf) + "\n");
    return kOk;
}

int cmd_tree_dist(const Params& P, const Config& cfg, std::ostream& out) {
    const CubeId u = parse_id(P, cfg.u);
    const CubeId v = parse_id(P, cfg.v);
    if (u.c != v.c) throw UsageError("tree-dist needs ids of one color");
    const Meet m = meet(P, u, v, cfg.scan_cap);
    const std::int64_t d = static_cast<std::int64_t>(m.steps_u) + m.steps_v;
    if (cfg.json)
        emit(cfg, out,
             Json{{"u", to_json(u)}, {"v", to_json(v)}, {"distance", d}, {"meet", to_json(m.vertex)}}
                     .dump() +
                 "\n");
    else
        emit(cfg, out, std::to_string(d) + "\n");
    return kOk;
}

int cmd_check_covering(const Params& P, const Config& cfg, std::ostream& out) {
    CoveringOptions options;
    options.colors = cfg.colors;
    options.cell_budget = cfg.cell_budget;
    const CoveringReport report = verify_covering_level0(P, options);
    if (cfg.json) {
        Json j = to_json(report);
        j["covered"] = report.covered();
        emit(cfg, out, j.dump() + "\n");
    } else {
        std::string text = std::string(report.covered() ? "covered" : "NOT covered") + ": " +
                           std::to_string(report.cells_total - report.cells_uncovered) + "/" +
                           std::to_string(report.cells_total) + " cells, grid step " +
                           to_string(report.grid_step) + "\n";
        for (const auto& w : report.witnesses) {
            text += "  uncovered cell center:";
            for (const auto& q : w) text += " " + to_string(q);
            text += "\n";
        }
        emit(cfg, out, text);
    }
    return report.covered() ? kOk : kCheckFailed;
}

int cmd_check_separation(const Params& P, const Config& cfg, std::ostream& out) {
    SeparationPlan plan;
    plan.count = cfg.samples ? cfg.samples : 10'000;
    plan.seed = cfg.seed;
    plan.k_min = cfg.k_min;
    plan.k_max = cfg.k_max;
    plan.gamma_bound = cfg.gamma_bound;
    const SeparationCheck check = separation_check(P, plan);
    if (cfg.json) {
        emit(cfg, out,
             Json{{"n", P.n()},
                  {"p", P.p()},
                  {"checked", check.checked},
                  {"disjoint_far", check.disjoint_far},
                  {"nested_deep", check.nested_deep},
                  {"violations", check.violations},
                  {"witnesses", check.witnesses}}
                     .dump() +
                 "\n");
    } else {
        std::string text = std::to_string(check.checked) + " pairs: " +
                           std::to_string(check.disjoint_far) + " disjoint, " +
                           std::to_string(check.nested_deep) + " nested, " +
                           std::to_string(check.violations) + " violations\n";
        for (const auto& w : check.witnesses) text += "  " + w + "\n";
        emit(cfg, out, text);
    }
    return check.passed() ? kOk : kCheckFailed;
}

int cmd_verify(const Params& P, const Config& cfg, std::ostream& out) {
    SamplePlan plan;
    plan.region = default_region(P);
    if (cfg.t_min) plan.region.t_min = *cfg.t_min;
    if (cfg.t_max) plan.region.t_max = *cfg.t_max;
    if (cfg.x_radius) plan.region.x_radius = *cfg.x_radius;
    plan.count = cfg.samples ? cfg.samples : 1000;
    plan.seed = cfg.seed;
    try {
        plan.strategy = parse_strategy(cfg.strategy);
        plan.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    EvalOptions options;
    options.norm = parse_norm(cfg.norm);
    options.scan_cap = cfg.scan_cap;
    options.threads = cfg.threads;

    const auto pairs = sample_pairs(P, plan);
    const auto report =
        fit_qi_constants(evaluate_pairs(P, pairs, options), integer_m_grid(cfg.m_max));

    if (cfg.format == "csv")
        emit(cfg, out, report_csv(P, pairs, report));
    else
        emit(cfg, out, verify_report_json(P, plan, options.norm, report, cfg.timing).dump(2) + "\n");
    return report.violations == 0 ? kOk : kCheckFailed;
}

int cmd_export_subtree(const Params& P, const Config& cfg, std::ostream& out) {
    std::ifstream file(cfg.ids_file);
    if (!file) throw UsageError("cannot read " + cfg.ids_file);
    std::vector<CubeId> ids;
    std::string line;
    while (std::getline(file, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        ids.push_back(parse_id(P, line.substr(first, last - first + 1)));
    }
    for (const auto& id : ids)
        if (id.c != ids.front().c) throw UsageError("export-subtree needs ids of one color");
    const bool as_json = cfg.json || cfg.format == "json";
    emit(cfg, out, export_subtree(P, ids, as_json ? GraphFormat::Json : GraphFormat::Dot,
                                  cfg.scan_cap));
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Quasi-isometric embedding of rescaled hyperbolic space into a product of trees",
                 "treebed"};
    app.set_config("--config", "", "TOML/INI file mirroring the flags; flags win");
    app.require_subcommand(1);

    auto* embed_cmd = app.add_subcommand("embed", "image of a point under f, as JSON");
    add_common(embed_cmd, cfg);
    embed_cmd->add_option("--point", cfg.point, "t,x1[,x2,...]")->required();

    auto* distance_cmd = app.add_subcommand("distance", "hyperbolic distance of two points");
    add_common(distance_cmd, cfg);
    distance_cmd->add_option("--from", cfg.from, "t,x1[,x2,...]")->required();
    distance_cmd->add_option("--to", cfg.to, "t,x1[,x2,...]")->required();

    auto* tree_cmd = app.add_subcommand("tree-dist", "hop distance of two cubes in T_c");
    add_common(tree_cmd, cfg);
    tree_cmd->add_option("--u", cfg.u, "c,k,g1[,g2,...]")->required();
    tree_cmd->add_option("--v", cfg.v, "c,k,g1[,g2,...]")->required();

    auto* cover_cmd =
        app.add_subcommand("check-covering", "exact level-0 covering check; exit 0 iff covered");
    add_common(cover_cmd, cfg);
    cover_cmd->add_option("--colors", cfg.colors, "restrict to these colors")->delimiter(',');
    cover_cmd->add_option("--cell-budget", cfg.cell_budget, "largest grid allowed");

    auto* sep_cmd = app.add_subcommand(
        "check-separation", "randomized exact separation check; exit 0 iff no violation");
    add_common(sep_cmd, cfg);
    add_sampling(sep_cmd, cfg);
    sep_cmd->add_option("--k-min", cfg.k_min, "lowest level");
    sep_cmd->add_option("--k-max", cfg.k_max, "highest level");
    sep_cmd->add_option("--gamma-bound", cfg.gamma_bound, "lattice bound (default p^3)");

    auto* verify_cmd = app.add_subcommand("verify", "distortion pipeline; writes a report");
    add_common(verify_cmd, cfg);
    add_sampling(verify_cmd, cfg);
    verify_cmd->add_option("--t-min", cfg.t_min, "lowest height (default -4)");
    verify_cmd->add_option("--t-max", cfg.t_max, "highest height (default 4)");
    verify_cmd->add_option("--x-radius", cfg.x_radius, "horizontal radius (default p^4)");
    verify_cmd->add_option("--strategy", cfg.strategy,
                           "uniform | same-horosphere | vertical | near-pairs");
    verify_cmd->add_option("--norm", cfg.norm, "l1 | l2 | linf");
    verify_cmd->add_option("--m-max", cfg.m_max, "fit additive constants 0..m_max")
        ->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--format", cfg.format, "json | csv");
    verify_cmd->add_flag("--timing", cfg.timing, "record runtime_ms in the report");

    auto* export_cmd = app.add_subcommand("export-subtree", "subtree spanned by ids, DOT or JSON");
    add_common(export_cmd, cfg);
    export_cmd->add_option("--ids", cfg.ids_file, "file with one c,k,g1[,...] per line")
        ->required();
    export_cmd->add_option("--format", cfg.format, "dot | json");

    std::vector<const char*> raw;
    raw.reserve(argv.size());
    for (const auto& a : argv) raw.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        CLI::App* bad = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << bad->help();
        return kUsage;
    }

    try {
        const Params P = validate_params(cfg.n, cfg.p);
        if (!P.colors_aligned())
            err << "warning: (n+1) does not divide (p-1); colors other than 0 lose the "
                   "separation property\n";
        if (embed_cmd->parsed()) return cmd_embed(P, cfg, out);
        if (distance_cmd->parsed()) return cmd_distance(P, cfg, out);
        if (tree_cmd->parsed()) return cmd_tree_dist(P, cfg, out);
        if (cover_cmd->parsed()) return cmd_check_covering(P, cfg, out);
        if (sep_cmd->parsed()) return cmd_check_separation(P, cfg, out);
        if (verify_cmd->parsed()) return cmd_verify(P, cfg, out);
        if (export_cmd->parsed()) return cmd_export_subtree(P, cfg, out);
    } catch (const InvalidParams& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ColorMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ScanExhausted& e) {
        err << "scan limit: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const Overflow& e) {
        err << "overflow: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "check failed: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kUsage;
}

}  // namespace treebed::cli
