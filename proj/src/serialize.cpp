#include "treebed/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace treebed {

std::string to_string(ProductNorm norm) {
    switch (norm) {
        case ProductNorm::L1: return "l1";
        case ProductNorm::L2: return "l2";
        case ProductNorm::Linf: return "linf";
    }
    return "?";
}

ProductNorm parse_norm(const std::string& name) {
    if (name == "l1" || name == "L1") return ProductNorm::L1;
    if (name == "l2" || name == "L2") return ProductNorm::L2;
    if (name == "linf" || name == "Linf") return ProductNorm::Linf;
    throw std::invalid_argument("unknown norm '" + name + "'");
}

Json to_json(const CubeId& id) {
    Json j;
    j["c"] = id.c;
    j["k"] = id.k;
    j["gamma"] = id.gamma;
    return j;
}

Json to_json(const EmbeddedPoint& e) {
    Json j;
    j["t"] = e.source.t;
    j["x"] = e.source.x;
    j["images"] = Json::array();
    for (const auto& id : e.images) j["images"].push_back(to_json(id));
    return j;
}

Json to_json(const CoveringReport& report) {
    Json j;
    j["n"] = report.n;
    j["p"] = report.p;
    j["grid_step"] = to_string(report.grid_step);
    j["cells_total"] = report.cells_total;
    j["cells_uncovered"] = report.cells_uncovered;
    j["witnesses"] = Json::array();
    for (const auto& w : report.witnesses) {
        Json point = Json::array();
        for (const auto& q : w) point.push_back(to_string(q));
        j["witnesses"].push_back(std::move(point));
    }
    return j;
}

namespace {

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json verify_report_json(const Params& P, const SamplePlan& plan, ProductNorm norm,
                        const DistortionReport& report, bool with_timing) {
    Json j;
    j["params"] = {{"n", P.n()}, {"p", P.p()}};
    j["plan"] = {{"t_min", plan.region.t_min},
                 {"t_max", plan.region.t_max},
                 {"x_radius", plan.region.x_radius},
                 {"count", plan.count},
                 {"strategy", to_string(plan.strategy)},
                 {"seed", plan.seed}};
    j["norm"] = to_string(norm);
    if (report.fit)
        j["fit"] = {{"l", finite_or_null(report.fit->l)}, {"m", report.fit->m}};
    else
        j["fit"] = nullptr;
    j["n_samples"] = report.samples.size();
    j["n_excluded"] = report.excluded;
    j["violations"] = report.violations;
    j["runtime_ms"] =
        with_timing && report.runtime_ms ? Json(*report.runtime_ms) : Json(nullptr);
    return j;
}

namespace {

void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::string report_csv(const Params& P, std::span<const PointPair> pairs,
                       const DistortionReport& report) {
    if (pairs.size() != report.samples.size())
        throw DimensionMismatch(pairs.size(), report.samples.size());
    std::string out = "t";
    for (int i = 0; i < P.n(); ++i) out += ",x" + std::to_string(i + 1);
    out += ",t2";
    for (int i = 0; i < P.n(); ++i) out += ",x2_" + std::to_string(i + 1);
    out += ",d_hyp,d_tree";
    for (int c = 0; c < P.colors(); ++c) out += ",d_c" + std::to_string(c);
    out += "\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        append_number(out, pairs[i].a.t);
        for (double v : pairs[i].a.x) out += ",", append_number(out, v);
        out += ",";
        append_number(out, pairs[i].b.t);
        for (double v : pairs[i].b.x) out += ",", append_number(out, v);
        out += ",";
        append_number(out, report.samples[i].d_hyp);
        out += ",";
        append_number(out, report.samples[i].d_tree);
        for (auto d : report.samples[i].per_color) out += "," + std::to_string(d);
        out += "\n";
    }
    return out;
}

}  // namespace treebed
