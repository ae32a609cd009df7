#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "treebed/verifier.hpp"

namespace treebed {

using Json = nlohmann::ordered_json;

std::string to_string(ProductNorm norm);
ProductNorm parse_norm(const std::string& name);

/// {c, k, gamma[]}
Json to_json(const CubeId& id);

/// {t, x[], images:[{c,k,gamma[]}]}
Json to_json(const EmbeddedPoint& e);

/// {n, p, grid_step, cells_total, cells_uncovered, witnesses[]}; rationals
/// as "num/den" strings.
Json to_json(const CoveringReport& report);

/// {params, plan, norm, fit:{l,m}, n_samples, n_excluded, violations,
///  runtime_ms}. runtime_ms is null unless `with_timing`, which keeps the
/// document reproducible byte for byte. Infinite l is written as null.
Json verify_report_json(const Params& P, const SamplePlan& plan, ProductNorm norm,
                        const DistortionReport& report, bool with_timing);

/// One row per pair: t,x...,t',x'...,d_hyp,d_tree,per-color...
std::string report_csv(const Params& P, std::span<const PointPair> pairs,
                       const DistortionReport& report);

}  // namespace treebed
