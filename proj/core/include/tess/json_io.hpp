#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "tess/graph.hpp"
#include "tess/window_stats.hpp"

namespace tess {

// Graph wire format: {"nodes": [[x, y], ...], "links": [[i, j], ...]}.
// Doubles are emitted shortest-round-trip, so a load sees the same bits.
nlohmann::json graph_to_json(const GeometricGraph& g);
GeometricGraph graph_from_json(const nlohmann::json& j);

void save_graph(const GeometricGraph& g, const std::string& path);
GeometricGraph load_graph(const std::string& path);

nlohmann::json counts_to_json(const WindowCounts& wc);
nlohmann::json identities_to_json(const IdentityReport& ir);
nlohmann::json estimators_to_json(const EstimatorReport& er);

// All known residual keys appear; sampled-but-skipped and never-computed
// keys are null, and "theta2_check" carries |mu_chi| when the walk-around
// relations were withheld near theta = 2.
nlohmann::json residuals_to_json(const ResidualReport& rr);

void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

}  // namespace tess
