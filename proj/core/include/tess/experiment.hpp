#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tess/generators.hpp"
#include "tess/window_stats.hpp"

namespace tess {

// Parsed {"model": ..., "seed": ..., "r": ..., "params": {...}}.
struct ModelConfig {
  std::string model;  // poisson_deleted | falling_leaves | hexagon | fig4a
  std::uint64_t seed = 1;
  double r = 8.0;

  // poisson_deleted
  double intensity = 1.0;
  double q = 0.0;
  double margin = 5.0;

  // falling_leaves
  LeafConfig leaves;

  // hexagon / fig4a
  HexVariant hex_variant = HexVariant::PointHole;
  int copies = 0;  // 0: derived from r
  Point2 origin_offset{};
};

ModelConfig parse_model_config(const nlohmann::json& j);
nlohmann::json model_config_to_json(const ModelConfig& cfg);

struct ModelOutput {
  GeometricGraph graph;
  bool has_block = false;
  Point2 block_origin{};
  double block_w = 0.0;
  double block_h = 0.0;
  std::vector<Point2> anchors;
  std::vector<std::string> anchor_names;
  std::vector<int> grouping_a;
};

// Builds the graph for cfg at cfg.seed.  Periodic fixtures also carry their
// natural block; random models are analyzed through the disc window.
ModelOutput build_model(const ModelConfig& cfg);

struct RunFlags {
  bool use_block = false;  // block analysis when the model has one
  bool recip = false;
  int recip_samples = 10000;
  bool subwindow = false;
  double subwindow_y = 1.0;
  int subwindow_centers = 200;
};

struct RunResult {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;  // error code name when not ok
  WindowCounts counts;
  IdentityReport ids;
  EstimatorReport est;
  ResidualReport res;
  double subwindow_dev = std::numeric_limits<double>::quiet_NaN();
};

RunResult run_single(const ModelConfig& cfg, const RunFlags& flags);

// Seeds cfg.seed .. cfg.seed + reps - 1; results come back in seed order no
// matter how many worker threads ran them.
std::vector<RunResult> run_replications(const ModelConfig& cfg,
                                        const RunFlags& flags, int reps,
                                        int jobs);

struct Aggregate {
  int total = 0;
  int failed = 0;
  bool identities_all = true;
  // Per estimator field: mean and sample standard deviation over the runs
  // where the field was finite.
  std::map<std::string, double> mean;
  std::map<std::string, double> stddev;
  std::map<std::string, int> count;
  std::map<std::string, double> residual_mean;
  std::map<std::string, int> residual_count;
};

Aggregate aggregate_runs(const std::vector<RunResult>& runs);
nlohmann::json aggregate_to_json(const Aggregate& agg);
nlohmann::json run_result_to_json(const RunResult& rr);

}  // namespace tess
