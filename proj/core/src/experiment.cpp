#include "tess/experiment.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "tess/error.hpp"
#include "tess/json_io.hpp"

namespace tess {

using nlohmann::json;

namespace {

double get_num(const json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number()) {
    throw Error(ErrorCode::ConfigError, std::string(key) + " must be a number");
  }
  return j[key].get<double>();
}

long long get_int(const json& j, const char* key, long long dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number_integer()) {
    throw Error(ErrorCode::ConfigError, std::string(key) + " must be an integer");
  }
  return j[key].get<long long>();
}

Point2 get_point(const json& j, const char* key, Point2 dflt) {
  if (!j.contains(key)) return dflt;
  const auto& v = j[key];
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw Error(ErrorCode::ConfigError, std::string(key) + " must be [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

ModelConfig parse_model_config(const json& j) {
  if (!j.is_object() || !j.contains("model") || !j["model"].is_string()) {
    throw Error(ErrorCode::ConfigError, "config needs a \"model\" string");
  }
  ModelConfig cfg;
  cfg.model = j["model"].get<std::string>();
  if (cfg.model != "poisson_deleted" && cfg.model != "falling_leaves" &&
      cfg.model != "hexagon" && cfg.model != "fig4a") {
    throw Error(ErrorCode::ConfigError, "unknown model: " + cfg.model);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0) {
      throw Error(ErrorCode::ConfigError, "seed must be a non-negative integer");
    }
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  cfg.r = get_num(j, "r", cfg.r);
  if (!(cfg.r > 0.0)) {
    throw Error(ErrorCode::ConfigError, "r must be positive");
  }
  const json params = j.contains("params") ? j["params"] : json::object();
  if (!params.is_object()) {
    throw Error(ErrorCode::ConfigError, "params must be an object");
  }
  if (cfg.model == "poisson_deleted") {
    cfg.intensity = get_num(params, "intensity", cfg.intensity);
    cfg.q = get_num(params, "q", cfg.q);
    cfg.margin = get_num(params, "margin", cfg.margin);
    if (!(cfg.q >= 0.0 && cfg.q <= 1.0)) {
      throw Error(ErrorCode::ConfigError, "q must lie in [0, 1]");
    }
  } else if (cfg.model == "falling_leaves") {
    cfg.leaves.w_min = get_num(params, "w_min", cfg.leaves.w_min);
    cfg.leaves.w_max = get_num(params, "w_max", cfg.leaves.w_max);
    cfg.leaves.h_min = get_num(params, "h_min", cfg.leaves.h_min);
    cfg.leaves.h_max = get_num(params, "h_max", cfg.leaves.h_max);
    if (params.contains("isotropic")) {
      if (!params["isotropic"].is_boolean()) {
        throw Error(ErrorCode::ConfigError, "isotropic must be a boolean");
      }
      cfg.leaves.isotropic = params["isotropic"].get<bool>();
    }
    cfg.leaves.fixed_angle = get_num(params, "fixed_angle", cfg.leaves.fixed_angle);
    cfg.leaves.budget = get_int(params, "budget", cfg.leaves.budget);
  } else {
    if (cfg.model == "hexagon" && params.contains("variant")) {
      const auto v = params["variant"];
      if (v == "point") {
        cfg.hex_variant = HexVariant::PointHole;
      } else if (v == "segment") {
        cfg.hex_variant = HexVariant::SegmentHole;
      } else {
        throw Error(ErrorCode::ConfigError,
                    "variant must be \"point\" or \"segment\"");
      }
    }
    cfg.copies = static_cast<int>(get_int(params, "copies", cfg.copies));
    cfg.origin_offset = get_point(params, "offset", cfg.origin_offset);
  }
  return cfg;
}

json model_config_to_json(const ModelConfig& cfg) {
  json params = json::object();
  if (cfg.model == "poisson_deleted") {
    params = {{"intensity", cfg.intensity}, {"q", cfg.q}, {"margin", cfg.margin}};
  } else if (cfg.model == "falling_leaves") {
    params = {{"w_min", cfg.leaves.w_min},   {"w_max", cfg.leaves.w_max},
              {"h_min", cfg.leaves.h_min},   {"h_max", cfg.leaves.h_max},
              {"isotropic", cfg.leaves.isotropic},
              {"fixed_angle", cfg.leaves.fixed_angle},
              {"budget", cfg.leaves.budget}};
  } else {
    if (cfg.model == "hexagon") {
      params["variant"] =
          cfg.hex_variant == HexVariant::PointHole ? "point" : "segment";
    }
    params["copies"] = cfg.copies;
    params["offset"] = json::array({cfg.origin_offset.x, cfg.origin_offset.y});
  }
  return json{
      {"model", cfg.model}, {"seed", cfg.seed}, {"r", cfg.r}, {"params", params}};
}

ModelOutput build_model(const ModelConfig& cfg) {
  ModelOutput mo;
  const Window w{{0.0, 0.0}, cfg.r};
  if (cfg.model == "poisson_deleted") {
    mo.graph = poisson_lines(cfg.intensity, w, cfg.margin, cfg.seed);
    if (cfg.q > 0.0) {
      // Decorrelated stream so thinning does not replay placement bits.
      mo.graph = delete_edge_interiors(mo.graph, cfg.q,
                                       cfg.seed ^ 0xA5A5A5A5A5A5A5A5ull);
    }
  } else if (cfg.model == "falling_leaves") {
    mo.graph = falling_leaves(cfg.leaves, w, cfg.seed);
  } else if (cfg.model == "hexagon") {
    const int need = static_cast<int>(std::ceil((cfg.r + 4.0) / 1.5));
    const int copies = cfg.copies > 0 ? cfg.copies : std::max(2, need);
    BlockFixture bf = hexagon_fixture(cfg.hex_variant, copies, cfg.origin_offset);
    mo.graph = std::move(bf.graph);
    mo.has_block = true;
    mo.block_origin = bf.block_origin;
    mo.block_w = bf.block_w;
    mo.block_h = bf.block_h;
  } else if (cfg.model == "fig4a") {
    const int need = static_cast<int>(std::ceil((cfg.r + 3.0) / 2.0));
    const int copies = cfg.copies > 0 ? cfg.copies : std::max(2, need);
    Fig4aFixture fx = fig4a_fixture(copies, cfg.origin_offset);
    mo.graph = std::move(fx.graph);
    mo.has_block = true;
    mo.block_origin = fx.block_origin;
    mo.block_w = fx.block_w;
    mo.block_h = fx.block_h;
    mo.anchors = std::move(fx.anchors);
    mo.anchor_names = std::move(fx.anchor_names);
    mo.grouping_a = std::move(fx.grouping_a);
  } else {
    throw Error(ErrorCode::ConfigError, "unknown model: " + cfg.model);
  }
  return mo;
}

RunResult run_single(const ModelConfig& cfg, const RunFlags& flags) {
  RunResult rr;
  rr.seed = cfg.seed;
  try {
    const ModelOutput mo = build_model(cfg);
    FaceSet raw = extract_faces(embed(mo.graph));
    const std::vector<Point2> refs = face_reference_points(raw);
    const Window w{{0.0, 0.0}, cfg.r};
    const bool block = flags.use_block && mo.has_block;
    WindowAnalysis wa =
        block ? analyze_block(mo.graph, raw, refs, mo.block_origin, mo.block_w,
                              mo.block_h)
              : analyze_window(mo.graph, raw, refs, w);
    rr.counts = wa.counts;
    rr.ids = check_identities(wa.counts);
    rr.est = estimate(wa.counts);
    rr.est.seed = cfg.seed;
    if (flags.recip) {
      const std::uint64_t s = cfg.seed ^ 0x5DEECE66D1CEB00Dull;
      rr.est.recip_area =
          block ? reciprocal_area_estimate_block(raw, mo.block_origin, mo.block_w,
                                                 mo.block_h, flags.recip_samples, s)
                : reciprocal_area_estimate(wa.faces, w, flags.recip_samples, s);
    }
    rr.res = validate_formulas(rr.est, wa.counts);
    if (flags.subwindow && !block) {
      rr.subwindow_dev =
          subwindow_mean_check(mo.graph, w, rr.est, flags.subwindow_y,
                               flags.subwindow_centers, cfg.seed ^ 0xC0FFEEull);
    }
    rr.ok = true;
  } catch (const Error& e) {
    rr.error = error_code_name(e.code());
  }
  return rr;
}

std::vector<RunResult> run_replications(const ModelConfig& cfg,
                                        const RunFlags& flags, int reps,
                                        int jobs) {
  if (reps <= 0) throw Error(ErrorCode::ConfigError, "reps must be positive");
  std::vector<RunResult> out(static_cast<std::size_t>(reps));
  const int workers = std::max(1, std::min(jobs, reps));
  if (workers == 1) {
    for (int i = 0; i < reps; ++i) {
      ModelConfig c = cfg;
      c.seed = cfg.seed + static_cast<std::uint64_t>(i);
      out[static_cast<std::size_t>(i)] = run_single(c, flags);
    }
    return out;
  }
  std::atomic<int> next{0};
  auto work = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= reps) return;
      ModelConfig c = cfg;
      c.seed = cfg.seed + static_cast<std::uint64_t>(i);
      out[static_cast<std::size_t>(i)] = run_single(c, flags);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return out;
}

namespace {

void accumulate(Aggregate& agg, const std::string& key, double v) {
  if (!std::isfinite(v)) return;
  agg.mean[key] += v;
  agg.stddev[key] += v * v;  // holds sum of squares until finalized
  agg.count[key] += 1;
}

void finalize(Aggregate& agg) {
  for (auto& [key, sum] : agg.mean) {
    const int n = agg.count[key];
    const double m = sum / n;
    sum = m;
    double& sq = agg.stddev[key];
    sq = n > 1 ? std::sqrt(std::max(0.0, (sq - n * m * m) / (n - 1))) : 0.0;
  }
  for (auto& [key, sum] : agg.residual_mean) sum /= agg.residual_count[key];
}

}  // namespace

Aggregate aggregate_runs(const std::vector<RunResult>& runs) {
  Aggregate agg;
  agg.total = static_cast<int>(runs.size());
  for (const auto& rr : runs) {
    if (!rr.ok) {
      ++agg.failed;
      continue;
    }
    agg.identities_all = agg.identities_all && rr.ids.all_pass;
    const EstimatorReport& e = rr.est;
    accumulate(agg, "alpha", e.alpha);
    accumulate(agg, "lambda_verts", e.lambda_verts);
    accumulate(agg, "lambda_edges", e.lambda_edges);
    accumulate(agg, "lambda_cells", e.lambda_cells);
    accumulate(agg, "theta", e.theta);
    accumulate(agg, "phi", e.phi);
    accumulate(agg, "xi", e.xi);
    accumulate(agg, "nu", e.nu);
    accumulate(agg, "mu_A", e.mu_A);
    accumulate(agg, "mu_L", e.mu_L);
    accumulate(agg, "mu_chi", e.mu_chi);
    accumulate(agg, "mu_V", e.mu_V);
    accumulate(agg, "mu_E", e.mu_E);
    accumulate(agg, "mu_S", e.mu_S);
    accumulate(agg, "theta_star", e.theta_star);
    accumulate(agg, "xi_star", e.xi_star);
    accumulate(agg, "phi_star", e.phi_star);
    accumulate(agg, "mu_V_star", e.mu_V_star);
    accumulate(agg, "mu_C_star", e.mu_C_star);
    accumulate(agg, "recip_area", e.recip_area);
    accumulate(agg, "subwindow_dev", rr.subwindow_dev);
    for (const auto& [key, v] : rr.res.residuals) {
      if (!std::isfinite(v)) continue;
      agg.residual_mean[key] += v;
      agg.residual_count[key] += 1;
    }
  }
  finalize(agg);
  return agg;
}

json aggregate_to_json(const Aggregate& agg) {
  json means = json::object(), sds = json::object(), counts = json::object();
  for (const auto& [k, v] : agg.mean) means[k] = v;
  for (const auto& [k, v] : agg.stddev) sds[k] = v;
  for (const auto& [k, v] : agg.count) counts[k] = v;
  json rmeans = json::object();
  for (const auto& [k, v] : agg.residual_mean) rmeans[k] = v;
  return json{{"total", agg.total},
              {"failed", agg.failed},
              {"identities_all", agg.identities_all},
              {"mean", std::move(means)},
              {"stddev", std::move(sds)},
              {"count", std::move(counts)},
              {"residual_mean", std::move(rmeans)}};
}

json run_result_to_json(const RunResult& rr) {
  json j{{"seed", rr.seed}, {"ok", rr.ok}};
  if (!rr.ok) {
    j["error"] = rr.error;
    return j;
  }
  j["counts"] = counts_to_json(rr.counts);
  j["identities"] = identities_to_json(rr.ids);
  j["estimators"] = estimators_to_json(rr.est);
  j["residuals"] = residuals_to_json(rr.res);
  j["subwindow_dev"] =
      std::isnan(rr.subwindow_dev) ? json(nullptr) : json(rr.subwindow_dev);
  return j;
}

}  // namespace tess
