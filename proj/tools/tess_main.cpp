#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tess/error.hpp"
#include "tess/experiment.hpp"
#include "tess/json_io.hpp"
#include "tess/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// 0 ok, 2 bad config or io, 3 generation failure, 4 identity failure,
// 5 empty window.
int exit_code_for(tess::ErrorCode c) {
  switch (c) {
    case tess::ErrorCode::ConfigError:
    case tess::ErrorCode::IoError:
      return 2;
    case tess::ErrorCode::EmptyWindow:
      return 5;
    default:
      return 3;
  }
}

int exit_code_for_name(const std::string& name) {
  if (name == "ConfigError" || name == "IoError") return 2;
  if (name == "EmptyWindow") return 5;
  return 3;
}

std::string default_out_dir() {
  const char* env = std::getenv("TESS_OUT_DIR");
  return (env && *env) ? std::string(env) : std::string(".");
}

struct BlockSpec {
  tess::Point2 origin{};
  double w = 0.0;
  double h = 0.0;
};

BlockSpec parse_block(const std::string& s) {
  std::istringstream in(s);
  double v[4];
  char sep = ',';
  for (int i = 0; i < 4; ++i) {
    if (i > 0 && (!(in >> sep) || sep != ',')) {
      throw tess::Error(tess::ErrorCode::ConfigError,
                        "--block expects x0,y0,w,h");
    }
    if (!(in >> v[i])) {
      throw tess::Error(tess::ErrorCode::ConfigError,
                        "--block expects x0,y0,w,h");
    }
  }
  if (!(v[2] > 0.0) || !(v[3] > 0.0)) {
    throw tess::Error(tess::ErrorCode::ConfigError,
                      "--block needs positive width and height");
  }
  return {{v[0], v[1]}, v[2], v[3]};
}

tess::RunFlags parse_checks(const std::string& list, int samples) {
  tess::RunFlags flags;
  flags.recip_samples = samples;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok == "identities" || tok == "residuals") {
      continue;  // always computed
    }
    if (tok == "recip") {
      flags.recip = true;
    } else if (tok == "subwindow") {
      flags.subwindow = true;
    } else if (tok == "all") {
      flags.recip = true;
      flags.subwindow = true;
    } else {
      throw tess::Error(tess::ErrorCode::ConfigError,
                        "unknown check: " + tok +
                            " (identities, residuals, recip, subwindow, all)");
    }
  }
  return flags;
}

tess::RunResult analyze_loaded(const tess::GeometricGraph& g,
                               std::optional<double> r,
                               std::optional<BlockSpec> blk,
                               const tess::RunFlags& flags, std::uint64_t seed) {
  tess::RunResult rr;
  rr.seed = seed;
  try {
    tess::FaceSet raw = tess::extract_faces(tess::embed(g));
    const std::vector<tess::Point2> refs = tess::face_reference_points(raw);
    tess::WindowAnalysis wa;
    if (blk) {
      wa = tess::analyze_block(g, raw, refs, blk->origin, blk->w, blk->h);
    } else {
      wa = tess::analyze_window(g, raw, refs, tess::Window{{0.0, 0.0}, *r});
    }
    rr.counts = wa.counts;
    rr.ids = tess::check_identities(wa.counts);
    rr.est = tess::estimate(wa.counts);
    rr.est.seed = seed;
    if (flags.recip) {
      const std::uint64_t s = seed ^ 0x5DEECE66D1CEB00Dull;
      rr.est.recip_area =
          blk ? tess::reciprocal_area_estimate_block(raw, blk->origin, blk->w,
                                                     blk->h, flags.recip_samples, s)
              : tess::reciprocal_area_estimate(wa.faces, tess::Window{{0, 0}, *r},
                                               flags.recip_samples, s);
    }
    rr.res = tess::validate_formulas(rr.est, wa.counts);
    if (flags.subwindow && !blk) {
      rr.subwindow_dev = tess::subwindow_mean_check(
          g, tess::Window{{0, 0}, *r}, rr.est, flags.subwindow_y,
          flags.subwindow_centers, seed ^ 0xC0FFEEull);
    }
    rr.ok = true;
  } catch (const tess::Error& e) {
    rr.error = tess::error_code_name(e.code());
  }
  return rr;
}

void print_run_summary(const tess::RunResult& rr) {
  if (!rr.ok) {
    std::cout << "seed " << rr.seed << ": failed (" << rr.error << ")\n";
    return;
  }
  const auto& c = rr.counts;
  std::cout << "seed " << rr.seed << ": vertices " << c.sum_n() << ", edge-parts "
            << c.M << ", cells " << c.N << ", identities "
            << (rr.ids.all_pass ? "pass" : "FAIL") << '\n';
  std::cout << "  theta " << rr.est.theta << ", phi " << rr.est.phi << ", xi "
            << rr.est.xi << ", mu_chi " << rr.est.mu_chi << ", mu_E "
            << rr.est.mu_E << ", mu_S " << rr.est.mu_S << '\n';
  std::ostringstream line;
  for (const auto& [k, v] : rr.res.residuals) line << ' ' << k << '=' << v;
  std::cout << "  residuals" << (line.str().empty() ? " (none)" : line.str());
  if (!rr.res.skipped.empty()) {
    std::cout << "  [near theta=2, walk relations withheld; |mu_chi|="
              << rr.res.theta2_gap << ']';
  }
  std::cout << '\n';
}

int finish_from_runs(const std::vector<tess::RunResult>& runs) {
  for (const auto& rr : runs) {
    if (!rr.ok) return exit_code_for_name(rr.error);
  }
  for (const auto& rr : runs) {
    if (!rr.ids.all_pass) return 4;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify: frozen constructions with hand-counted expectations.

struct Verifier {
  int failures = 0;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) std::cout << "  (" << detail << ')';
    std::cout << '\n';
    if (!ok) ++failures;
  }

  template <typename T>
  void check_eq(const std::string& name, T got, T want) {
    std::ostringstream d;
    d << "got " << got << ", want " << want;
    check(name, got == want, d.str());
  }

  void check_near(const std::string& name, double got, double want,
                  double tol = 1e-12) {
    std::ostringstream d;
    d << "got " << got << ", want " << want << " +-" << tol;
    check(name, std::abs(got - want) <= tol, d.str());
  }
};

void verify_six_orbit_pattern(Verifier& v) {
  const auto fx = tess::fig4a_fixture(2, {0.0, 0.0});
  tess::FaceSet raw = tess::extract_faces(tess::embed(fx.graph));
  const auto refs = tess::face_reference_points(raw);
  const auto wa = tess::analyze_block(fx.graph, raw, refs, fx.block_origin,
                                      fx.block_w, fx.block_h);
  const auto& c = wa.counts;
  v.check_eq<long long>("pattern block: vertices", c.sum_n(), 18);
  v.check_eq<long long>("pattern block: valency total", c.sum_kn(), 42);
  v.check_eq<long long>("pattern block: edges", c.n_edges, 21);
  v.check_eq<long long>("pattern block: cells", c.n_cells, 6);
  v.check_eq<long long>("pattern block: straight-gap vertices", c.n_pi_at(3), 3);
  v.check_eq<long long>("pattern block: euler total", c.script_X, 3);
  v.check_eq<long long>("pattern block: edge visits", c.script_E, 42);
  v.check_eq<long long>("pattern block: sides", c.script_S, 39);
  const auto ids = tess::check_identities(c);
  v.check("pattern block: identities", ids.all_pass);
  const auto est = tess::estimate(c);
  v.check_near("pattern block: theta", est.theta, 7.0 / 3.0, 0.0);
  v.check_near("pattern block: phi", est.phi, 1.0 / 6.0, 0.0);
  v.check_near("pattern block: mu_chi", est.mu_chi, 0.5, 0.0);
  v.check_near("pattern block: mu_E", est.mu_E, 7.0, 0.0);
  v.check_near("pattern block: theta_star", est.theta_star, 3.0, 0.0);
  const auto res = tess::validate_formulas(est, c);
  v.check("pattern block: rational path", res.exact);
  for (const char* k : {"eq29", "eq30", "eq31", "sec9", "sec13", "eq35", "muCstar"}) {
    const auto it = res.residuals.find(k);
    std::ostringstream d;
    if (it != res.residuals.end()) d << "residual " << it->second;
    v.check(std::string("pattern block: ") + k + " exactly zero",
            it != res.residuals.end() && it->second == 0.0, d.str());
  }

  // Cell unions: any grouping of whole cells must satisfy the walk
  // relations with the union means.
  tess::FaceLocator loc(raw);
  std::map<int, int> group_a, group_b;
  bool located = true;
  for (std::size_t i = 0; i < fx.anchors.size(); ++i) {
    const int f = loc.locate(fx.anchors[i]);
    if (f < 0) {
      located = false;
      break;
    }
    group_a[f] = fx.grouping_a[i];
    group_b[f] = 1 - raw.faces[f].chi;  // group by euler number
  }
  v.check("pattern block: anchors located", located);
  if (located) {
    const auto ua = tess::cell_union_stats(raw, group_a);
    const auto ub = tess::cell_union_stats(raw, group_b);
    const double th = est.theta, ph = est.phi;
    v.check_near("pattern unions A: mu_E", ua.bold_mu_E, 10.5, 0.0);
    v.check_near("pattern unions A: walk relation for E",
                 2.0 * th * ua.bold_mu_chi / (th - 2.0), ua.bold_mu_E);
    v.check_near("pattern unions A: walk relation for S",
                 2.0 * (th - ph) * ua.bold_mu_chi / (th - 2.0), ua.bold_mu_S);
    v.check_near("pattern unions B: mu_E", ub.bold_mu_E, 14.0, 0.0);
    v.check_near("pattern unions B: walk relation for E",
                 2.0 * th * ub.bold_mu_chi / (th - 2.0), ub.bold_mu_E);
    v.check_near("pattern unions B: walk relation for S",
                 2.0 * (th - ph) * ub.bold_mu_chi / (th - 2.0), ub.bold_mu_S);
  }
}

void verify_honeycomb(Verifier& v, tess::HexVariant variant) {
  const std::string tag = variant == tess::HexVariant::PointHole
                              ? "honeycomb point"
                              : "honeycomb segment";
  const auto bf = tess::hexagon_fixture(variant, 3, {0.0, 0.0});
  tess::FaceSet raw = tess::extract_faces(tess::embed(bf.graph));
  const auto refs = tess::face_reference_points(raw);
  const auto wa = tess::analyze_block(bf.graph, raw, refs, bf.block_origin,
                                      bf.block_w, bf.block_h);
  const auto& c = wa.counts;
  const bool point = variant == tess::HexVariant::PointHole;
  v.check_eq<long long>(tag + ": vertices", c.sum_n(), point ? 6 : 8);
  v.check_eq<long long>(tag + ": valency total", c.sum_kn(), point ? 12 : 16);
  v.check_eq<long long>(tag + ": edges", c.n_edges, point ? 6 : 8);
  v.check_eq<long long>(tag + ": cells", c.n_cells, 2);
  v.check_eq<long long>(tag + ": euler total", c.script_X, 0);
  v.check_eq<long long>(tag + ": edge visits", c.script_E, point ? 12 : 16);
  v.check(tag + ": identities", tess::check_identities(c).all_pass);
  const auto est = tess::estimate(c);
  v.check_near(tag + ": theta", est.theta, 2.0, 0.0);
  if (point) v.check_near(tag + ": xi", est.xi, 1.0 / 3.0, 0.0);
  const auto res = tess::validate_formulas(est, c);
  v.check(tag + ": near-theta-2 walk relations withheld",
          res.skipped.count("eq29") == 1 && res.skipped.count("eq30") == 1 &&
              res.skipped.count("eq31") == 1);
  v.check_near(tag + ": |mu_chi| under theta=2", res.theta2_gap, 0.0, 0.0);
  const auto s9 = res.residuals.find("sec9");
  const auto s13 = res.residuals.find("sec13");
  v.check(tag + ": count relations exactly zero",
          s9 != res.residuals.end() && s9->second == 0.0 &&
              s13 != res.residuals.end() && s13->second == 0.0);
}

void verify_diameter_window(Verifier& v) {
  const auto g = tess::build_graph({{-1.0, 0.0}, {1.0, 0.0}}, {{0, 1}});
  tess::FaceSet raw = tess::extract_faces(tess::embed(g));
  const auto refs = tess::face_reference_points(raw);
  const auto wa =
      tess::analyze_window(g, raw, refs, tess::Window{{0.0, 0.0}, 1.0});
  const auto& c = wa.counts;
  v.check_eq<long long>("diameter chord: edge-parts", c.M, 1);
  v.check_eq<long long>("diameter chord: wholly inside", c.M_prime, 1);
  v.check_eq<long long>("diameter chord: crossings", c.M_b, 0);
  v.check_eq<long long>("diameter chord: interior vertices", c.sum_n(), 0);
  v.check_eq<long long>("diameter chord: faces", c.N, 2);
  v.check_eq<long long>("diameter chord: edge visits", c.script_E, 4);
  v.check_eq<long long>("diameter chord: euler total", c.script_X, 2);
  v.check("diameter chord: identities", tess::check_identities(c).all_pass);
  bool refused = false;
  try {
    tess::estimate(c);
  } catch (const tess::Error& e) {
    refused = e.code() == tess::ErrorCode::EmptyWindow;
  }
  v.check("diameter chord: estimator refuses vertex-free window", refused);
}

void verify_empty_window(Verifier& v) {
  const auto g = tess::build_graph({}, {});
  tess::FaceSet raw = tess::extract_faces(tess::embed(g));
  const auto refs = tess::face_reference_points(raw);
  const auto wa =
      tess::analyze_window(g, raw, refs, tess::Window{{0.0, 0.0}, 1.0});
  const auto& c = wa.counts;
  v.check_eq<long long>("empty window: faces", c.N, 1);
  v.check_eq<long long>("empty window: edge visits", c.script_E, 0);
  v.check_eq<long long>("empty window: euler total", c.script_X, 1);
  v.check("empty window: identities", tess::check_identities(c).all_pass);
  bool refused = false;
  try {
    tess::estimate(c);
  } catch (const tess::Error& e) {
    refused = e.code() == tess::ErrorCode::EmptyWindow;
  }
  v.check("empty window: estimator refuses", refused);
}

int run_verify() {
  Verifier v;
  try {
    verify_six_orbit_pattern(v);
    verify_honeycomb(v, tess::HexVariant::PointHole);
    verify_honeycomb(v, tess::HexVariant::SegmentHole);
    verify_diameter_window(v);
    verify_empty_window(v);
  } catch (const tess::Error& e) {
    v.check("verify suite completed", false, e.what());
  }
  std::cout << (v.failures == 0 ? "verify: all checks passed\n"
                                : "verify: FAILURES\n");
  return v.failures == 0 ? 0 : 4;
}

void write_csv_cell(std::ostream& out, double v) {
  if (std::isfinite(v)) out << v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planar tessellation builder and window statistics"};
  app.require_subcommand(1);

  std::string config_path, out_path, checks = "identities,residuals";
  std::string graph_path, block_str, axis;
  std::vector<double> values;
  double r_flag = 0.0;
  std::uint64_t seed_flag = 0;
  bool has_r = false, has_seed = false, svg = false, force_disc = false;
  int reps = 1, jobs = 1, samples = 10000;

  auto add_common = [&](CLI::App* sub, bool with_reps) {
    sub->add_option("--out", out_path, "output file or directory");
    sub->add_option("--r", r_flag, "disc window radius")
        ->each([&](const std::string&) { has_r = true; });
    sub->add_option("--seed", seed_flag, "base seed")
        ->each([&](const std::string&) { has_seed = true; });
    if (with_reps) {
      sub->add_option("--reps", reps, "replications (seeds seed..seed+reps-1)");
      sub->add_option("--jobs", jobs, "worker threads");
    }
  };

  auto* gen = app.add_subcommand("generate", "build a graph and write it as json");
  gen->add_option("--config", config_path, "model config json")->required();
  add_common(gen, false);
  gen->add_flag("--svg", svg, "also render an svg next to the output");

  auto* ana = app.add_subcommand("analyze", "window census, identities, estimators");
  ana->add_option("graph", graph_path, "graph json file (alternative to --config)");
  ana->add_option("--config", config_path, "model config json");
  add_common(ana, true);
  ana->add_option("--checks", checks,
                  "comma list: identities,residuals,recip,subwindow,all");
  ana->add_option("--samples", samples, "reciprocal-area sample count");
  ana->add_option("--block", block_str, "rectangular frame x0,y0,w,h");
  ana->add_flag("--disc", force_disc, "use the disc window even for periodic fixtures");
  ana->add_flag("--svg", svg, "render the analyzed graph");

  auto* swp = app.add_subcommand("sweep", "replicate over an axis, write csv");
  swp->add_option("--config", config_path, "model config json")->required();
  swp->add_option("--axis", axis, "r | q | intensity")->required();
  swp->add_option("--values", values, "axis values")->required()->delimiter(',');
  add_common(swp, true);
  swp->add_option("--checks", checks, "checks per run");
  swp->add_option("--samples", samples, "reciprocal-area sample count");

  auto* ver = app.add_subcommand("verify", "run the built-in frozen checks");
  (void)ver;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const std::string out_dir = default_out_dir();

    if (gen->parsed()) {
      tess::ModelConfig cfg = tess::parse_model_config(tess::load_json(config_path));
      if (has_r) cfg.r = r_flag;
      if (has_seed) cfg.seed = seed_flag;
      const tess::ModelOutput mo = tess::build_model(cfg);
      std::string out = out_path.empty() ? out_dir + "/graph.json" : out_path;
      if (const fs::path parent = fs::path(out).parent_path(); !parent.empty()) {
        fs::create_directories(parent);
      }
      tess::save_graph(mo.graph, out);
      std::cout << "wrote " << out << ": " << mo.graph.nodes.size() << " nodes, "
                << mo.graph.links.size() << " links\n";
      if (svg) {
        const std::string sp = fs::path(out).replace_extension(".svg").string();
        tess::write_svg(sp, mo.graph);
        std::cout << "wrote " << sp << '\n';
      }
      return 0;
    }

    if (ana->parsed()) {
      tess::RunFlags flags = parse_checks(checks, samples);
      const std::string dir = out_path.empty() ? out_dir : out_path;
      fs::create_directories(dir);

      if (!graph_path.empty() && !config_path.empty()) {
        throw tess::Error(tess::ErrorCode::ConfigError,
                          "give a graph file or --config, not both");
      }

      if (!graph_path.empty()) {
        const tess::GeometricGraph g = tess::load_graph(graph_path);
        std::optional<BlockSpec> blk;
        std::optional<double> r;
        if (!block_str.empty()) {
          blk = parse_block(block_str);
        } else if (has_r) {
          r = r_flag;
        } else {
          throw tess::Error(tess::ErrorCode::ConfigError,
                            "analyzing a graph file needs --r or --block");
        }
        const std::uint64_t seed = has_seed ? seed_flag : 1;
        const tess::RunResult rr = analyze_loaded(g, r, blk, flags, seed);
        print_run_summary(rr);
        tess::save_json(tess::run_result_to_json(rr), dir + "/report.json");
        std::cout << "wrote " << dir << "/report.json\n";
        if (svg && rr.ok) {
          tess::FaceSet shown = tess::extract_faces(tess::embed(g));
          tess::write_svg(dir + "/graph.svg", g, &shown);
          std::cout << "wrote " << dir << "/graph.svg\n";
        }
        return finish_from_runs({rr});
      }

      if (config_path.empty()) {
        throw tess::Error(tess::ErrorCode::ConfigError,
                          "analyze needs a graph file or --config");
      }
      tess::ModelConfig cfg = tess::parse_model_config(tess::load_json(config_path));
      if (has_r) cfg.r = r_flag;
      if (has_seed) cfg.seed = seed_flag;
      flags.use_block = !force_disc;
      const std::vector<tess::RunResult> runs =
          tess::run_replications(cfg, flags, reps, jobs);
      for (const auto& rr : runs) print_run_summary(rr);
      if (runs.size() == 1) {
        tess::save_json(tess::run_result_to_json(runs[0]), dir + "/report.json");
        std::cout << "wrote " << dir << "/report.json\n";
      } else {
        json arr = json::array();
        for (const auto& rr : runs) arr.push_back(tess::run_result_to_json(rr));
        tess::save_json(arr, dir + "/runs.json");
        tess::save_json(tess::aggregate_to_json(tess::aggregate_runs(runs)),
                        dir + "/aggregate.json");
        std::cout << "wrote " << dir << "/runs.json and " << dir
                  << "/aggregate.json\n";
      }
      if (svg) {
        const tess::ModelOutput mo = tess::build_model(cfg);
        tess::FaceSet shown = tess::extract_faces(tess::embed(mo.graph));
        tess::write_svg(dir + "/graph.svg", mo.graph, &shown);
        std::cout << "wrote " << dir << "/graph.svg\n";
      }
      return finish_from_runs(runs);
    }

    if (swp->parsed()) {
      tess::RunFlags flags = parse_checks(checks, samples);
      tess::ModelConfig base = tess::parse_model_config(tess::load_json(config_path));
      if (has_seed) base.seed = seed_flag;
      if (axis != "r" && axis != "q" && axis != "intensity") {
        throw tess::Error(tess::ErrorCode::ConfigError,
                          "--axis must be r, q, or intensity");
      }
      if ((axis == "q" || axis == "intensity") && base.model != "poisson_deleted") {
        throw tess::Error(tess::ErrorCode::ConfigError,
                          "axis " + axis + " applies to poisson_deleted only");
      }
      const std::string out = out_path.empty() ? out_dir + "/sweep.csv" : out_path;
      if (const fs::path parent = fs::path(out).parent_path(); !parent.empty()) {
        fs::create_directories(parent);
      }
      std::ofstream csv(out);
      if (!csv) {
        throw tess::Error(tess::ErrorCode::IoError, "cannot open " + out);
      }
      csv.precision(17);
      static const char* kEst[] = {
          "alpha",     "lambda_verts", "lambda_edges", "lambda_cells",
          "theta",     "phi",          "xi",           "nu",
          "mu_A",      "mu_L",         "mu_chi",       "mu_V",
          "mu_E",      "mu_S",         "theta_star",   "xi_star",
          "phi_star",  "mu_V_star",    "mu_C_star",    "recip_area"};
      static const char* kRes[] = {"eq29", "eq30", "eq31", "eq18", "eq26",
                                   "sec9", "sec13", "eq35", "muCstar"};
      csv << "axis,value,seed,ok,error";
      for (const char* k : kEst) csv << ',' << k;
      for (const char* k : kRes) csv << ',' << k;
      csv << ",identities,subwindow_dev\n";
      long long rows = 0;
      for (const double val : values) {
        tess::ModelConfig cfg = base;
        if (axis == "r") {
          cfg.r = val;
        } else if (axis == "q") {
          cfg.q = val;
        } else {
          cfg.intensity = val;
        }
        flags.use_block = false;
        const auto runs = tess::run_replications(cfg, flags, reps, jobs);
        for (const auto& rr : runs) {
          csv << axis << ',' << val << ',' << rr.seed << ',' << (rr.ok ? 1 : 0)
              << ',' << rr.error;
          const double est_vals[] = {
              rr.est.alpha,      rr.est.lambda_verts, rr.est.lambda_edges,
              rr.est.lambda_cells, rr.est.theta,      rr.est.phi,
              rr.est.xi,         rr.est.nu,           rr.est.mu_A,
              rr.est.mu_L,       rr.est.mu_chi,       rr.est.mu_V,
              rr.est.mu_E,       rr.est.mu_S,         rr.est.theta_star,
              rr.est.xi_star,    rr.est.phi_star,     rr.est.mu_V_star,
              rr.est.mu_C_star,  rr.est.recip_area};
          for (double x : est_vals) {
            csv << ',';
            if (rr.ok) write_csv_cell(csv, x);
          }
          for (const char* k : kRes) {
            csv << ',';
            if (rr.ok) {
              const auto it = rr.res.residuals.find(k);
              if (it != rr.res.residuals.end()) write_csv_cell(csv, it->second);
            }
          }
          csv << ',' << (rr.ok ? (rr.ids.all_pass ? 1 : 0) : 0) << ',';
          if (rr.ok) write_csv_cell(csv, rr.subwindow_dev);
          csv << '\n';
          ++rows;
        }
      }
      if (!csv) {
        throw tess::Error(tess::ErrorCode::IoError, "write failed: " + out);
      }
      std::cout << "wrote " << out << ": " << rows << " rows\n";
      return 0;
    }

    if (ver->parsed()) {
      return run_verify();
    }
  } catch (const tess::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
