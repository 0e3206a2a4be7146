#include "tess/json_io.hpp"

#include <cmath>
#include <fstream>

#include "tess/error.hpp"

namespace tess {

using nlohmann::json;

json graph_to_json(const GeometricGraph& g) {
  json nodes = json::array();
  for (const auto& p : g.nodes) nodes.push_back(json::array({p.x, p.y}));
  json links = json::array();
  for (const auto& [a, b] : g.links) links.push_back(json::array({a, b}));
  return json{{"nodes", std::move(nodes)}, {"links", std::move(links)}};
}

GeometricGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("links") ||
      !j["nodes"].is_array() || !j["links"].is_array()) {
    throw Error(ErrorCode::ConfigError,
                "graph json must be {\"nodes\": [...], \"links\": [...]}");
  }
  std::vector<Point2> nodes;
  nodes.reserve(j["nodes"].size());
  for (const auto& e : j["nodes"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error(ErrorCode::ConfigError, "graph node must be [x, y]");
    }
    nodes.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  std::vector<std::pair<int, int>> links;
  links.reserve(j["links"].size());
  const long long n = static_cast<long long>(nodes.size());
  for (const auto& e : j["links"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw Error(ErrorCode::ConfigError, "graph link must be [i, j]");
    }
    const long long a = e[0].get<long long>();
    const long long b = e[1].get<long long>();
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw Error(ErrorCode::ConfigError, "graph link index out of range");
    }
    links.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  return build_graph(nodes, links);
}

void save_graph(const GeometricGraph& g, const std::string& path) {
  save_json(graph_to_json(g), path);
}

GeometricGraph load_graph(const std::string& path) {
  return graph_from_json(load_json(path));
}

namespace {

json count_map(const std::map<int, long long>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

json double_map(const std::map<int, double>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

}  // namespace

json counts_to_json(const WindowCounts& wc) {
  json j{{"area", wc.area},
         {"n_verts", count_map(wc.n_verts)},
         {"n_pi_verts", count_map(wc.n_pi_verts)},
         {"n_edges", wc.n_edges},
         {"n_edge_ends", wc.n_edge_ends},
         {"n_cells", wc.n_cells},
         {"ell", wc.ell},
         {"M", wc.M},
         {"M_prime", wc.M_prime},
         {"M_b", wc.M_b},
         {"M_b1", wc.M_b1},
         {"M_b2", wc.M_b2},
         {"N", wc.N},
         {"N_prime", wc.N_prime},
         {"script_A", wc.script_A},
         {"script_L", wc.script_L},
         {"script_V", wc.script_V},
         {"script_E", wc.script_E},
         {"script_S", wc.script_S},
         {"script_C", wc.script_C},
         {"script_X", wc.script_X}};
  if (wc.block_mode) {
    j["block"] = json::array(
        {wc.block_origin.x, wc.block_origin.y, wc.block_w, wc.block_h});
  } else {
    j["center"] = json::array({wc.center.x, wc.center.y});
    j["r"] = wc.r;
  }
  return j;
}

json identities_to_json(const IdentityReport& ir) {
  json rows = json::array();
  for (const auto& e : ir.entries) {
    rows.push_back(json{
        {"name", e.name}, {"pass", e.pass}, {"lhs", e.lhs}, {"rhs", e.rhs}});
  }
  return json{{"all_pass", ir.all_pass}, {"rows", std::move(rows)}};
}

json estimators_to_json(const EstimatorReport& er) {
  return json{{"alpha", er.alpha},
              {"lambda_verts", er.lambda_verts},
              {"lambda_verts_k", double_map(er.lambda_verts_k)},
              {"lambda_pi_verts_k", double_map(er.lambda_pi_verts_k)},
              {"lambda_edges", er.lambda_edges},
              {"lambda_cells", er.lambda_cells},
              {"theta", er.theta},
              {"phi", er.phi},
              {"xi", er.xi},
              {"nu", er.nu},
              {"mu_A", er.mu_A},
              {"mu_L", er.mu_L},
              {"mu_chi", er.mu_chi},
              {"mu_V", er.mu_V},
              {"mu_E", er.mu_E},
              {"mu_S", er.mu_S},
              {"theta_star", er.theta_star},
              {"xi_star", er.xi_star},
              {"phi_star", er.phi_star},
              {"mu_V_star", er.mu_V_star},
              {"mu_C_star", er.mu_C_star},
              {"recip_area", er.recip_area},
              {"r", er.r},
              {"seed", er.seed}};
}

json residuals_to_json(const ResidualReport& rr) {
  static const char* kKeys[] = {"eq29", "eq30", "eq31", "eq18", "eq26",
                                "sec9", "sec13", "eq35", "muCstar"};
  json vals = json::object();
  for (const char* k : kKeys) {
    const auto it = rr.residuals.find(k);
    vals[k] = (it == rr.residuals.end()) ? json(nullptr) : json(it->second);
  }
  json skipped = json::array();
  for (const auto& k : rr.skipped) skipped.push_back(k);
  json j{{"residuals", std::move(vals)},
         {"skipped", std::move(skipped)},
         {"exact", rr.exact}};
  j["theta2_check"] = std::isnan(rr.theta2_gap) ? json(nullptr) : json(rr.theta2_gap);
  return j;
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open for write: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("json parse: ") + e.what());
  }
  return j;
}

}  // namespace tess
