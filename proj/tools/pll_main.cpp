// pll: command-line front end.
//
// Subcommands:
//   gen        build a graph/network from a named family and write it as JSON
//   pack       circle-pack a triangulation; emit SVG and/or packing JSON
//   reff       effective resistance between two vertex sets of a network
//   walk       avoidance probability: Monte Carlo (avoid) or exact DP (exact)
//   startree   subdivide-and-replace-stars transform; optional flow lift audit
//   supported  supported-point census of a planar point cloud
//   limit      rooted-ball histograms and degree tail curves
//   experiment built-in experiment recipes (CSV + JSON sidecar + extras)
//
// Every subcommand validates its inputs, runs the embedded invariant audits
// of the routines it calls, and exits 0 only if everything passed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pll/electric.hpp"
#include "pll/experiments.hpp"
#include "pll/generators.hpp"
#include "pll/json_io.hpp"
#include "pll/limits.hpp"
#include "pll/packing.hpp"
#include "pll/startree.hpp"
#include "pll/stats.hpp"
#include "pll/supported.hpp"
#include "pll/svg.hpp"
#include "pll/triangulate.hpp"
#include "pll/version.hpp"
#include "pll/walks.hpp"

namespace {

using pll::Json;
using pll::Network;
using pll::PlanarGraph;
using pll::Vertex;

std::string g12(double x) {
  char b[64];
  std::snprintf(b, sizeof b, "%.12g", x);
  return b;
}

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::runtime_error("empty entry in vertex list \"" + text + "\"");
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size())
      throw std::runtime_error("bad vertex id \"" + item + "\" in list \"" + text + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw std::runtime_error("empty vertex list \"" + text + "\"");
  return out;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    pll::save_json_atomic(out_path, j);
}

// ------------------------------------------------------------------- gen

int run_gen(const std::string& family, int n, int h, int r, double alpha, long long steps,
            std::uint64_t seed, int max_degree, bool spine, const std::string& out) {
  Json j;
  if (family == "path") {
    j = pll::graph_to_json(pll::path_graph(n), 0);
  } else if (family == "cycle") {
    j = pll::graph_to_json(pll::cycle_graph(n), 0);
  } else if (family == "grid") {
    j = pll::graph_to_json(pll::grid_graph(n, n), 0);
  } else if (family == "binary-tree") {
    j = pll::graph_to_json(pll::binary_tree(h), 0);
  } else if (family == "tetrahedron") {
    j = pll::graph_to_json(pll::tetrahedron(), 0);
  } else if (family == "triangular-disk") {
    const pll::TriangularDisk disk = pll::triangular_disk(r);
    j = pll::graph_to_json(disk.graph, disk.center);
  } else if (family == "flip") {
    j = pll::graph_to_json(pll::flip_mcmc_triangulation(n, steps, seed, max_degree), 0);
  } else if (family == "sharpness") {
    const pll::BundledTree tree =
        spine ? pll::bundled_tree_spine(h, alpha) : pll::bundled_tree(h, alpha);
    j = pll::network_to_json(tree.network, tree.apex);
    j["base_leaf"] = tree.base_leaf;
  } else {
    throw std::runtime_error("unknown family \"" + family +
                             "\" (path, cycle, grid, binary-tree, tetrahedron, "
                             "triangular-disk, flip, sharpness)");
  }
  emit(j, out);
  return 0;
}

// ------------------------------------------------------------------ pack

// Outer face choice: --outer picks the face containing all the listed
// vertices; otherwise the largest face (first of that size) is used.
std::vector<Vertex> choose_outer(const PlanarGraph& g, const std::string& outer_opt) {
  const std::vector<std::vector<Vertex>> faces = g.faces();
  if (!outer_opt.empty()) {
    std::vector<Vertex> want = parse_vertex_list(outer_opt);
    std::sort(want.begin(), want.end());
    for (const auto& f : faces) {
      std::vector<Vertex> sorted = f;
      std::sort(sorted.begin(), sorted.end());
      if (std::includes(sorted.begin(), sorted.end(), want.begin(), want.end())) return f;
    }
    throw std::runtime_error("no face contains all of --outer");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < faces.size(); ++i)
    if (faces[i].size() > faces[best].size()) best = i;
  return faces[best];
}

int run_pack(const std::string& in, const std::string& svg_out, const std::string& out,
             const std::string& outer_opt, double boundary_radius, double tol, bool no_edges) {
  const pll::LoadedGraph lg = pll::graph_from_json(pll::load_json_file(in));
  const std::vector<Vertex> outer = choose_outer(lg.graph, outer_opt);
  const pll::PackingResult result = pll::pack_triangulation(
      lg.graph, outer, std::vector<double>(outer.size(), boundary_radius), tol);

  const double overlap = pll::packing_overlap(result.packing);
  const bool audit_ok = result.angle_error <= 1e-6 && result.tangency_error <= 1e-6 &&
                        overlap <= 1e-6;
  if (!svg_out.empty()) {
    pll::SvgOptions opt;
    opt.edges = !no_edges;
    opt.root = lg.root.value_or(-1);
    pll::save_text_atomic(svg_out, pll::render_packing_svg(result.packing, opt));
  }
  if (!out.empty()) pll::save_json_atomic(out, pll::packing_to_json(result.packing));
  Json summary;
  summary["iterations"] = result.iterations;
  summary["angle_error"] = result.angle_error;
  summary["tangency_error"] = result.tangency_error;
  summary["overlap"] = overlap;
  summary["audit_pass"] = audit_ok;
  std::cout << summary.dump(2) << "\n";
  return audit_ok ? 0 : 1;
}

// ------------------------------------------------------------------ reff

int run_reff(const std::string& net_path, const std::string& a_list, const std::string& z_list) {
  const pll::LoadedNetwork ln = pll::network_from_json(pll::load_json_file(net_path));
  const double value = pll::effective_resistance(ln.network, parse_vertex_list(a_list),
                                                 parse_vertex_list(z_list));
  std::cout << g12(value) << "\n";
  return 0;
}

// ------------------------------------------------------------------ walk

int run_walk_avoid(const std::string& in, const std::string& t_list, long long trials,
                   std::uint64_t seed, const std::string& out, const std::string& csv) {
  const pll::LoadedGraph lg = pll::graph_from_json(pll::load_json_file(in));
  std::vector<int> horizons;
  for (Vertex t : parse_vertex_list(t_list)) horizons.push_back(t);
  const std::vector<pll::AvoidanceEstimate> ests =
      pll::avoidance_probability_multi(lg.graph, horizons, trials, seed);
  if (!csv.empty()) {
    std::string table = "T,phi,ci_low,ci_high,trials,phi_log_T\n";
    for (const auto& e : ests) {
      table += std::to_string(e.horizon) + "," + g12(e.phi) + "," + g12(e.ci_low) + "," +
               g12(e.ci_high) + "," + std::to_string(e.trials) + "," +
               g12(e.phi * std::log(double(e.horizon))) + "\n";
    }
    pll::save_text_atomic(csv, table);
  }
  if (ests.size() == 1) {
    Json j;
    j["phi"] = ests[0].phi;
    j["ci"] = Json::array({ests[0].ci_low, ests[0].ci_high});
    j["trials"] = ests[0].trials;
    emit(j, out);
  } else {
    Json j = Json::array();
    for (const auto& e : ests)
      j.push_back({{"T", e.horizon},
                   {"phi", e.phi},
                   {"ci", Json::array({e.ci_low, e.ci_high})},
                   {"trials", e.trials}});
    emit(j, out);
  }
  return 0;
}

int run_walk_exact(const std::string& in, int T, const std::string& out,
                   const std::string& curve_csv) {
  const pll::LoadedGraph lg = pll::graph_from_json(pll::load_json_file(in));
  if (!curve_csv.empty()) {
    const std::vector<double> curve = pll::avoidance_exact_curve(lg.graph, T);
    std::string table = "T,phi\n";
    for (int t = 1; t <= T; ++t)
      table += std::to_string(t) + "," + g12(curve[std::size_t(t) - 1]) + "\n";
    pll::save_text_atomic(curve_csv, table);
    Json j;
    j["phi"] = curve.back();
    emit(j, out);
  } else {
    Json j;
    j["phi"] = pll::avoidance_exact_small(lg.graph, T);
    emit(j, out);
  }
  return 0;
}

// -------------------------------------------------------------- startree

int run_startree(const std::string& in, const std::string& out, const std::string& flow_path) {
  const pll::LoadedGraph lg = pll::graph_from_json(pll::load_json_file(in));
  const pll::StarTransform st = pll::star_tree_transform(lg.graph);
  if (!out.empty()) pll::save_json_atomic(out, pll::startree_to_json(st));
  bool ok = true;
  if (!flow_path.empty()) {
    const pll::Flow theta =
        pll::flow_from_json(pll::load_json_file(flow_path), lg.graph.edge_count());
    const pll::LiftedFlow lifted = pll::lift_flow(st, theta);
    const bool doubles = std::abs(lifted.energy_subdivided - 2.0 * lifted.energy_base) <=
                         1e-12 * std::max(1.0, lifted.energy_base);
    const bool bounded =
        lifted.energy_transformed <= 4.0 * lifted.energy_base * (1.0 + 1e-12);
    ok = doubles && bounded;
    Json j;
    j["energy_base"] = lifted.energy_base;
    j["energy_subdivided"] = lifted.energy_subdivided;
    j["energy_transformed"] = lifted.energy_transformed;
    j["audit_pass"] = ok;
    std::cout << j.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

// ------------------------------------------------------------- supported

int run_supported(const std::string& in, double delta, int s, const std::string& out) {
  const pll::PointCloud cloud = pll::cloud_from_json(pll::load_json_file(in));
  const pll::SupportedResult result = pll::supported_points(cloud, delta, s);
  Json j;
  j["count"] = result.count;
  j["witnesses"] = result.witnesses;
  emit(j, out);
  return 0;
}

// ----------------------------------------------------------------- limit

pll::RootLaw parse_mode(const std::string& mode) {
  if (mode == "uniform") return pll::RootLaw::Uniform;
  if (mode == "stationary") return pll::RootLaw::Stationary;
  throw std::runtime_error("mode must be uniform or stationary");
}

int run_limit_hist(const std::string& in, int r, const std::string& mode, bool census,
                   long long samples, std::uint64_t seed, const std::string& out) {
  const pll::LoadedGraph lg = pll::graph_from_json(pll::load_json_file(in));
  const pll::BallHistogram h =
      census ? pll::ball_census(lg.graph, r, parse_mode(mode))
             : pll::ball_histogram(lg.graph, r, samples, parse_mode(mode), seed);
  Json hist = Json::object();
  double total = 0.0;
  for (const auto& [code, p] : h.prob) {
    hist[code.hex()] = p;
    total += p;
  }
  Json j;
  j["radius"] = h.radius;
  j["mode"] = mode;
  j["samples"] = h.samples;
  j["classes"] = h.prob.size();
  j["hist"] = std::move(hist);
  emit(j, out);
  return std::abs(total - 1.0) <= 1e-9 ? 0 : 1;
}

int run_limit_tail(const std::string& in, const std::string& mode, const std::string& out) {
  const pll::LoadedGraph lg = pll::graph_from_json(pll::load_json_file(in));
  const pll::DegreeTail tail = pll::degree_tail(lg.graph, parse_mode(mode));
  std::string table = "stat,k,exceedance,count\n";
  auto rows = [&table](const char* name, const pll::TailCurve& c) {
    for (std::size_t i = 0; i < c.k.size(); ++i)
      table += std::string(name) + "," + std::to_string(c.k[i]) + "," + g12(c.exceedance[i]) +
               "," + std::to_string(c.count[i]) + "\n";
  };
  rows("degree", tail.degree);
  rows("neighbor_max", tail.neighbor_max);
  if (out.empty())
    std::cout << table;
  else
    pll::save_text_atomic(out, table);
  return 0;
}

// ------------------------------------------------------------ experiment

int run_experiment_cmd(pll::ExperimentConfig cfg) {
  const pll::ExperimentReport report = pll::run_experiment(cfg);
  Json j;
  j["csv"] = report.csv.string();
  j["sidecar"] = report.sidecar.string();
  Json extras = Json::array();
  for (const auto& p : report.extras) extras.push_back(p.string());
  j["extras"] = std::move(extras);
  j["pass"] = report.pass;
  std::cout << j.dump(2) << "\n";
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planar-limit laboratory: circle packings, effective resistance, "
               "star-tree transforms, random-walk experiments"};
  // --h is a real option below (tree height), so help lives on --help alone;
  // subcommands inherit this flag spelling.
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", pll::kLibraryVersion);
  app.require_subcommand(1);

  // gen
  std::string gen_family, gen_out;
  int gen_n = 10, gen_h = 4, gen_r = 4, gen_maxdeg = 0;
  double gen_alpha = 0.5;
  long long gen_steps = 0;
  std::uint64_t gen_seed = 1;
  bool gen_spine = false;
  CLI::App* gen = app.add_subcommand("gen", "generate a graph family member");
  gen->add_option("--family", gen_family, "path|cycle|grid|binary-tree|tetrahedron|"
                                          "triangular-disk|flip|sharpness")->required();
  gen->add_option("--n", gen_n, "vertex count / grid side");
  gen->add_option("--h", gen_h, "tree height");
  gen->add_option("--r", gen_r, "disk radius");
  gen->add_option("--alpha", gen_alpha, "bundle exponent in (0,1)");
  gen->add_option("--steps", gen_steps, "flip proposals");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--max-degree", gen_maxdeg, "flip degree cap (0 = none)");
  gen->add_flag("--spine", gen_spine, "sharpness: emit the probe spine only");
  gen->add_option("--out", gen_out, "output path (stdout if omitted)");

  // pack
  std::string pack_in, pack_svg, pack_out, pack_outer;
  double pack_boundary = 1.0, pack_tol = 1e-8;
  bool pack_no_edges = false;
  CLI::App* pack = app.add_subcommand("pack", "circle-pack a triangulation");
  pack->add_option("--in", pack_in, "graph JSON")->required();
  pack->add_option("--svg", pack_svg, "SVG output path");
  pack->add_option("--out", pack_out, "packing JSON output path");
  pack->add_option("--outer", pack_outer, "comma list of vertices on the outer face");
  pack->add_option("--boundary-radius", pack_boundary, "radius of every boundary circle");
  pack->add_option("--tol", pack_tol, "angle-sum tolerance");
  pack->add_flag("--no-edges", pack_no_edges, "omit tangency segments from the SVG");

  // reff
  std::string reff_net, reff_a, reff_z;
  CLI::App* reff = app.add_subcommand("reff", "effective resistance between vertex sets");
  reff->add_option("--net", reff_net, "network JSON")->required();
  reff->add_option("--A", reff_a, "comma list of source vertices")->required();
  reff->add_option("--Z", reff_z, "comma list of target vertices")->required();

  // walk
  CLI::App* walk = app.add_subcommand("walk", "return-avoidance probabilities");
  walk->require_subcommand(1);
  std::string wa_in, wa_T = "1000", wa_out, wa_csv;
  long long wa_trials = 100000;
  std::uint64_t wa_seed = 1;
  CLI::App* wa = walk->add_subcommand("avoid", "Monte Carlo estimate of phi(T)");
  wa->add_option("--in", wa_in, "graph JSON")->required();
  wa->add_option("--T", wa_T, "horizon, or comma list of horizons");
  wa->add_option("--trials", wa_trials, "Monte Carlo trials");
  wa->add_option("--seed", wa_seed, "random seed");
  wa->add_option("--out", wa_out, "JSON output path (stdout if omitted)");
  wa->add_option("--csv", wa_csv, "CSV output path for scaling plots");
  std::string we_in, we_out, we_curve;
  int we_T = 100;
  CLI::App* we = walk->add_subcommand("exact", "exact phi(T) by absorbing iteration");
  we->add_option("--in", we_in, "graph JSON")->required();
  we->add_option("--T", we_T, "horizon");
  we->add_option("--out", we_out, "JSON output path (stdout if omitted)");
  we->add_option("--curve", we_curve, "CSV output path for phi(1..T)");

  // startree
  std::string st_in, st_out, st_flow;
  CLI::App* st = app.add_subcommand("startree", "subdivide and replace stars by trees");
  st->add_option("--in", st_in, "graph JSON")->required();
  st->add_option("--out", st_out, "transformed network JSON output path");
  st->add_option("--lift-flow", st_flow, "flow JSON to lift and audit");

  // supported
  std::string sup_in, sup_out;
  double sup_delta = 0.25;
  int sup_s = 10;
  CLI::App* sup = app.add_subcommand("supported", "supported-point census of a cloud");
  sup->add_option("--in", sup_in, "cloud JSON")->required();
  sup->add_option("--delta", sup_delta, "scale parameter in (0, 1/2)");
  sup->add_option("--s", sup_s, "support level (>= 2)");
  sup->add_option("--out", sup_out, "JSON output path (stdout if omitted)");

  // limit
  CLI::App* limit = app.add_subcommand("limit", "rooted-ball statistics");
  limit->require_subcommand(1);
  std::string lh_in, lh_mode = "uniform", lh_out;
  int lh_r = 1;
  long long lh_samples = 10000;
  std::uint64_t lh_seed = 1;
  bool lh_census = false;
  CLI::App* lh = limit->add_subcommand("hist", "rooted-ball isomorphism histogram");
  lh->add_option("--in", lh_in, "graph JSON")->required();
  lh->add_option("--r", lh_r, "ball radius");
  lh->add_option("--mode", lh_mode, "root law: uniform|stationary");
  lh->add_flag("--census", lh_census, "exact census over all roots");
  lh->add_option("--samples", lh_samples, "Monte Carlo sample count");
  lh->add_option("--seed", lh_seed, "random seed");
  lh->add_option("--out", lh_out, "JSON output path (stdout if omitted)");
  std::string lt_in, lt_mode = "uniform", lt_out;
  CLI::App* lt = limit->add_subcommand("tail", "degree exceedance curves");
  lt->add_option("--in", lt_in, "graph JSON")->required();
  lt->add_option("--mode", lt_mode, "root law: uniform|stationary");
  lt->add_option("--out", lt_out, "CSV output path (stdout if omitted)");

  // experiment
  pll::ExperimentConfig cfg;
  std::string exp_out_dir;
  CLI::App* exp = app.add_subcommand("experiment", "run a built-in recipe");
  exp->add_option("--recipe", cfg.recipe, "log-resistance|phi-scaling|startree-energy|"
                                          "supported-count|sharpness")->required();
  exp->add_option("--out-dir", exp_out_dir, "report directory")->required();
  exp->add_option("--seed", cfg.seed, "random seed");
  exp->add_option("--threads", cfg.threads, "worker cap (0 = PLL_THREADS or 1)");
  exp->add_option("--instances", cfg.instances, "instances per parameter point");
  exp->add_option("--disk-radii", cfg.disk_radii, "log-resistance: lattice disk radii")
      ->delimiter(',');
  exp->add_option("--grid-side", cfg.grid_side, "phi-scaling: grid side length");
  exp->add_option("--T-grid", cfg.horizons, "phi-scaling: horizons")->delimiter(',');
  exp->add_option("--trials", cfg.trials, "phi-scaling: Monte Carlo trials");
  exp->add_option("--sizes", cfg.triangulation_sizes, "startree-energy: triangulation sizes")
      ->delimiter(',');
  exp->add_option("--flip-steps", cfg.flip_steps, "startree-energy: flip proposals");
  exp->add_option("--cloud-sizes", cfg.cloud_sizes, "supported-count: cloud sizes")
      ->delimiter(',');
  exp->add_option("--deltas", cfg.deltas, "supported-count: scale parameters")->delimiter(',');
  exp->add_option("--s-levels", cfg.support_levels, "supported-count: support levels")
      ->delimiter(',');
  exp->add_option("--max-height", cfg.max_height, "sharpness: tallest probe tree");
  exp->add_option("--alpha", cfg.alpha, "sharpness: bundle exponent");
  exp->add_option("--tail-height", cfg.tail_height, "sharpness: degree-tail tree height");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return run_gen(gen_family, gen_n, gen_h, gen_r, gen_alpha, gen_steps, gen_seed,
                     gen_maxdeg, gen_spine, gen_out);
    if (pack->parsed())
      return run_pack(pack_in, pack_svg, pack_out, pack_outer, pack_boundary, pack_tol,
                      pack_no_edges);
    if (reff->parsed()) return run_reff(reff_net, reff_a, reff_z);
    if (walk->parsed()) {
      if (wa->parsed()) return run_walk_avoid(wa_in, wa_T, wa_trials, wa_seed, wa_out, wa_csv);
      return run_walk_exact(we_in, we_T, we_out, we_curve);
    }
    if (st->parsed()) return run_startree(st_in, st_out, st_flow);
    if (sup->parsed()) return run_supported(sup_in, sup_delta, sup_s, sup_out);
    if (limit->parsed()) {
      if (lh->parsed())
        return run_limit_hist(lh_in, lh_r, lh_mode, lh_census, lh_samples, lh_seed, lh_out);
      return run_limit_tail(lt_in, lt_mode, lt_out);
    }
    if (exp->parsed()) {
      cfg.out_dir = exp_out_dir;
      return run_experiment_cmd(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
