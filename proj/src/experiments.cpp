#include "pll/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <type_traits>

#include "pll/electric.hpp"
#include "pll/generators.hpp"
#include "pll/json_io.hpp"
#include "pll/limits.hpp"
#include "pll/packing.hpp"
#include "pll/rng.hpp"
#include "pll/startree.hpp"
#include "pll/stats.hpp"
#include "pll/supported.hpp"
#include "pll/svg.hpp"
#include "pll/version.hpp"
#include "pll/walks.hpp"

namespace pll {

namespace {

std::string g17(double x) {
  char b[64];
  std::snprintf(b, sizeof b, "%.17g", x);
  return b;
}

template <class T>
std::string dec(T x) {
  static_assert(std::is_integral_v<T>);
  return std::to_string(x);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      out += '\n';
    }
    return out;
  }
};

[[noreturn]] void invalid(const std::string& recipe, const std::string& field,
                          const std::string& why) {
  throw std::invalid_argument("recipe " + recipe + ": field " + field + " " + why);
}

// Run tasks on `threads` workers; task order in the vector fixes where each
// result lands, so the output is identical for any worker count.
void run_pool(int threads, std::vector<std::function<void()>>& tasks) {
  const int width = std::max(1, std::min<int>(threads, int(tasks.size())));
  if (width == 1) {
    for (auto& task : tasks) task();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error = nullptr;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(width);
  for (int i = 0; i < width; ++i) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= tasks.size()) return;
        try {
          tasks[k]();
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (first_error) std::rethrow_exception(first_error);
}

// What a recipe hands back to the shared report writer.
struct RecipeOutput {
  Table table;
  Json parameters;
  Json fits = Json::object();
  Json checks = Json::object();
  bool pass = true;
  // extra files: name (relative to out_dir) -> content
  std::vector<std::pair<std::string, std::string>> extras;
};

void set_check(RecipeOutput& out, const char* name, bool ok) {
  out.checks[name] = ok;
  if (!ok) out.pass = false;
}

// ---------------------------------------------------------------- recipes

// Annulus resistance ladder for a lattice disk packed with unit radii:
// Euclidean radii 3, 6, 12, ... while they stay well inside the disk.
std::vector<double> resistance_ladder(int disk_radius) {
  std::vector<double> ladder;
  for (double rho = 3.0; rho <= 1.5 * double(disk_radius); rho *= 2.0) ladder.push_back(rho);
  return ladder;
}

RecipeOutput run_log_resistance(const ExperimentConfig& cfg) {
  if (cfg.disk_radii.empty()) invalid(cfg.recipe, "disk_radii", "must be non-empty");
  for (int r : cfg.disk_radii)
    if (r < 8) invalid(cfg.recipe, "disk_radii", "entries must be at least 8");

  struct Slot {
    std::vector<std::vector<std::string>> rows;
    LinearFit fit;
    std::string svg;
  };
  std::vector<Slot> slots(cfg.disk_radii.size());
  const int svg_index =
      int(std::min_element(cfg.disk_radii.begin(), cfg.disk_radii.end()) - cfg.disk_radii.begin());

  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < cfg.disk_radii.size(); ++i) {
    tasks.push_back([&, i] {
      const int r = cfg.disk_radii[i];
      TriangularDisk disk = triangular_disk(r);
      PackingResult packed = pack_triangulation(
          disk.graph, disk.boundary, std::vector<double>(disk.boundary.size(), 1.0));
      CirclePacking packing = normalize_at_root(packed.packing, disk.center);
      const std::vector<double> ladder = resistance_ladder(r);
      AnnulusProfile profile = annulus_resistance_profile(packing, Network::unit(disk.graph),
                                                          Point{0.0, 0.0}, ladder);
      std::vector<double> xs, ys;
      for (std::size_t j = 0; j + 1 < ladder.size(); ++j) {
        xs.push_back(std::log(ladder[j + 1]));
        ys.push_back(profile.cumulative[j]);
        slots[i].rows.push_back({dec(r), dec(int(j)), g17(ladder[j]), g17(ladder[j + 1]),
                                 g17(profile.consecutive[j]), g17(profile.cumulative[j]),
                                 g17(std::log(ladder[j + 1]))});
      }
      slots[i].fit = linear_fit(xs, ys);
      if (int(i) == svg_index) {
        SvgOptions opt;
        opt.root = disk.center;
        slots[i].svg = render_packing_svg(packing, opt);
      }
    });
  }
  const int threads = resolve_thread_count(cfg.threads);
  run_pool(threads, tasks);

  RecipeOutput out;
  out.table.header = {"disk_radius", "annulus",         "r_inner",        "r_outer",
                      "reff_annulus", "reff_cumulative", "log_r_outer"};
  Json fits = Json::array();
  bool all_positive = true;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    for (auto& row : slots[i].rows) out.table.rows.push_back(std::move(row));
    fits.push_back({{"disk_radius", cfg.disk_radii[i]},
                    {"slope", slots[i].fit.slope},
                    {"intercept", slots[i].fit.intercept},
                    {"r2", slots[i].fit.r2}});
    if (!(slots[i].fit.slope > 0.0)) all_positive = false;
  }
  out.fits["per_disk"] = std::move(fits);
  set_check(out, "cumulative_resistance_grows_with_log_radius", all_positive);
  out.extras.emplace_back(cfg.recipe + ".svg", std::move(slots[svg_index].svg));
  out.parameters = {{"disk_radii", cfg.disk_radii}};
  return out;
}

RecipeOutput run_phi_scaling(const ExperimentConfig& cfg) {
  if (cfg.grid_side < 2) invalid(cfg.recipe, "grid_side", "must be at least 2");
  if (cfg.horizons.empty()) invalid(cfg.recipe, "horizons", "must be non-empty");
  for (int t : cfg.horizons)
    if (t < 1) invalid(cfg.recipe, "horizons", "entries must be positive");
  if (cfg.trials < 1) invalid(cfg.recipe, "trials", "must be positive");

  const PlanarGraph g = grid_graph(cfg.grid_side, cfg.grid_side);
  const std::vector<AvoidanceEstimate> estimates =
      avoidance_probability_multi(g, cfg.horizons, cfg.trials, cfg.seed);

  RecipeOutput out;
  out.table.header = {"grid_side", "T", "trials", "phi", "ci_low", "ci_high", "phi_log_T"};
  std::vector<double> products;
  bool positive = true;
  for (const AvoidanceEstimate& est : estimates) {
    const double product = est.phi * std::log(double(est.horizon));
    products.push_back(product);
    if (!(est.phi > 0.0)) positive = false;
    out.table.rows.push_back({dec(cfg.grid_side), dec(est.horizon), dec(est.trials), g17(est.phi),
                              g17(est.ci_low), g17(est.ci_high), g17(product)});
  }
  const double lo = *std::min_element(products.begin(), products.end());
  const double hi = *std::max_element(products.begin(), products.end());
  out.fits = {{"products", products}, {"window_low", lo}, {"window_high", hi}};
  set_check(out, "phi_positive", positive);
  set_check(out, "phi_log_T_within_tripling_window", positive && hi <= 3.0 * lo);
  out.parameters = {{"grid_side", cfg.grid_side}, {"horizons", cfg.horizons},
                    {"trials", cfg.trials}};
  return out;
}

RecipeOutput run_startree_energy(const ExperimentConfig& cfg) {
  if (cfg.triangulation_sizes.empty())
    invalid(cfg.recipe, "triangulation_sizes", "must be non-empty");
  for (int n : cfg.triangulation_sizes)
    if (n < 4) invalid(cfg.recipe, "triangulation_sizes", "entries must be at least 4");
  if (cfg.flip_steps < 0) invalid(cfg.recipe, "flip_steps", "must be non-negative");
  if (cfg.instances < 1) invalid(cfg.recipe, "instances", "must be positive");

  struct Slot {
    std::vector<std::string> row;
    double ratio_transformed = 0.0;
    bool doubling = false, quadruple = false, conserving = false;
  };
  struct PointSpec {
    int n;
    int instance;
    std::uint64_t seed;
  };
  std::vector<PointSpec> points;
  for (int n : cfg.triangulation_sizes)
    for (int i = 0; i < cfg.instances; ++i)
      points.push_back({n, i, cfg.seed + 7919ULL * std::uint64_t(points.size())});

  std::vector<Slot> slots(points.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t p = 0; p < points.size(); ++p) {
    tasks.push_back([&, p] {
      const PointSpec spec = points[p];
      const PlanarGraph g = flip_mcmc_triangulation(spec.n, cfg.flip_steps, spec.seed);
      Rng rng(spec.seed, 1);
      const Vertex a = Vertex(rng.below(std::uint32_t(spec.n)));
      Vertex z = Vertex(rng.below(std::uint32_t(spec.n - 1)));
      if (z >= a) ++z;
      const Network net = Network::unit(g);
      const Flow theta = unit_current_flow(net, {a}, {z});
      const StarTransform st = star_tree_transform(g);
      const LiftedFlow lifted = lift_flow(st, theta);
      const double div_sub =
          max_interior_divergence(Network::unit(st.subdivision.graph), lifted.subdivided);
      const double div_tr = max_interior_divergence(st.network, lifted.transformed);
      Slot& slot = slots[p];
      slot.ratio_transformed = lifted.energy_transformed / lifted.energy_base;
      slot.doubling = std::abs(lifted.energy_subdivided - 2.0 * lifted.energy_base) <=
                      1e-12 * std::max(1.0, lifted.energy_base);
      slot.quadruple = lifted.energy_transformed <= 4.0 * lifted.energy_base * (1.0 + 1e-12);
      slot.conserving = div_sub <= 1e-9 && div_tr <= 1e-9;
      slot.row = {dec(spec.n),
                  dec(spec.instance),
                  dec(spec.seed),
                  dec(a),
                  dec(z),
                  g17(lifted.energy_base),
                  g17(lifted.energy_subdivided),
                  g17(lifted.energy_transformed),
                  g17(lifted.energy_subdivided / lifted.energy_base),
                  g17(lifted.energy_transformed / lifted.energy_base),
                  g17(div_sub),
                  g17(div_tr)};
    });
  }
  run_pool(resolve_thread_count(cfg.threads), tasks);

  RecipeOutput out;
  out.table.header = {"n",       "instance",          "seed",
                      "source",  "sink",              "energy_base",
                      "energy_subdivided", "energy_transformed", "ratio_subdivided",
                      "ratio_transformed", "div_subdivided",     "div_transformed"};
  bool doubling = true, quadruple = true, conserving = true;
  double max_ratio = 0.0;
  for (Slot& slot : slots) {
    doubling = doubling && slot.doubling;
    quadruple = quadruple && slot.quadruple;
    conserving = conserving && slot.conserving;
    max_ratio = std::max(max_ratio, slot.ratio_transformed);
    out.table.rows.push_back(std::move(slot.row));
  }
  out.fits = {{"max_ratio_transformed", max_ratio}};
  set_check(out, "subdivision_energy_doubles", doubling);
  set_check(out, "transformed_energy_at_most_4x", quadruple);
  set_check(out, "lifted_flows_conserve", conserving);
  out.parameters = {{"triangulation_sizes", cfg.triangulation_sizes},
                    {"flip_steps", cfg.flip_steps},
                    {"instances", cfg.instances}};
  return out;
}

RecipeOutput run_supported_count(const ExperimentConfig& cfg) {
  if (cfg.cloud_sizes.empty()) invalid(cfg.recipe, "cloud_sizes", "must be non-empty");
  for (int n : cfg.cloud_sizes)
    if (n < 2) invalid(cfg.recipe, "cloud_sizes", "entries must be at least 2");
  if (cfg.deltas.empty()) invalid(cfg.recipe, "deltas", "must be non-empty");
  for (double d : cfg.deltas)
    if (!(d > 0.0 && d < 0.5)) invalid(cfg.recipe, "deltas", "entries must lie in (0, 1/2)");
  if (cfg.support_levels.empty()) invalid(cfg.recipe, "support_levels", "must be non-empty");
  for (int s : cfg.support_levels)
    if (s < 2) invalid(cfg.recipe, "support_levels", "entries must be at least 2");
  if (cfg.instances < 1) invalid(cfg.recipe, "instances", "must be positive");

  const int s_min = *std::min_element(cfg.support_levels.begin(), cfg.support_levels.end());

  struct Slot {
    std::vector<std::vector<std::string>> rows;
    double max_ratio = 0.0;
    bool monotone = true;
  };
  struct PointSpec {
    int n;
    int instance;
    std::uint64_t seed;
  };
  std::vector<PointSpec> points;
  for (int n : cfg.cloud_sizes)
    for (int i = 0; i < cfg.instances; ++i)
      points.push_back({n, i, cfg.seed + 104729ULL * std::uint64_t(points.size())});

  std::vector<Slot> slots(points.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t p = 0; p < points.size(); ++p) {
    tasks.push_back([&, p] {
      const PointSpec spec = points[p];
      Rng rng(spec.seed, 2);
      std::vector<Point> pts(spec.n);
      for (Point& q : pts) q = Point{rng.next_double(), rng.next_double()};
      const PointCloud cloud = make_point_cloud(pts);
      Slot& slot = slots[p];
      for (double delta : cfg.deltas) {
        // The slack of a point does not depend on the support level, so one
        // call per delta yields the counts for every level.
        const SupportedResult base = supported_points(cloud, delta, s_min);
        std::vector<int> counts;
        for (int s : cfg.support_levels) {
          int count = 0;
          for (int slack : base.slack)
            if (slack >= s) ++count;
          counts.push_back(count);
          const double envelope =
              double(spec.n) * std::log(1.0 / delta) / (delta * delta * double(s));
          slot.max_ratio = std::max(slot.max_ratio, double(count) / envelope);
          slot.rows.push_back({dec(spec.n), dec(spec.instance), dec(spec.seed), g17(delta),
                               dec(s), dec(count), g17(envelope),
                               g17(double(count) / envelope)});
        }
        std::vector<std::pair<int, int>> by_level;  // (s, count), sorted by s
        for (std::size_t i = 0; i < counts.size(); ++i)
          by_level.emplace_back(cfg.support_levels[i], counts[i]);
        std::sort(by_level.begin(), by_level.end());
        for (std::size_t i = 1; i < by_level.size(); ++i)
          if (by_level[i].second > by_level[i - 1].second) slot.monotone = false;
      }
    });
  }
  run_pool(resolve_thread_count(cfg.threads), tasks);

  RecipeOutput out;
  out.table.header = {"cloud_size", "instance", "seed", "delta", "s", "count", "envelope",
                      "ratio"};
  double A = 0.0;
  bool monotone = true;
  for (Slot& slot : slots) {
    for (auto& row : slot.rows) out.table.rows.push_back(std::move(row));
    A = std::max(A, slot.max_ratio);
    monotone = monotone && slot.monotone;
  }
  out.fits = {{"A", A}};
  set_check(out, "count_nonincreasing_in_support_level", monotone);
  out.parameters = {{"cloud_sizes", cfg.cloud_sizes},
                    {"deltas", cfg.deltas},
                    {"support_levels", cfg.support_levels},
                    {"instances", cfg.instances}};
  return out;
}

RecipeOutput run_sharpness(const ExperimentConfig& cfg) {
  if (cfg.max_height < 1 || cfg.max_height > 200)
    invalid(cfg.recipe, "max_height", "must lie in [1, 200]");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) invalid(cfg.recipe, "alpha", "must lie in (0, 1)");
  if (cfg.tail_height < 3 || cfg.tail_height > 16)
    invalid(cfg.recipe, "tail_height", "must lie in [3, 16]");

  RecipeOutput out;
  out.table.header = {"height", "reff", "partial_sum", "power_sum_bound", "abs_diff"};
  bool increasing = true, matches = true, bounded = true;
  double prev = 0.0;
  double power_sum = 0.0;
  double partial = 0.0;
  std::vector<double> reffs;
  for (int h = 1; h <= cfg.max_height; ++h) {
    const BundledTree spine = bundled_tree_spine(h, cfg.alpha);
    const double reff =
        effective_resistance(spine.network, {spine.base_leaf}, {spine.apex});
    partial += 2.0 / double(bundle_width(h, cfg.alpha));
    power_sum += 2.0 * std::pow(double(h), -1.0 / cfg.alpha);
    reffs.push_back(reff);
    if (!(reff > prev)) increasing = false;
    if (std::abs(reff - partial) > 1e-9) matches = false;
    if (reff > power_sum + 1e-9) bounded = false;
    prev = reff;
    out.table.rows.push_back(
        {dec(h), g17(reff), g17(partial), g17(power_sum), g17(std::abs(reff - partial))});
  }
  set_check(out, "resistance_increasing_in_height", increasing);
  set_check(out, "resistance_matches_partial_sum", matches);
  set_check(out, "resistance_below_power_sum", bounded);

  // Degree tail of the full tree: the hub degrees grow like k^(1/alpha), so
  // the exceedance is log-linear against sqrt(k) when alpha = 1/2.
  const BundledTree full = bundled_tree(cfg.tail_height, cfg.alpha);
  const DegreeTail tail = degree_tail(full.network.graph(), RootLaw::Uniform);
  Table tail_table;
  tail_table.header = {"k", "exceedance", "count_ge_k", "sqrt_k", "log_exceedance", "fit_point"};
  std::vector<double> xs, ys;
  const TailCurve& curve = tail.degree;
  for (std::size_t i = 0; i < curve.k.size(); ++i) {
    const bool jump = i == 0 || curve.exceedance[i] < curve.exceedance[i - 1];
    const bool used = jump && curve.k[i] >= 6 && curve.exceedance[i] > 0.0;
    if (used) {
      xs.push_back(std::sqrt(double(curve.k[i])));
      ys.push_back(std::log(curve.exceedance[i]));
    }
    tail_table.rows.push_back({dec(curve.k[i]), g17(curve.exceedance[i]), dec(curve.count[i]),
                               g17(std::sqrt(double(curve.k[i]))),
                               g17(std::log(curve.exceedance[i])), used ? "1" : "0"});
  }
  bool tail_ok = xs.size() >= 2;
  LinearFit fit;
  if (tail_ok) {
    fit = linear_fit(xs, ys);
    tail_ok = fit.slope < 0.0 && fit.r2 >= 0.98;
  }
  set_check(out, "degree_tail_log_linear_in_sqrt_k", tail_ok);
  out.fits = {{"resistance_at_max_height", reffs.back()},
              {"tail_slope", fit.slope},
              {"tail_r2", fit.r2},
              {"tail_points", xs.size()}};
  out.extras.emplace_back(cfg.recipe + "_tail.csv", tail_table.render());
  out.parameters = {{"max_height", cfg.max_height},
                    {"alpha", cfg.alpha},
                    {"tail_height", cfg.tail_height}};
  return out;
}

}  // namespace

int resolve_thread_count(int requested) {
  int threads = requested > 0 ? requested : int(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* cap = std::getenv("PLL_THREADS")) {
    const int limit = std::atoi(cap);
    if (limit >= 1) threads = std::min(threads, limit);
  }
  return threads;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  if (config.out_dir.empty())
    throw std::invalid_argument("recipe " + config.recipe + ": field out_dir must be set");

  RecipeOutput result;
  if (config.recipe == "log-resistance")
    result = run_log_resistance(config);
  else if (config.recipe == "phi-scaling")
    result = run_phi_scaling(config);
  else if (config.recipe == "startree-energy")
    result = run_startree_energy(config);
  else if (config.recipe == "supported-count")
    result = run_supported_count(config);
  else if (config.recipe == "sharpness")
    result = run_sharpness(config);
  else
    throw std::invalid_argument(
        "recipe " + config.recipe +
        ": field recipe must be one of log-resistance, phi-scaling, startree-energy, "
        "supported-count, sharpness");

  std::filesystem::create_directories(config.out_dir);

  ExperimentReport report;
  report.pass = result.pass;
  report.csv = config.out_dir / (config.recipe + ".csv");
  report.sidecar = config.out_dir / (config.recipe + ".json");

  result.parameters["seed"] = config.seed;
  Json sidecar;
  sidecar["recipe"] = config.recipe;
  sidecar["version"] = kLibraryVersion;
  sidecar["parameters"] = std::move(result.parameters);
  sidecar["fits"] = std::move(result.fits);
  sidecar["checks"] = std::move(result.checks);
  sidecar["pass"] = result.pass;
  Json outputs;
  outputs["csv"] = report.csv.filename().string();
  Json extra_names = Json::array();
  for (const auto& [name, text] : result.extras) extra_names.push_back(name);
  outputs["extras"] = std::move(extra_names);
  sidecar["outputs"] = std::move(outputs);

  save_text_atomic(report.csv, result.table.render());
  save_json_atomic(report.sidecar, sidecar);
  for (const auto& [name, text] : result.extras) {
    const std::filesystem::path path = config.out_dir / name;
    save_text_atomic(path, text);
    report.extras.push_back(path);
  }
  return report;
}

}  // namespace pll
