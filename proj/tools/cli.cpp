#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>

#include "homent/analysis.hpp"
#include "homent/counting.hpp"
#include "homent/critical.hpp"
#include "homent/energy.hpp"
#include "homent/io.hpp"
#include "homent/lattice.hpp"
#include "homent/maxent.hpp"
#include "homent/molecule.hpp"
#include "homent/potential.hpp"
#include "homent/profile.hpp"
#include "homent/tiling.hpp"

#ifndef HOMENT_VERSION
#define HOMENT_VERSION "0.0.0"
#endif

namespace homent::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;

// Accumulates the run record: parameter echo, produced files, wall time.
// CSV payloads stay byte-identical across reruns; only wall_ms varies.
class Manifest {
 public:
  Manifest(std::string subcommand, std::string out_dir)
      : out_dir_(std::move(out_dir)), start_(std::chrono::steady_clock::now()) {
    j_["subcommand"] = std::move(subcommand);
    j_["version"] = HOMENT_VERSION;
    fs::create_directories(out_dir_);
  }

  json& params() { return j_["parameters"]; }
  json& extra() { return j_["summary"]; }

  std::string path_for(const std::string& name) const { return (fs::path(out_dir_) / name).string(); }

  void note_output(const std::string& name) { outputs_.push_back(name); }

  void finalize() {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
    j_["wall_ms"] = ms;
    j_["outputs"] = outputs_;
    std::ofstream out(path_for("manifest.json"), std::ios::binary);
    out << j_.dump(2) << "\n";
  }

 private:
  json j_;
  std::string out_dir_;
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

double parse_double(const std::string& s) { return std::stod(s); }

// ---- tile ----------------------------------------------------------------

struct TileOpts {
  std::string window_file;
  std::vector<long long> tile_edges;
  std::vector<std::string> tile_files;
  double eps = 0.05;
  std::string out_dir = ".";
};

int run_tile(const TileOpts& o) {
  const LatticeWindow window = load_window(o.window_file);
  std::vector<LatticeWindow> tiles;
  std::vector<Coord> origin(static_cast<std::size_t>(window.dim()), 0);
  for (long long e : o.tile_edges) tiles.push_back(LatticeWindow::cube_at(window.dim(), origin, e));
  for (const auto& f : o.tile_files) tiles.push_back(load_window(f));
  if (tiles.empty()) {
    std::cerr << "tile: need at least one --tile-edge or --tile\n";
    return kExitUsage;
  }

  Manifest man("tile", o.out_dir);
  man.params()["window"] = o.window_file;
  man.params()["tile_edges"] = o.tile_edges;
  man.params()["tile_files"] = o.tile_files;
  man.params()["eps"] = o.eps;

  const TilingResult result = quasi_tile(window, tiles, o.eps);

  {
    std::ofstream out(man.path_for("tiling.csv"), std::ios::binary);
    out << "tile_index,covered";
    for (int a = 0; a < window.dim(); ++a) out << ",anchor_" << a;
    out << "\n";
    for (const auto& p : result.placements) {
      out << p.tile_index << "," << p.covered;
      for (Coord c : p.anchor) out << "," << c;
      out << "\n";
    }
    man.note_output("tiling.csv");
  }

  man.extra()["placements"] = result.placements.size();
  man.extra()["covered"] = result.covered;
  man.extra()["coverage_ratio"] = result.coverage_ratio;
  man.extra()["meets_epsilon"] = result.meets_epsilon;
  man.finalize();

  std::cout << "coverage " << format_double(result.coverage_ratio) << " with "
            << result.placements.size() << " placements ("
            << (result.meets_epsilon ? "meets" : "misses") << " 1-eps = "
            << format_double(1.0 - o.eps) << ")\n";
  return result.meets_epsilon ? kExitOk : kExitCheckFailed;
}

// ---- entropy ---------------------------------------------------------------

struct EntropyOpts {
  std::string spec = "s1";
  std::string mode = "asymptotic";
  int grid = 41;
  int n = 1000;
  double nu = 0.05;
  double delta = 0.05;
  std::string out_dir = ".";
};

int run_entropy(const EntropyOpts& o) {
  const MoleculeSpec spec = resolve_molecule(o.spec);
  ProfileParams params;
  if (o.mode == "asymptotic") {
    params.mode = ProfileMode::asymptotic;
  } else if (o.mode == "exact") {
    params.mode = ProfileMode::exact_n;
  } else {
    std::cerr << "entropy: --mode must be asymptotic or exact\n";
    return kExitUsage;
  }
  params.resolution = o.grid;
  params.n = o.n;
  params.nu = o.nu;
  params.delta = o.delta;

  Manifest man("entropy", o.out_dir);
  man.params()["spec"] = o.spec;
  man.params()["mode"] = o.mode;
  man.params()["grid"] = o.grid;
  man.params()["n"] = o.n;
  man.params()["nu"] = o.nu;
  man.params()["delta"] = o.delta;

  const EntropyProfile profile = entropy_profile(spec, params);
  {
    std::ofstream out(man.path_for("profile.csv"), std::ios::binary);
    write_profile_csv(profile, out);
    man.note_output("profile.csv");
  }

  double ell_star = 0.0, c_star = 0.0;
  const double vmax = profile.grid_max(&ell_star, &c_star);
  man.extra()["grid_max"] = vmax;
  man.extra()["grid_max_ell"] = ell_star;
  man.extra()["grid_max_c"] = c_star;
  man.finalize();

  std::cout << "grid max " << format_double(vmax) << " at ell=" << format_double(ell_star)
            << " c=" << format_double(c_star) << "\n";
  return kExitOk;
}

// ---- crystal ---------------------------------------------------------------

struct CrystalOpts {
  int chain = 0;
  std::vector<int> grid;  // rows cols
  double K = 0.0;
  double a0 = 0.5, a1 = -0.5, b1 = 0.0, a2 = 0.0;
  std::vector<double> interval;  // a b
  int starts = 256;
  std::uint64_t seed = 1234;
  bool distinct_values = false;
  std::string spec = "s1";
  std::string out_dir = ".";
};

int run_crystal(const CrystalOpts& o) {
  LatticeWindow window;
  if (o.chain > 0 && o.grid.empty()) {
    window = LatticeWindow::interval(0, o.chain - 1);
  } else if (o.chain == 0 && o.grid.size() == 2) {
    window = LatticeWindow::box({0, 0}, {o.grid[0] - 1, o.grid[1] - 1});
  } else {
    std::cerr << "crystal: give exactly one of --chain N or --grid R C\n";
    return kExitUsage;
  }

  PairPotential pot;
  pot.on_site = OnSiteCosine{o.a0, o.a1, o.b1, o.a2};
  pot.coupling = o.K;

  Manifest man("crystal", o.out_dir);
  man.params()["chain"] = o.chain;
  man.params()["grid"] = o.grid;
  man.params()["K"] = o.K;
  man.params()["V"] = {o.a0, o.a1, o.b1, o.a2};
  man.params()["interval"] = o.interval;
  man.params()["starts"] = o.starts;
  man.params()["seed"] = o.seed;
  man.params()["spec"] = o.spec;

  const WindowEnergy energy = build_energy(window, pot);
  SolveConfig cfg;
  cfg.starts = o.starts;
  cfg.seed = o.seed;
  SolveSummary summary;
  const auto points = find_critical_points(energy, cfg, &summary);
  const auto hist = spectrum(points, window.size());

  {
    std::ofstream out(man.path_for("points.csv"), std::ios::binary);
    write_points_csv(points, out);
    man.note_output("points.csv");
  }
  {
    std::ofstream out(man.path_for("spectrum.csv"), std::ios::binary);
    write_spectrum_csv(hist, out);
    man.note_output("spectrum.csv");
  }

  long long euler = 0;
  for (const auto& p : points) euler += (p.morse_index % 2 == 0) ? 1 : -1;
  man.extra()["points_found"] = points.size();
  man.extra()["starts_total"] = summary.starts_total;
  man.extra()["dropped_starts"] = summary.dropped;
  man.extra()["duplicates"] = summary.duplicates;
  man.extra()["euler_sum"] = euler;
  man.extra()["value_lower_bound"] = energy.lower_bound();
  man.extra()["value_upper_bound"] = energy.upper_bound();

  bool property_failed = false;
  if (o.interval.size() == 2) {
    const double a = o.interval[0], b = o.interval[1];
    const double cri_value = cri(hist, a, b, o.distinct_values);
    const MoleculeSpec spec = resolve_molecule(o.spec);
    const ClassCount classes =
        count_classes_level_band(spec, static_cast<std::int64_t>(window.size()), a, b);
    const double nd = static_cast<double>(window.size());
    double bound;
    if (classes.count == 0)
      bound = -std::numeric_limits<double>::infinity();
    else if (classes.count.fits_slong_p())
      bound = std::log(static_cast<double>(classes.count.get_si())) / nd;
    else
      bound = classes.log_count / nd;
    double margin;
    if (cri_value == -std::numeric_limits<double>::infinity() &&
        bound == -std::numeric_limits<double>::infinity())
      margin = 0.0;
    else
      margin = cri_value - bound;

    man.extra()["cri"] = cri_value;
    man.extra()["cohomology_bound"] = bound;
    man.extra()["margin"] = margin;
    std::cout << "cri(" << format_double(a) << "," << format_double(b) << ") = "
              << format_double(cri_value) << ", cohomology bound "
              << format_double(bound) << ", margin " << format_double(margin) << "\n";
    if (margin < -1e-9) {
      if (o.K == 0.0) {
        // Warm starts enumerate the uncoupled critical set completely, so
        // a shortfall here is a genuine property violation.
        property_failed = true;
        std::cout << "morse bound violated in the uncoupled case\n";
      } else {
        man.extra()["incomplete_enumeration"] = true;
        std::cout << "margin negative with coupling: enumeration incomplete\n";
      }
    }
  }

  man.finalize();
  std::cout << points.size() << " critical points, euler sum " << euler << "\n";
  return property_failed ? kExitCheckFailed : kExitOk;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeOpts {
  std::string config_file;
};

int run_analyze(const AnalyzeOpts& o) {
  const ExperimentConfig cfg = load_experiment_config(o.config_file);
  const MoleculeSpec spec = resolve_molecule(cfg.spec_name);

  Manifest man("analyze", cfg.out_dir);
  man.params()["config"] = o.config_file;
  man.params()["spec"] = cfg.spec_name;
  man.params()["study"] = cfg.study;
  man.params()["seed"] = cfg.seed;

  int exit_code = kExitOk;
  if (cfg.study == "limit") {
    const CubeSequence seq(cfg.dim);
    const std::size_t pairs = std::min(cfg.nu_schedule.size(), cfg.delta_schedule.size());
    std::ofstream out(man.path_for("limit.csv"), std::ios::binary);
    out << "nu,delta,i,n,normalized_log\n";
    for (std::size_t p = 0; p < pairs; ++p) {
      const double nu = cfg.nu_schedule[p];
      const double delta = cfg.delta_schedule[p];
      const LimitStudy study =
          entropy_limit_study(spec, seq, cfg.ell, nu, cfg.c, delta, cfg.i_max);
      for (const auto& row : study.rows)
        out << format_double(nu) << "," << format_double(delta) << "," << row.i << ","
            << row.n << "," << format_double(row.normalized_log) << "\n";
      if (p + 1 == pairs) {  // record the certificate at the finest widths
        man.extra()["asymptotic"] = study.asymptotic;
        man.extra()["ow_valid"] = study.ow_valid;
        if (study.ow_valid) {
          man.extra()["ow_best_estimate"] = study.ow.best_estimate;
          man.extra()["ow_liminf_bound"] = study.ow.liminf_bound;
          man.extra()["ow_tile_index"] = study.ow.tile_index;
          man.extra()["ow_tile_epsilon"] = study.ow.tile_epsilon;
        }
      }
    }
    man.note_output("limit.csv");
  } else {
    ProfileParams params;
    params.mode = cfg.mode == "exact" ? ProfileMode::exact_n : ProfileMode::asymptotic;
    params.resolution = cfg.resolution;
    params.n = cfg.n;
    params.nu = cfg.nu_schedule.back();
    params.delta = cfg.delta_schedule.back();
    const EntropyProfile profile = entropy_profile(spec, params);

    if (cfg.study == "concavity") {
      const ConcavityReport rep = concavity_scan(profile, cfg.segments, cfg.seed);
      std::ofstream out(man.path_for("concavity.csv"), std::ios::binary);
      out << "kind,ell0,c0,ell1,c1,mid_value,avg_value\n";
      for (const auto& f : rep.failures)
        out << "segment," << format_double(f.ell0) << "," << format_double(f.c0) << ","
            << format_double(f.ell1) << "," << format_double(f.c1) << ","
            << format_double(f.mid_value) << "," << format_double(f.avg_value) << "\n";
      for (const auto& f : rep.dyadic_failures)
        out << "dyadic," << format_double(f.ell0) << "," << format_double(f.c0) << ","
            << format_double(f.ell1) << "," << format_double(f.c1) << ","
            << format_double(f.mid_value) << "," << format_double(f.avg_value) << "\n";
      man.note_output("concavity.csv");
      man.extra()["segments_checked"] = rep.segments_checked;
      man.extra()["dyadic_checked"] = rep.dyadic_checked;
      man.extra()["failures"] = rep.failures.size();
      man.extra()["dyadic_failures"] = rep.dyadic_failures.size();
      man.extra()["passed"] = rep.passed();
      std::cout << "concavity: " << rep.segments_checked << " segments, "
                << rep.dyadic_checked << " dyadic checks, "
                << (rep.passed() ? "pass" : "FAIL") << "\n";
      if (!rep.passed()) exit_code = kExitCheckFailed;
    } else {  // usc
      const UscReport rep = usc_probe(profile, cfg.ell, cfg.c, cfg.seed);
      std::ofstream out(man.path_for("usc.csv"), std::ios::binary);
      out << "radius,max_value\n";
      for (const auto& lvl : rep.levels)
        out << format_double(lvl.radius) << "," << format_double(lvl.max_value) << "\n";
      man.note_output("usc.csv");
      man.extra()["base"] = rep.base;
      man.extra()["excess"] = rep.excess;
      man.extra()["passed"] = rep.passed;
      std::cout << "usc at (" << format_double(cfg.ell) << "," << format_double(cfg.c)
                << "): base " << format_double(rep.base) << ", excess "
                << format_double(rep.excess) << ", " << (rep.passed ? "pass" : "FAIL") << "\n";
      if (!rep.passed) exit_code = kExitCheckFailed;
    }
  }

  man.finalize();
  return exit_code;
}

}  // namespace

int run(std::vector<std::string> args) {
  CLI::App app{"lattice window entropy and crystal spectrum toolkit"};
  app.require_subcommand(1);

  TileOpts tile_opts;
  auto* tile_cmd = app.add_subcommand("tile", "quasi-tile a window file by cube tiles");
  tile_cmd->add_option("--window", tile_opts.window_file, "window file (d=<dim> header)")
      ->required();
  tile_cmd->add_option("--tile-edge", tile_opts.tile_edges, "cube tile edge (repeatable)");
  tile_cmd->add_option("--tile", tile_opts.tile_files, "tile window file (repeatable)");
  tile_cmd->add_option("--eps", tile_opts.eps, "coverage slack in (0,1)");
  tile_cmd->add_option("--out-dir", tile_opts.out_dir, "output directory");

  EntropyOpts entropy_opts;
  auto* entropy_cmd = app.add_subcommand("entropy", "entropy profile over (ell, c)");
  entropy_cmd->add_option("--spec", entropy_opts.spec, "molecule: s1, torus, or a file");
  entropy_cmd->add_option("--mode", entropy_opts.mode, "asymptotic or exact");
  entropy_cmd->add_option("--grid", entropy_opts.grid, "grid resolution per axis");
  entropy_cmd->add_option("--n", entropy_opts.n, "window size for exact mode");
  entropy_cmd->add_option("--nu", entropy_opts.nu, "degree window half-width (exact mode)");
  entropy_cmd->add_option("--delta", entropy_opts.delta, "level window half-width (exact mode)");
  entropy_cmd->add_option("--out-dir", entropy_opts.out_dir, "output directory");

  CrystalOpts crystal_opts;
  auto* crystal_cmd = app.add_subcommand("crystal", "critical points of a windowed energy");
  crystal_cmd->add_option("--chain", crystal_opts.chain, "chain length");
  crystal_cmd->add_option("--grid", crystal_opts.grid, "grid rows cols")->expected(2);
  crystal_cmd->add_option("--K", crystal_opts.K, "coupling strength");
  crystal_cmd->add_option("--a0", crystal_opts.a0, "on-site constant term");
  crystal_cmd->add_option("--a1", crystal_opts.a1, "on-site cos coefficient");
  crystal_cmd->add_option("--b1", crystal_opts.b1, "on-site sin coefficient");
  crystal_cmd->add_option("--a2", crystal_opts.a2, "on-site cos 2t coefficient");
  crystal_cmd->add_option("--interval", crystal_opts.interval, "open value interval a b")
      ->expected(2);
  crystal_cmd->add_option("--starts", crystal_opts.starts, "quasi-random starts");
  crystal_cmd->add_option("--seed", crystal_opts.seed, "RNG seed");
  crystal_cmd->add_flag("--distinct-values", crystal_opts.distinct_values,
                        "count distinct critical values instead of points");
  crystal_cmd->add_option("--spec", crystal_opts.spec, "molecule for the cohomology bound");
  crystal_cmd->add_option("--out-dir", crystal_opts.out_dir, "output directory");

  AnalyzeOpts analyze_opts;
  auto* analyze_cmd = app.add_subcommand("analyze", "run a study from a config file");
  analyze_cmd->add_option("--config", analyze_opts.config_file, "key = value config file")
      ->required();

  std::reverse(args.begin(), args.end());  // CLI11's vector API wants reverse order
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (tile_cmd->parsed()) return run_tile(tile_opts);
    if (entropy_cmd->parsed()) return run_entropy(entropy_opts);
    if (crystal_cmd->parsed()) return run_crystal(crystal_opts);
    if (analyze_cmd->parsed()) return run_analyze(analyze_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace homent::cli
