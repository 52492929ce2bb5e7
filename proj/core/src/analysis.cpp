#include "homent/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "homent/counting.hpp"
#include "homent/maxent.hpp"

namespace homent {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kConcavityTol = 1e-8;
constexpr double kUscTol = 1e-8;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_schedule(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

void check_schedule(const std::vector<double>& sched, const char* what) {
  if (sched.empty()) throw std::invalid_argument(std::string(what) + " schedule is empty");
  for (std::size_t i = 0; i < sched.size(); ++i) {
    if (!(sched[i] > 0.0))
      throw std::invalid_argument(std::string(what) + " schedule entries must be positive");
    if (i > 0 && !(sched[i] < sched[i - 1]))
      throw std::invalid_argument(std::string(what) + " schedule must decrease strictly");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (study != "limit" && study != "concavity" && study != "usc")
    throw std::invalid_argument("config: study must be limit, concavity, or usc");
  if (mode != "asymptotic" && mode != "exact")
    throw std::invalid_argument("config: mode must be asymptotic or exact");
  if (dim < 1) throw std::invalid_argument("config: dim must be >= 1");
  if (i_min < 1 || i_max < i_min) throw std::invalid_argument("config: bad i range");
  if (resolution < 2) throw std::invalid_argument("config: resolution must be >= 2");
  if (n < 1) throw std::invalid_argument("config: n must be >= 1");
  if (segments < 1) throw std::invalid_argument("config: segments must be >= 1");
  check_schedule(nu_schedule, "nu");
  check_schedule(delta_schedule, "delta");
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "spec") {
      cfg.spec_name = val;
    } else if (key == "study") {
      cfg.study = val;
    } else if (key == "dim") {
      cfg.dim = std::stoi(val);
    } else if (key == "i_min") {
      cfg.i_min = std::stoll(val);
    } else if (key == "i_max") {
      cfg.i_max = std::stoll(val);
    } else if (key == "ell") {
      cfg.ell = std::stod(val);
    } else if (key == "c") {
      cfg.c = std::stod(val);
    } else if (key == "nu") {
      cfg.nu_schedule = parse_schedule(val);
    } else if (key == "delta") {
      cfg.delta_schedule = parse_schedule(val);
    } else if (key == "resolution") {
      cfg.resolution = std::stoi(val);
    } else if (key == "mode") {
      cfg.mode = val;
    } else if (key == "n") {
      cfg.n = std::stoi(val);
    } else if (key == "segments") {
      cfg.segments = std::stoi(val);
    } else if (key == "seed") {
      cfg.seed = std::stoull(val);
    } else if (key == "out_dir") {
      cfg.out_dir = val;
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" +
                                  key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

LimitStudy entropy_limit_study(const MoleculeSpec& spec, const CubeSequence& seq, double ell,
                               double nu, double c, double delta, Coord i_max) {
  if (i_max < 1) throw std::invalid_argument("entropy_limit_study: i_max must be >= 1");
  LimitStudy out;
  out.asymptotic = entropy_asymptotic(spec, ell, c);

  bool all_nonneg = true;
  for (Coord i = 1; i <= i_max; ++i) {
    const std::int64_t n = seq.window_size(i);
    const double lg = count_classes_log(spec, n, ell, nu, c, delta);
    out.rows.push_back({i, static_cast<std::size_t>(n), lg / static_cast<double>(n)});
    if (!(lg >= 0.0)) all_nonneg = false;  // count 0 gives -inf
  }

  if (all_nonneg && i_max >= 2) {
    SetFunction h;
    h.eval = [&spec, ell, nu, c, delta](const LatticeWindow& w) {
      return count_classes_log(spec, static_cast<std::int64_t>(w.size()), ell, nu, c, delta);
    };
    out.ow = ow_superadditive_limit(h, seq, i_max);
    out.ow_valid = true;
  }
  return out;
}

ConcavityReport concavity_scan(const EntropyProfile& profile, int segments,
                               std::uint64_t seed) {
  if (segments < 0) throw std::invalid_argument("concavity_scan: segments must be >= 0");
  ConcavityReport rep;
  const std::size_t R = profile.rows();
  const std::size_t C = profile.cols();

  auto check_segment = [&](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
    const std::size_t im = (i0 + i1) / 2;
    const std::size_t jm = (j0 + j1) / 2;
    const double v0 = profile.value(i0, j0);
    const double v1 = profile.value(i1, j1);
    ++rep.segments_checked;
    if (v0 == kNegInf || v1 == kNegInf) return;  // vacuous by convention
    const double avg = 0.5 * (v0 + v1);
    const double mid = profile.value(im, jm);
    if (!(mid >= avg - kConcavityTol)) {
      rep.failures.push_back({profile.ell(i0), profile.c(j0), profile.ell(i1), profile.c(j1),
                              mid, avg});
    }
  };

  // Every aligned triple in the four lattice directions.  This sweeps each
  // grid point as a midpoint, so a single corrupted cell cannot hide.
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) {
      if (i >= 1 && i + 1 < R) check_segment(i - 1, j, i + 1, j);
      if (j >= 1 && j + 1 < C) check_segment(i, j - 1, i, j + 1);
      if (i >= 1 && i + 1 < R && j >= 1 && j + 1 < C) {
        check_segment(i - 1, j - 1, i + 1, j + 1);
        check_segment(i - 1, j + 1, i + 1, j - 1);
      }
    }
  }

  // Random longer segments with a representable midpoint.
  std::mt19937_64 rng(seed);
  auto draw_pair = [&rng](std::size_t extent, std::size_t& a, std::size_t& b) {
    a = rng() % extent;
    b = rng() % extent;
    if ((a ^ b) & 1) {  // force equal parity so the midpoint is on the grid
      if (b + 1 < extent)
        ++b;
      else
        --b;
    }
  };
  for (int s = 0; s < segments; ++s) {
    std::size_t i0, i1, j0, j1;
    draw_pair(R, i0, i1);
    draw_pair(C, j0, j1);
    check_segment(i0, j0, i1, j1);
  }

  // Doubling step on exact counts: a class pair on two disjoint n-windows
  // concatenates to a class on the 2n-window at the averaged parameters,
  // so the doubled count dominates the product.  Parameters get a small
  // generic offset so window endpoints stay clear of exact integers.
  const std::int64_t n0 = 10;
  const double width = 0.1;
  std::uniform_int_distribution<std::size_t> pick_i(0, R - 1), pick_j(0, C - 1);
  int attempts = 0;
  while (rep.dyadic_checked < 24 && attempts < 4000) {
    ++attempts;
    const double e0 = profile.ell(pick_i(rng)) + 0.0037;
    const double c0 = profile.c(pick_j(rng)) + 0.0023;
    const double e1 = profile.ell(pick_i(rng)) + 0.0037;
    const double c1 = profile.c(pick_j(rng)) + 0.0023;
    const mpz_class f0 = count_classes(profile.spec(), n0, e0, width, c0, width).count;
    if (f0 == 0) continue;
    const mpz_class f1 = count_classes(profile.spec(), n0, e1, width, c1, width).count;
    if (f1 == 0) continue;
    const mpz_class doubled =
        count_classes(profile.spec(), 2 * n0, 0.5 * (e0 + e1), width, 0.5 * (c0 + c1), width)
            .count;
    ++rep.dyadic_checked;
    if (doubled < f0 * f1) {
      const double nd = static_cast<double>(2 * n0);
      rep.dyadic_failures.push_back({e0, c0, e1, c1, log_of_mpz(doubled) / nd,
                                     (log_of_mpz(f0) + log_of_mpz(f1)) / nd});
    }
  }
  return rep;
}

UscReport usc_probe(const EntropyProfile& profile, double ell, double c, std::uint64_t seed) {
  UscReport rep;
  rep.base = profile.value_at(ell, c);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * 3.14159265358979323846);
  std::vector<double> dirs;
  for (int k = 0; k < 8; ++k) dirs.push_back(uni(rng));
  for (int k = 0; k < 8; ++k) dirs.push_back(k * 3.14159265358979323846 / 4.0);

  // The ladder has to reach deep: near a hull corner the value climbs away
  // from the base like r log(1/r), which stays above 1e-8 until r ~ 1e-10.
  for (int k = 0; k <= 11; ++k) {
    const double r = 0.1 * std::pow(10.0, -k);
    UscLevel lvl;
    lvl.radius = r;
    lvl.max_value = kNegInf;
    for (double a : dirs) {
      const double v = profile.value_at(ell + r * std::cos(a), c + r * std::sin(a));
      lvl.max_value = std::max(lvl.max_value, v);
    }
    rep.levels.push_back(lvl);
  }

  rep.excess = kNegInf;
  for (std::size_t k = rep.levels.size() - 2; k < rep.levels.size(); ++k) {
    const double mv = rep.levels[k].max_value;
    if (mv == kNegInf) continue;                       // nothing nearby exceeds anything
    if (rep.base == kNegInf) {                         // finite values approach a -inf center
      rep.excess = std::numeric_limits<double>::infinity();
      break;
    }
    rep.excess = std::max(rep.excess, mv - rep.base);
  }
  rep.passed = !(rep.excess > kUscTol);
  return rep;
}

}  // namespace homent
