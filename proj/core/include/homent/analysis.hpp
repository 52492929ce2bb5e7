#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homent/lattice.hpp"
#include "homent/molecule.hpp"
#include "homent/profile.hpp"
#include "homent/tiling.hpp"

namespace homent {

// Parsed from key = value lines ('#' starts a comment).  Unknown keys are
// rejected so typos fail loudly.
struct ExperimentConfig {
  std::string spec_name = "s1";  // builtin alias (s1, torus) or a file path
  std::string study = "limit";   // limit | concavity | usc
  int dim = 1;
  Coord i_min = 1;
  Coord i_max = 8;
  double ell = 0.5;
  double c = 0.5;
  std::vector<double> nu_schedule = {0.2, 0.1, 0.05, 0.02};
  std::vector<double> delta_schedule = {0.2, 0.1, 0.05, 0.02};
  int resolution = 41;
  std::string mode = "asymptotic";  // asymptotic | exact
  int n = 200;                      // window size for exact-mode profiles
  int segments = 200;
  std::uint64_t seed = 7;
  std::string out_dir = ".";

  void validate() const;  // throws std::invalid_argument on bad values
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

struct LimitRow {
  Coord i = 0;
  std::size_t n = 0;
  double normalized_log = 0.0;  // (1/n) ln count; -inf when the window is empty
};

struct LimitStudy {
  std::vector<LimitRow> rows;
  bool ow_valid = false;   // certificate computed (all sampled h finite, >= 0)
  SuperadditiveLimit ow;   // meaningful only when ow_valid
  double asymptotic = 0.0; // target value at (ell, c)
};

// Tabulates normalized log-counts along the cube sequence and, when the
// count function is everywhere positive on it, the superadditive limit
// certificate for h(W) = ln count(W).
LimitStudy entropy_limit_study(const MoleculeSpec& spec, const CubeSequence& seq, double ell,
                               double nu, double c, double delta, Coord i_max);

struct ConcavitySegment {
  double ell0 = 0.0, c0 = 0.0;
  double ell1 = 0.0, c1 = 0.0;
  double mid_value = 0.0;
  double avg_value = 0.0;
};

struct ConcavityReport {
  int segments_checked = 0;  // grid triples plus random long segments
  int dyadic_checked = 0;    // exact doubled-window count comparisons
  std::vector<ConcavitySegment> failures;
  std::vector<ConcavitySegment> dyadic_failures;
  bool passed() const { return failures.empty() && dyadic_failures.empty(); }
};

// Midpoint concavity on the profile grid: every aligned grid triple in the
// four lattice directions, plus random longer segments.  Segments with an
// infeasible endpoint pass vacuously.  Also replays the doubling step on
// exact counts: count_{2n} at averaged parameters must dominate the product
// of the count_n factors.
ConcavityReport concavity_scan(const EntropyProfile& profile, int segments, std::uint64_t seed);

struct UscLevel {
  double radius = 0.0;
  double max_value = 0.0;  // max over probe directions at this radius
};

struct UscReport {
  double base = 0.0;
  std::vector<UscLevel> levels;  // radii decreasing toward 0
  double excess = 0.0;           // max over the two finest radii of (max - base)
  bool passed = false;
};

// Upper semicontinuity probe: approaches (ell, c) along shrinking circles
// and checks nearby values do not exceed the center value beyond 1e-8.
UscReport usc_probe(const EntropyProfile& profile, double ell, double c,
                    std::uint64_t seed = 5);

}  // namespace homent
