#pragma once

// Quasi-tilings of lattice windows by translated cube tiles, and the
// convergence machinery for normalized limits of superadditive,
// translation-invariant set functions along exhausting cube sequences.

#include <functional>
#include <vector>

#include "homent/lattice.hpp"

namespace homent {

struct TilePlacement {
  int tile_index = 0;              // index into the tile list passed in
  std::vector<Coord> anchor;       // minimal corner of the placed tile
  std::int64_t covered = 0;        // number of window points covered
};

struct TilingResult {
  std::vector<TilePlacement> placements;  // sorted lex by anchor, then tile
  std::int64_t covered = 0;
  double coverage_ratio = 0.0;            // covered / |window|
  double epsilon = 0.0;                   // the requested slack
  bool meets_epsilon = false;             // coverage_ratio >= 1 - epsilon
};

// Disjointly place translates of the given cube tiles inside the window.
// The largest tile is swept on a grid with period equal to its edge,
// anchored at the window's bounding-box corner; remaining tiles fill the
// leftover free points greedily in lex order, largest first.
//
// Throws std::invalid_argument when epsilon is outside (0,1), when a tile
// is not an axis-aligned cube, or when some tile exceeds the window's
// bounding box along an axis.  Falling short of (1-epsilon) coverage is
// NOT an error: the result comes back with meets_epsilon == false.
TilingResult quasi_tile(const LatticeWindow& window,
                        const std::vector<LatticeWindow>& tiles,
                        double epsilon);

// A set function h on lattice windows together with the properties the
// caller claims for it.  Claims are checked statistically, not assumed.
struct SetFunction {
  std::function<double(const LatticeWindow&)> eval;
  bool claims_superadditive = true;   // h(A u B) >= h(A) + h(B), A,B disjoint
  bool claims_invariant = true;       // h(g + A) = h(A)
};

struct SuperadditiveLimit {
  std::vector<double> estimates;   // h(cube_i)/|cube_i| for i = i_min..i_max
  Coord i_min = 1;                 // first evaluated cube index
  double best_estimate = 0.0;      // running max of the estimates
  double liminf_bound = 0.0;       // certified lower bound for the limit
  Coord tile_index = 0;            // the earlier cube used as the tile
  double tile_epsilon = 0.0;       // slack achieved by that tile choice
};

// Normalized limit along cubes for a superadditive invariant h that is
// nonnegative on the evaluated range.  The certificate is
// (best - eps) * (1 - eps) where eps jointly covers the tile's value
// deficit against the running max and the coverage deficit of tiling
// cube(i_max) by translates of the chosen earlier cube: packing copies of
// a good tile into a large window forces the large window's normalized
// value up to the tile's level, up to the uncovered fraction.
//
// i_min skips initial cubes; some perfectly good set functions (bulk term
// minus a boundary term) dip negative on the smallest windows, and the
// truncated sequence is just as exhausting.
//
// Throws std::invalid_argument on a bad index range or when h evaluates
// negative anywhere in it.
SuperadditiveLimit ow_superadditive_limit(const SetFunction& h,
                                          const CubeSequence& seq,
                                          Coord i_max, Coord i_min = 1);

struct SuperadditivityFailure {
  LatticeWindow a;
  LatticeWindow b;
  double h_a = 0.0;
  double h_b = 0.0;
  double h_union = 0.0;
};

struct SuperadditivityReport {
  int trials = 0;
  std::vector<SuperadditivityFailure> failures;  // h(AuB) < h(A)+h(B) - 1e-9
  bool passed() const { return failures.empty(); }
};

// Sample disjoint window pairs (random boxes pushed apart by translation)
// and test h(A u B) >= h(A) + h(B) - 1e-9.  Deterministic under the seed.
SuperadditivityReport verify_superadditive(const SetFunction& h, int dim,
                                           int trials, std::uint64_t seed);

}  // namespace homent
