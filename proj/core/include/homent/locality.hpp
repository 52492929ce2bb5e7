#pragma once

#include <cstdint>
#include <vector>

#include "homent/lattice.hpp"
#include "homent/potential.hpp"

namespace homent {

// Windowed average of a per-site energy density whose couplings reach
// neighbors within `radius` of the site (half-weighted so interior edges
// are not double counted):
//   f_o(x; site) = V(x_site) + (K/2) sum_{nbr : |nbr-site| = 1} (1 - cos(x_site - x_nbr))
//   f_W(x) = (1/|W|) sum_{site in W} f_o(x; site)
// With radius 0 only the on-site term survives and f_W depends on W alone.
struct LocalityParams {
  int radius = 1;  // 0 or 1
  int trials = 8;  // sampled shared interiors per window
  std::uint64_t seed = 99;
};

struct LocalityRow {
  Coord i = 0;
  std::size_t window_size = 0;
  double delta = 0.0;           // 4 * sup |f_W(x) - f_W(y)| over pairs equal on W
  double bound = 0.0;           // 4 K (outside half-edges) / |W|
  double boundary_ratio = 0.0;  // |boundary_radius(W)| / |W|
};

// Measures how strongly f_W depends on coordinates outside the window.
// Pairs share a random configuration on W; every outside coordinate is then
// optimized independently in both directions, which is exact for windows
// whose outside neighbors each touch a single window site (boxes).
std::vector<LocalityRow> locality_decay(const PairPotential& potential, const CubeSequence& seq,
                                        Coord i_min, Coord i_max, const LocalityParams& params);

}  // namespace homent
