#include "homent/locality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace homent {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kGrid = 720;

}  // namespace

std::vector<LocalityRow> locality_decay(const PairPotential& potential, const CubeSequence& seq,
                                        Coord i_min, Coord i_max, const LocalityParams& params) {
  if (params.radius != 0 && params.radius != 1)
    throw std::invalid_argument("locality_decay: radius must be 0 or 1");
  if (i_min < 1 || i_max < i_min)
    throw std::invalid_argument("locality_decay: bad sequence range");
  if (params.trials < 1) throw std::invalid_argument("locality_decay: trials must be >= 1");

  const double K = potential.coupling;
  std::vector<LocalityRow> rows;
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> uni(0.0, kTwoPi);

  for (Coord i = i_min; i <= i_max; ++i) {
    const LatticeWindow w = seq.window(i);
    LocalityRow row;
    row.i = i;
    row.window_size = w.size();
    row.boundary_ratio =
        static_cast<double>(boundary(w, static_cast<double>(params.radius)).size()) /
        static_cast<double>(w.size());

    if (params.radius == 0 || K == 0.0) {
      rows.push_back(row);  // no outside dependence at all
      continue;
    }

    // Half-edges from window sites to outside sites, grouped by the outside
    // endpoint so each free coordinate is optimized once.
    const std::size_t d = static_cast<std::size_t>(w.dim());
    std::vector<std::vector<Coord>> outside;          // outside site coordinates
    std::vector<std::vector<std::size_t>> touching;   // window site indices per outside site
    std::vector<Coord> nbr(d);
    auto find_outside = [&](std::span<const Coord> q) -> std::size_t {
      for (std::size_t o = 0; o < outside.size(); ++o)
        if (std::equal(outside[o].begin(), outside[o].end(), q.begin())) return o;
      outside.emplace_back(q.begin(), q.end());
      touching.emplace_back();
      return outside.size() - 1;
    };
    std::size_t half_edges = 0;
    for (std::size_t s = 0; s < w.size(); ++s) {
      auto p = w.point(s);
      for (std::size_t a = 0; a < d; ++a) {
        for (Coord dir : {Coord{-1}, Coord{1}}) {
          std::copy(p.begin(), p.end(), nbr.begin());
          nbr[a] += dir;
          if (!w.contains(nbr)) {
            touching[find_outside(nbr)].push_back(s);
            ++half_edges;
          }
        }
      }
    }
    row.bound = 4.0 * K * static_cast<double>(half_edges) / static_cast<double>(w.size());

    double sup_diff = 0.0;
    std::vector<double> theta(w.size());
    for (int trial = 0; trial < params.trials; ++trial) {
      for (auto& t : theta) t = uni(rng);
      // Each outside coordinate contributes (K/2) sum_s (1 - cos(theta_s - y))
      // to f_W; scan its max and min over the circle independently.
      double spread = 0.0;
      for (std::size_t o = 0; o < outside.size(); ++o) {
        double cmax = -1e300, cmin = 1e300;
        for (int g = 0; g < kGrid; ++g) {
          const double y = kTwoPi * g / kGrid;
          double contrib = 0.0;
          for (std::size_t s : touching[o])
            contrib += 0.5 * K * (1.0 - std::cos(theta[s] - y));
          cmax = std::max(cmax, contrib);
          cmin = std::min(cmin, contrib);
        }
        spread += cmax - cmin;
      }
      sup_diff = std::max(sup_diff, spread / static_cast<double>(w.size()));
    }
    row.delta = 4.0 * sup_diff;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace homent
