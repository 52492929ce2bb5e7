#include "homent/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace homent {
namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct VecHash {
  std::size_t operator()(const std::vector<Coord>& p) const {
    std::uint64_t h = 0x2545f4914f6cdd1dull;
    for (Coord c : p) h = mix64(h ^ static_cast<std::uint64_t>(c));
    return static_cast<std::size_t>(h);
  }
};

// Exact free-point bookkeeping: every still-uncovered window point.
class FreeSet {
public:
  explicit FreeSet(const LatticeWindow& w) {
    pts_.reserve(w.size() * 2);
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto p = w.point(i);
      pts_.emplace(p.begin(), p.end());
    }
  }
  bool contains(const std::vector<Coord>& p) const { return pts_.count(p) > 0; }
  void erase(const std::vector<Coord>& p) { pts_.erase(p); }
  std::size_t size() const { return pts_.size(); }

private:
  std::unordered_set<std::vector<Coord>, VecHash> pts_;
};

// All points of `tile` translated so its minimal corner lands on `anchor`.
std::vector<std::vector<Coord>> tile_points_at(const LatticeWindow& tile,
                                               const std::vector<Coord>& tile_lo,
                                               const std::vector<Coord>& anchor) {
  std::vector<std::vector<Coord>> out;
  out.reserve(tile.size());
  for (std::size_t i = 0; i < tile.size(); ++i) {
    auto p = tile.point(i);
    std::vector<Coord> q(p.begin(), p.end());
    for (std::size_t a = 0; a < q.size(); ++a) q[a] += anchor[a] - tile_lo[a];
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace

TilingResult quasi_tile(const LatticeWindow& window, const std::vector<LatticeWindow>& tiles,
                        double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("quasi_tile: epsilon must lie in (0,1)");
  if (window.empty()) throw std::invalid_argument("quasi_tile: empty window");
  if (tiles.empty()) throw std::invalid_argument("quasi_tile: no tiles given");

  std::vector<Coord> wlo, whi;
  window.bounding_box(wlo, whi);

  struct TileInfo {
    int index;
    Coord edge;
    std::vector<Coord> lo;
  };
  std::vector<TileInfo> infos;
  for (std::size_t t = 0; t < tiles.size(); ++t) {
    const LatticeWindow& tile = tiles[t];
    Coord edge = 0;
    if (tile.dim() != window.dim() || !tile.is_cube(&edge))
      throw std::invalid_argument("quasi_tile: tiles must be cubes of the window's dimension");
    for (std::size_t a = 0; a < wlo.size(); ++a)
      if (edge > whi[a] - wlo[a] + 1)
        throw std::invalid_argument("quasi_tile: tile exceeds window extent along an axis");
    std::vector<Coord> tlo, thi;
    tile.bounding_box(tlo, thi);
    infos.push_back({static_cast<int>(t), edge, std::move(tlo)});
  }
  std::sort(infos.begin(), infos.end(), [](const TileInfo& a, const TileInfo& b) {
    return a.edge > b.edge || (a.edge == b.edge && a.index < b.index);
  });

  FreeSet free(window);
  TilingResult result;
  result.epsilon = epsilon;

  auto try_place = [&](const TileInfo& info, const std::vector<Coord>& anchor) -> bool {
    auto pts = tile_points_at(tiles[static_cast<std::size_t>(info.index)], info.lo, anchor);
    for (const auto& p : pts)
      if (!free.contains(p)) return false;
    for (const auto& p : pts) free.erase(p);
    TilePlacement pl;
    pl.tile_index = info.index;
    pl.anchor = anchor;
    pl.covered = static_cast<std::int64_t>(pts.size());
    result.placements.push_back(std::move(pl));
    result.covered += static_cast<std::int64_t>(pts.size());
    return true;
  };

  // Pass 1: the largest tile on its aligned grid.  Anchors step by the tile
  // edge from the bounding-box corner, so placements in a cube window are
  // exactly the floor(E/e)^d grid cells.
  {
    const TileInfo& big = infos.front();
    std::vector<Coord> anchor = wlo;
    const std::size_t d = wlo.size();
    bool done = false;
    while (!done) {
      bool fits = true;
      for (std::size_t a = 0; a < d; ++a)
        if (anchor[a] + big.edge - 1 > whi[a]) fits = false;
      if (fits) try_place(big, anchor);
      std::size_t axis = d;
      while (axis > 0) {
        --axis;
        anchor[axis] += big.edge;
        if (anchor[axis] <= whi[axis]) break;
        anchor[axis] = wlo[axis];
        if (axis == 0) done = true;
      }
    }
  }

  // Pass 2: remaining tiles, greedy over window points in lex order.
  for (std::size_t k = 1; k < infos.size(); ++k) {
    const TileInfo& info = infos[k];
    for (std::size_t i = 0; i < window.size(); ++i) {
      auto p = window.point(i);
      std::vector<Coord> anchor(p.begin(), p.end());
      try_place(info, anchor);
    }
  }

  std::sort(result.placements.begin(), result.placements.end(),
            [](const TilePlacement& a, const TilePlacement& b) {
              if (a.anchor != b.anchor) return a.anchor < b.anchor;
              return a.tile_index < b.tile_index;
            });
  result.coverage_ratio =
      static_cast<double>(result.covered) / static_cast<double>(window.size());
  result.meets_epsilon = result.coverage_ratio + 1e-12 >= 1.0 - epsilon;
  return result;
}

SuperadditiveLimit ow_superadditive_limit(const SetFunction& h, const CubeSequence& seq,
                                          Coord i_max, Coord i_min) {
  if (i_min < 1) throw std::invalid_argument("ow_superadditive_limit: i_min must be >= 1");
  if (i_max < i_min + 1)
    throw std::invalid_argument("ow_superadditive_limit: need at least two cubes");

  SuperadditiveLimit out;
  out.i_min = i_min;
  out.estimates.reserve(static_cast<std::size_t>(i_max - i_min + 1));
  double best = 0.0;
  for (Coord i = i_min; i <= i_max; ++i) {
    const LatticeWindow w = seq.window(i);
    const double v = h.eval(w);
    if (v < 0.0)
      throw std::invalid_argument(
          "ow_superadditive_limit: set function must be nonnegative on the evaluated range");
    const double norm = v / static_cast<double>(w.size());
    out.estimates.push_back(norm);
    best = std::max(best, norm);
  }
  out.best_estimate = best;

  // Certificate: tile cube(i_max) by translates of an earlier cube(j).
  // Superadditivity over the placed copies gives
  //   h(cube_imax)/|cube_imax| >= v_j * coverage_j,
  // and with eps = max(best - v_j, 1 - coverage_j) this is at least
  // (best - eps)(1 - eps).  We report the best such certificate over j.
  const LatticeWindow big = seq.window(i_max);
  double best_bound = -std::numeric_limits<double>::infinity();
  for (Coord j = i_min; j < i_max; ++j) {
    const double vj = out.estimates[static_cast<std::size_t>(j - i_min)];
    const TilingResult t = quasi_tile(big, {seq.window(j)}, 0.999999);
    const double eps =
        std::max({best - vj, 1.0 - t.coverage_ratio, 0.0});
    const double bound = (best - eps) * (1.0 - eps);
    if (bound > best_bound) {
      best_bound = bound;
      out.tile_index = j;
      out.tile_epsilon = eps;
    }
  }
  out.liminf_bound = best_bound;
  return out;
}

SuperadditivityReport verify_superadditive(const SetFunction& h, int dim, int trials,
                                           std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("verify_superadditive: dim must be >= 1");
  if (trials < 1) throw std::invalid_argument("verify_superadditive: trials must be >= 1");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Coord> edge_dist(1, dim == 1 ? 24 : 8);
  std::uniform_int_distribution<Coord> pos_dist(-20, 20);

  SuperadditivityReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::vector<Coord> lo_a(static_cast<std::size_t>(dim)), hi_a(static_cast<std::size_t>(dim));
    std::vector<Coord> lo_b(static_cast<std::size_t>(dim)), hi_b(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
      const std::size_t ai = static_cast<std::size_t>(a);
      lo_a[ai] = pos_dist(rng);
      hi_a[ai] = lo_a[ai] + edge_dist(rng) - 1;
      lo_b[ai] = pos_dist(rng);
      hi_b[ai] = lo_b[ai] + edge_dist(rng) - 1;
    }
    // Push B past A along axis 0 so the pair is guaranteed disjoint.
    const Coord shift = hi_a[0] - lo_b[0] + 1 + edge_dist(rng);
    lo_b[0] += shift;
    hi_b[0] += shift;

    const LatticeWindow A = LatticeWindow::box(lo_a, hi_a);
    const LatticeWindow B = LatticeWindow::box(lo_b, hi_b);
    const double ha = h.eval(A);
    const double hb = h.eval(B);
    const double hu = h.eval(window_union(A, B));
    if (hu < ha + hb - 1e-9) report.failures.push_back({A, B, ha, hb, hu});
  }
  return report;
}

}  // namespace homent
