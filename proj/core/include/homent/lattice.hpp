#pragma once

// Finite windows of the integer lattice Z^d with the sup (l-infinity) metric.
// Windows are value types: a dimension plus a lexicographically sorted,
// deduplicated flat array of points.  All set operations preserve that
// normal form, so equality is plain memberwise comparison.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace homent {

using Coord = std::int64_t;

class LatticeWindow {
public:
  LatticeWindow() : dim_(1) {}

  // Points may arrive in any order and may contain duplicates.
  static LatticeWindow from_points(int dim, std::vector<std::vector<Coord>> pts);

  // Axis-aligned box given per-axis inclusive bounds lo[a]..hi[a].
  static LatticeWindow box(const std::vector<Coord>& lo, const std::vector<Coord>& hi);

  // Cube of edge `edge` anchored at `corner` (all axes).
  static LatticeWindow cube_at(int dim, const std::vector<Coord>& corner, Coord edge);

  // Interval [a,b] in Z^1, the most common fixture shape.
  static LatticeWindow interval(Coord a, Coord b);

  int dim() const { return dim_; }
  std::size_t size() const { return flat_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const { return flat_.empty(); }

  std::span<const Coord> point(std::size_t i) const {
    return {flat_.data() + static_cast<std::size_t>(dim_) * i, static_cast<std::size_t>(dim_)};
  }

  bool contains(std::span<const Coord> p) const;

  // Index of p in the sorted point order, or npos when absent.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t index_of(std::span<const Coord> p) const;

  LatticeWindow translated(std::span<const Coord> shift) const;

  // Per-axis bounding box; both empty when the window is empty.
  void bounding_box(std::vector<Coord>& lo, std::vector<Coord>& hi) const;

  // Sup-metric diameter: max over axes of (max - min). 0 for singletons.
  Coord diameter() const;

  // True when the window is an axis-aligned cube [a, a+e-1]^d; returns edge e.
  bool is_cube(Coord* edge_out = nullptr) const;

  const std::vector<Coord>& flat() const { return flat_; }

  bool operator==(const LatticeWindow& o) const = default;

private:
  LatticeWindow(int dim, std::vector<Coord> flat) : dim_(dim), flat_(std::move(flat)) {}
  void normalize();

  int dim_;
  std::vector<Coord> flat_;  // size() * dim_ coordinates, lex sorted
};

// Sup distance between two points of equal dimension.
Coord sup_distance(std::span<const Coord> a, std::span<const Coord> b);

// min over pairs of sup_distance; 0 iff the windows intersect.
// Both windows must be nonempty.
Coord window_distance(const LatticeWindow& a, const LatticeWindow& b);

// Union / difference of windows over the same lattice dimension.
LatticeWindow window_union(const LatticeWindow& a, const LatticeWindow& b);
LatticeWindow window_difference(const LatticeWindow& a, const LatticeWindow& b);
bool windows_disjoint(const LatticeWindow& a, const LatticeWindow& b);

// Two-sided metric boundary: points within distance N of the window AND
// within distance N of its complement.  Empty for N < 1 on any window,
// since no point is in a set and its complement at once.
LatticeWindow boundary(const LatticeWindow& w, double n_radius);

// Interior: the window minus its boundary.
LatticeWindow interior(const LatticeWindow& w, double n_radius);

// |boundary_{diam(probe)}(w)| / |w|.  Probe must be nonempty; w nonempty.
double amenability_ratio(const LatticeWindow& w, const LatticeWindow& probe);

// The standard exhausting cubes [-i, i-1]^d, |cube(i)| = (2i)^d.
class CubeSequence {
public:
  explicit CubeSequence(int dim) : dim_(dim) {}
  int dim() const { return dim_; }
  LatticeWindow window(Coord i) const;           // i >= 1
  std::int64_t window_size(Coord i) const;       // (2i)^d
private:
  int dim_;
};

}  // namespace homent
