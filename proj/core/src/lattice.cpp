#include "homent/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace homent {
namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t hash_span(std::span<const Coord> p) {
  std::uint64_t h = 0x2545f4914f6cdd1dull;
  for (Coord c : p) h = mix(h ^ static_cast<std::uint64_t>(c));
  return h;
}

// Lightweight hashed view of a window for near-O(1) membership during
// dilation.  Hash hits fall back to the window's exact binary search.
class PointSet {
public:
  explicit PointSet(const LatticeWindow& w) : window_(&w) {
    buckets_.reserve(w.size() * 2);
    for (std::size_t i = 0; i < w.size(); ++i) buckets_.insert(hash_span(w.point(i)));
  }
  bool contains(std::span<const Coord> p) const {
    if (!buckets_.count(hash_span(p))) return false;  // fast reject
    return window_->contains(p);                      // exact on hash hit
  }

private:
  std::unordered_set<std::uint64_t> buckets_;
  const LatticeWindow* window_;
};

// Enumerate all offsets o in [-r, r]^d in lex order.
std::vector<std::vector<Coord>> ball_offsets(int dim, Coord r) {
  std::vector<std::vector<Coord>> out;
  std::vector<Coord> cur(static_cast<std::size_t>(dim), -r);
  while (true) {
    out.push_back(cur);
    int axis = dim - 1;
    while (axis >= 0 && cur[static_cast<std::size_t>(axis)] == r) {
      cur[static_cast<std::size_t>(axis)] = -r;
      --axis;
    }
    if (axis < 0) break;
    ++cur[static_cast<std::size_t>(axis)];
  }
  return out;
}

}  // namespace

void LatticeWindow::normalize() {
  const std::size_t d = static_cast<std::size_t>(dim_);
  const std::size_t n = flat_.size() / d;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat_.begin() + static_cast<std::ptrdiff_t>(a * d),
                                        flat_.begin() + static_cast<std::ptrdiff_t>(a * d + d),
                                        flat_.begin() + static_cast<std::ptrdiff_t>(b * d),
                                        flat_.begin() + static_cast<std::ptrdiff_t>(b * d + d));
  });
  std::vector<Coord> sorted;
  sorted.reserve(flat_.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto begin = flat_.begin() + static_cast<std::ptrdiff_t>(order[i] * d);
    if (!sorted.empty() && std::equal(begin, begin + static_cast<std::ptrdiff_t>(d),
                                      sorted.end() - static_cast<std::ptrdiff_t>(d))) {
      continue;  // duplicate
    }
    sorted.insert(sorted.end(), begin, begin + static_cast<std::ptrdiff_t>(d));
  }
  flat_ = std::move(sorted);
}

LatticeWindow LatticeWindow::from_points(int dim, std::vector<std::vector<Coord>> pts) {
  if (dim < 1) throw std::invalid_argument("lattice dimension must be >= 1");
  std::vector<Coord> flat;
  flat.reserve(pts.size() * static_cast<std::size_t>(dim));
  for (const auto& p : pts) {
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("point dimension mismatch");
    flat.insert(flat.end(), p.begin(), p.end());
  }
  LatticeWindow w(dim, std::move(flat));
  w.normalize();
  return w;
}

LatticeWindow LatticeWindow::box(const std::vector<Coord>& lo, const std::vector<Coord>& hi) {
  if (lo.empty() || lo.size() != hi.size())
    throw std::invalid_argument("box bounds must be nonempty and of equal dimension");
  const int dim = static_cast<int>(lo.size());
  for (std::size_t a = 0; a < lo.size(); ++a)
    if (lo[a] > hi[a]) throw std::invalid_argument("box lower bound exceeds upper bound");
  std::vector<Coord> flat;
  std::vector<Coord> cur = lo;
  while (true) {
    flat.insert(flat.end(), cur.begin(), cur.end());
    int axis = dim - 1;
    while (axis >= 0 && cur[static_cast<std::size_t>(axis)] == hi[static_cast<std::size_t>(axis)]) {
      cur[static_cast<std::size_t>(axis)] = lo[static_cast<std::size_t>(axis)];
      --axis;
    }
    if (axis < 0) break;
    ++cur[static_cast<std::size_t>(axis)];
  }
  return LatticeWindow(dim, std::move(flat));  // box fill order is already lex
}

LatticeWindow LatticeWindow::cube_at(int dim, const std::vector<Coord>& corner, Coord edge) {
  if (edge < 1) throw std::invalid_argument("cube edge must be >= 1");
  if (static_cast<int>(corner.size()) != dim)
    throw std::invalid_argument("cube corner dimension mismatch");
  std::vector<Coord> hi = corner;
  for (auto& c : hi) c += edge - 1;
  return box(corner, hi);
}

LatticeWindow LatticeWindow::interval(Coord a, Coord b) { return box({a}, {b}); }

bool LatticeWindow::contains(std::span<const Coord> p) const {
  const std::size_t d = static_cast<std::size_t>(dim_);
  if (p.size() != d) return false;
  const std::size_t n = size();
  std::size_t lo = 0, hi = n;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto q = point(mid);
    if (std::lexicographical_compare(q.begin(), q.end(), p.begin(), p.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < n && std::equal(p.begin(), p.end(), point(lo).begin());
}

std::size_t LatticeWindow::index_of(std::span<const Coord> p) const {
  const std::size_t d = static_cast<std::size_t>(dim_);
  if (p.size() != d) return npos;
  const std::size_t n = size();
  std::size_t lo = 0, hi = n;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto q = point(mid);
    if (std::lexicographical_compare(q.begin(), q.end(), p.begin(), p.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < n && std::equal(p.begin(), p.end(), point(lo).begin())) return lo;
  return npos;
}

LatticeWindow LatticeWindow::translated(std::span<const Coord> shift) const {
  if (static_cast<int>(shift.size()) != dim_)
    throw std::invalid_argument("translation vector dimension mismatch");
  std::vector<Coord> flat = flat_;
  const std::size_t d = static_cast<std::size_t>(dim_);
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] += shift[i % d];
  return LatticeWindow(dim_, std::move(flat));  // adding a constant keeps lex order
}

void LatticeWindow::bounding_box(std::vector<Coord>& lo, std::vector<Coord>& hi) const {
  lo.clear();
  hi.clear();
  if (empty()) return;
  const std::size_t d = static_cast<std::size_t>(dim_);
  lo.assign(flat_.begin(), flat_.begin() + static_cast<std::ptrdiff_t>(d));
  hi = lo;
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = point(i);
    for (std::size_t a = 0; a < d; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
}

Coord LatticeWindow::diameter() const {
  if (empty()) throw std::invalid_argument("diameter of empty window");
  std::vector<Coord> lo, hi;
  bounding_box(lo, hi);
  Coord d = 0;
  for (std::size_t a = 0; a < lo.size(); ++a) d = std::max(d, hi[a] - lo[a]);
  return d;
}

bool LatticeWindow::is_cube(Coord* edge_out) const {
  if (empty()) return false;
  std::vector<Coord> lo, hi;
  bounding_box(lo, hi);
  const Coord edge = hi[0] - lo[0] + 1;
  for (std::size_t a = 1; a < lo.size(); ++a)
    if (hi[a] - lo[a] + 1 != edge) return false;
  double expect = 1;
  for (std::size_t a = 0; a < lo.size(); ++a) expect *= static_cast<double>(edge);
  if (expect != static_cast<double>(size())) return false;
  if (edge_out) *edge_out = edge;
  return true;
}

Coord sup_distance(std::span<const Coord> a, std::span<const Coord> b) {
  Coord d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Coord window_distance(const LatticeWindow& a, const LatticeWindow& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("distance between empty windows");
  Coord best = std::numeric_limits<Coord>::max();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      best = std::min(best, sup_distance(a.point(i), b.point(j)));
      if (best == 0) return 0;
    }
  return best;
}

LatticeWindow window_union(const LatticeWindow& a, const LatticeWindow& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("union of mismatched dimensions");
  std::vector<std::vector<Coord>> pts;
  pts.reserve(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) pts.emplace_back(a.point(i).begin(), a.point(i).end());
  for (std::size_t i = 0; i < b.size(); ++i) pts.emplace_back(b.point(i).begin(), b.point(i).end());
  return LatticeWindow::from_points(a.dim(), std::move(pts));
}

LatticeWindow window_difference(const LatticeWindow& a, const LatticeWindow& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("difference of mismatched dimensions");
  std::vector<std::vector<Coord>> pts;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto p = a.point(i);
    if (!b.contains(p)) pts.emplace_back(p.begin(), p.end());
  }
  return LatticeWindow::from_points(a.dim(), std::move(pts));
}

bool windows_disjoint(const LatticeWindow& a, const LatticeWindow& b) {
  const LatticeWindow& small = a.size() <= b.size() ? a : b;
  const LatticeWindow& large = a.size() <= b.size() ? b : a;
  for (std::size_t i = 0; i < small.size(); ++i)
    if (large.contains(small.point(i))) return false;
  return true;
}

LatticeWindow boundary(const LatticeWindow& w, double n_radius) {
  if (n_radius < 0) throw std::invalid_argument("boundary radius must be >= 0");
  if (w.empty()) return LatticeWindow::from_points(w.dim(), {});
  // Lattice distances are integers, so d <= N is d <= floor(N).
  const Coord r = static_cast<Coord>(std::floor(n_radius));
  if (r == 0) return LatticeWindow::from_points(w.dim(), {});

  const PointSet members(w);
  const auto offsets = ball_offsets(w.dim(), r);

  // Candidates within r of the window: dilate by the r-ball.
  std::vector<std::vector<Coord>> cand;
  cand.reserve(w.size() * 2);
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto p = w.point(i);
    std::vector<Coord> q(p.begin(), p.end());
    for (const auto& o : offsets) {
      for (std::size_t a = 0; a < q.size(); ++a) q[a] = p[a] + o[a];
      const std::uint64_t h = hash_span(q);
      if (seen.insert(h).second) cand.push_back(q);
    }
  }

  // Keep those that also see the complement within r: some ball point is
  // outside the window.  Deep interior points fail this and drop out.
  std::vector<std::vector<Coord>> result;
  std::vector<Coord> probe(static_cast<std::size_t>(w.dim()));
  for (const auto& c : cand) {
    bool sees_outside = false;
    for (const auto& o : offsets) {
      for (std::size_t a = 0; a < probe.size(); ++a) probe[a] = c[a] + o[a];
      if (!members.contains(probe)) {
        sees_outside = true;
        break;
      }
    }
    if (sees_outside) result.push_back(c);
  }
  return LatticeWindow::from_points(w.dim(), std::move(result));
}

LatticeWindow interior(const LatticeWindow& w, double n_radius) {
  return window_difference(w, boundary(w, n_radius));
}

double amenability_ratio(const LatticeWindow& w, const LatticeWindow& probe) {
  if (w.empty()) throw std::invalid_argument("amenability ratio of empty window");
  const Coord d = probe.diameter();  // throws on empty probe
  const LatticeWindow b = boundary(w, static_cast<double>(d));
  return static_cast<double>(b.size()) / static_cast<double>(w.size());
}

LatticeWindow CubeSequence::window(Coord i) const {
  if (i < 1) throw std::invalid_argument("cube sequence index must be >= 1");
  std::vector<Coord> lo(static_cast<std::size_t>(dim_), -i);
  std::vector<Coord> hi(static_cast<std::size_t>(dim_), i - 1);
  return LatticeWindow::box(lo, hi);
}

std::int64_t CubeSequence::window_size(Coord i) const {
  std::int64_t s = 1;
  for (int a = 0; a < dim_; ++a) s *= 2 * i;
  return s;
}

}  // namespace homent
