#include "homent/potential.hpp"

#include <algorithm>
#include <cmath>

namespace homent {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kScanCells = 4096;
constexpr double kCurvatureTol = 1e-8;

bool is_constant(const OnSiteCosine& v) { return v.a1 == 0.0 && v.b1 == 0.0 && v.a2 == 0.0; }

}  // namespace

double OnSiteCosine::value(double t) const {
  return a0 + a1 * std::cos(t) + b1 * std::sin(t) + a2 * std::cos(2.0 * t);
}

double OnSiteCosine::deriv(double t) const {
  return -a1 * std::sin(t) + b1 * std::cos(t) - 2.0 * a2 * std::sin(2.0 * t);
}

double OnSiteCosine::deriv2(double t) const {
  return -a1 * std::cos(t) - b1 * std::sin(t) - 4.0 * a2 * std::cos(2.0 * t);
}

std::vector<PotentialRoot> PairPotential::on_site_critical_points() const {
  std::vector<PotentialRoot> roots;
  if (is_constant(on_site)) return roots;  // V' identically zero

  auto push_root = [&](double t) {
    while (t >= kTwoPi) t -= kTwoPi;
    while (t < 0.0) t += kTwoPi;
    for (const auto& r : roots) {
      double d = std::abs(r.theta - t);
      d = std::min(d, kTwoPi - d);
      if (d < 1e-9) return;
    }
    roots.push_back({t, on_site.value(t), on_site.deriv2(t)});
  };

  const double h = kTwoPi / kScanCells;
  double fa = on_site.deriv(0.0);
  for (int i = 0; i < kScanCells; ++i) {
    const double a = i * h;
    const double b = (i + 1) * h;
    const double fb = on_site.deriv(b);
    if (fa == 0.0) {
      push_root(a);
    } else if (fa * fb < 0.0) {
      double lo = a, hi = b, flo = fa;
      for (int k = 0; k < 100; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = on_site.deriv(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (flo * fm < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      push_root(0.5 * (lo + hi));
    }
    fa = fb;
  }
  std::sort(roots.begin(), roots.end(),
            [](const PotentialRoot& x, const PotentialRoot& y) { return x.theta < y.theta; });
  return roots;
}

bool PairPotential::morse_on_site() const {
  if (is_constant(on_site)) return false;
  const auto roots = on_site_critical_points();
  if (roots.size() < 2) return false;
  for (const auto& r : roots)
    if (std::abs(r.curvature) <= kCurvatureTol) return false;
  return true;
}

double PairPotential::on_site_min() const {
  const auto roots = on_site_critical_points();
  if (!roots.empty() && morse_on_site()) {
    double m = roots.front().value;
    for (const auto& r : roots) m = std::min(m, r.value);
    return m;
  }
  double m = on_site.value(0.0);
  for (int i = 1; i < kScanCells; ++i) m = std::min(m, on_site.value(i * (kTwoPi / kScanCells)));
  return m;
}

double PairPotential::on_site_max() const {
  const auto roots = on_site_critical_points();
  if (!roots.empty() && morse_on_site()) {
    double m = roots.front().value;
    for (const auto& r : roots) m = std::max(m, r.value);
    return m;
  }
  double m = on_site.value(0.0);
  for (int i = 1; i < kScanCells; ++i) m = std::max(m, on_site.value(i * (kTwoPi / kScanCells)));
  return m;
}

PairPotential cosine_well(double coupling) {
  PairPotential p;
  p.on_site = OnSiteCosine{0.5, -0.5, 0.0, 0.0};
  p.coupling = coupling;
  return p;
}

}  // namespace homent
