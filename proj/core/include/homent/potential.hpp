#pragma once

#include <vector>

namespace homent {

// On-site potential in the cosine family a0 + a1 cos t + b1 sin t + a2 cos 2t.
// The default is the standard well (1 - cos t)/2 with minimum 0 at t = 0 and
// maximum 1 at t = pi.
struct OnSiteCosine {
  double a0 = 0.5;
  double a1 = -0.5;
  double b1 = 0.0;
  double a2 = 0.0;

  double value(double t) const;
  double deriv(double t) const;
  double deriv2(double t) const;
};

struct PotentialRoot {
  double theta = 0.0;      // in [0, 2pi)
  double value = 0.0;      // V(theta)
  double curvature = 0.0;  // V''(theta)
};

// Pair interaction K (1 - cos(t - t')) on top of the on-site term.
struct PairPotential {
  OnSiteCosine on_site;
  double coupling = 0.0;  // K >= 0

  // Roots of V' in [0, 2pi), sorted by angle, found by a dense sign-change
  // scan refined with bisection.
  std::vector<PotentialRoot> on_site_critical_points() const;
  // True when V has finitely many critical points, all nondegenerate.
  bool morse_on_site() const;
  double on_site_min() const;
  double on_site_max() const;
};

PairPotential cosine_well(double coupling);

}  // namespace homent
