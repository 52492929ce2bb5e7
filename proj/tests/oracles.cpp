#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "homent/counting.hpp"

namespace homent::testing {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct SiteTypes {
  std::vector<long long> d;  // degree per basis class
  std::vector<long long> u;  // level numerator over the common denominator
};

SiteTypes basis_views(const MoleculeSpec& spec) {
  SiteTypes out;
  const long long L = spec.level_denominator();
  for (const auto& cls : spec.basis()) {
    out.d.push_back(cls.degree);
    out.u.push_back(cls.level.num * (L / cls.level.den));
  }
  return out;
}

// Walk all B^n assignments with an odometer, keeping the degree and level
// sums incrementally current.  `visit` sees every (degree, level) leaf.
template <class Visit>
void walk_assignments(const SiteTypes& st, std::int64_t n, Visit&& visit) {
  const std::size_t B = st.d.size();
  std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
  long long D = st.d[0] * n;
  long long U = st.u[0] * n;
  for (;;) {
    visit(D, U);
    std::size_t p = 0;
    while (p < digit.size()) {
      std::size_t& dg = digit[p];
      D -= st.d[dg];
      U -= st.u[dg];
      if (++dg < B) {
        D += st.d[dg];
        U += st.u[dg];
        break;
      }
      dg = 0;
      D += st.d[0];
      U += st.u[0];
      ++p;
    }
    if (p == digit.size()) break;
  }
}

}  // namespace

mpz_class enumerate_class_count(const MoleculeSpec& spec, std::int64_t n, double ell, double nu,
                                double c, double delta) {
  const SiteTypes st = basis_views(spec);
  const double nd = static_cast<double>(n);
  const double Ld = static_cast<double>(spec.level_denominator());
  const IntWindow degw = IntWindow::open((ell - nu) * nd, (ell + nu) * nd);
  const IntWindow levw = IntWindow::open((c - delta) * Ld * nd, (c + delta) * Ld * nd);
  mpz_class hits = 0;
  walk_assignments(st, n, [&](long long D, long long U) {
    if (degw.contains(D) && levw.contains(U)) ++hits;
  });
  return hits;
}

mpz_class enumerate_level_band_count(const MoleculeSpec& spec, std::int64_t n, double c_lo,
                                     double c_hi) {
  const SiteTypes st = basis_views(spec);
  const double nd = static_cast<double>(n);
  const double Ld = static_cast<double>(spec.level_denominator());
  const IntWindow levw = IntWindow::open(c_lo * Ld * nd, c_hi * Ld * nd);
  mpz_class hits = 0;
  walk_assignments(st, n, [&](long long, long long U) {
    if (levw.contains(U)) ++hits;
  });
  return hits;
}

std::vector<mpz_class> enumerate_degree_ranks(const MoleculeSpec& spec, std::int64_t n) {
  const SiteTypes st = basis_views(spec);
  std::vector<mpz_class> ranks(static_cast<std::size_t>(spec.max_degree() * n) + 1, mpz_class(0));
  walk_assignments(st, n, [&](long long D, long long) {
    ranks[static_cast<std::size_t>(D)] += 1;
  });
  return ranks;
}

namespace {

struct Cosine {
  double a0, a1, b1, a2;
  double v(double t) const {
    return a0 + a1 * std::cos(t) + b1 * std::sin(t) + a2 * std::cos(2.0 * t);
  }
  double dv(double t) const {
    return -a1 * std::sin(t) + b1 * std::cos(t) - 2.0 * a2 * std::sin(2.0 * t);
  }
};

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double torus_gap(double a, double b) {
  const double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

// Builds the chain driven by theta_1 under the given arcsine branch bits;
// returns false when some step demands |sin| > 1.
bool build_chain(const Cosine& V, double K, int n, unsigned branch, double t1,
                 std::vector<double>& th) {
  th.assign(static_cast<std::size_t>(n), 0.0);
  th[0] = t1;
  double u = -V.dv(t1) / K;  // sin(theta_1 - theta_2)
  for (int i = 0; i + 1 < n; ++i) {
    if (i > 0) u = -V.dv(th[static_cast<std::size_t>(i)]) / K -
                    std::sin(th[static_cast<std::size_t>(i)] - th[static_cast<std::size_t>(i - 1)]);
    if (!(std::fabs(u) <= 1.0)) return false;
    const double base = std::asin(u);
    const double delta = (branch >> i) & 1u ? M_PI - base : base;
    th[static_cast<std::size_t>(i + 1)] = th[static_cast<std::size_t>(i)] - delta;
  }
  return true;
}

double end_residual(const Cosine& V, double K, const std::vector<double>& th) {
  const std::size_t n = th.size();
  return V.dv(th[n - 1]) + K * std::sin(th[n - 1] - th[n - 2]);
}

double chain_value(const Cosine& V, double K, const std::vector<double>& th) {
  double s = 0.0;
  for (double t : th) s += V.v(t);
  for (std::size_t i = 0; i + 1 < th.size(); ++i)
    s += K * (1.0 - std::cos(th[i] - th[i + 1]));
  return s / static_cast<double>(th.size());
}

double sup_gradient(const Cosine& V, double K, const std::vector<double>& th) {
  const std::size_t n = th.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double g = V.dv(th[i]);
    if (i > 0) g += K * std::sin(th[i] - th[i - 1]);
    if (i + 1 < n) g += K * std::sin(th[i] - th[i + 1]);
    worst = std::max(worst, std::fabs(g));
  }
  return worst;
}

}  // namespace

std::vector<ShootingPoint> shoot_chain_stationary(int n, double a0, double a1, double b1,
                                                  double a2, double coupling) {
  if (n < 2) throw std::invalid_argument("shoot_chain_stationary: need n >= 2");
  if (!(coupling > 0.0)) throw std::invalid_argument("shoot_chain_stationary: need K > 0");
  const Cosine V{a0, a1, b1, a2};
  const double K = coupling;
  const unsigned branches = 1u << (n - 1);
  const int samples = 16384;

  std::vector<ShootingPoint> found;
  std::vector<double> th, th_lo;
  for (unsigned br = 0; br < branches; ++br) {
    bool have_prev = false;
    double t_prev = 0.0, r_prev = 0.0;
    for (int s = 0; s <= samples; ++s) {
      const double t1 = kTwoPi * static_cast<double>(s) / static_cast<double>(samples);
      if (!build_chain(V, K, n, br, t1, th)) {
        have_prev = false;
        continue;
      }
      const double r = end_residual(V, K, th);
      if (have_prev && (r_prev <= 0.0) != (r <= 0.0)) {
        // bisect the bracket; abandon it if the branch arc ends inside
        double lo = t_prev, hi = t1, rlo = r_prev;
        bool ok = true;
        for (int it = 0; it < 80 && ok; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (!build_chain(V, K, n, br, mid, th_lo)) {
            ok = false;
            break;
          }
          const double rm = end_residual(V, K, th_lo);
          if ((rm <= 0.0) == (rlo <= 0.0)) {
            lo = mid;
            rlo = rm;
          } else {
            hi = mid;
          }
        }
        if (ok && build_chain(V, K, n, br, 0.5 * (lo + hi), th_lo) &&
            sup_gradient(V, K, th_lo) <= 1e-8) {
          ShootingPoint p;
          for (double a : th_lo) p.angles.push_back(wrap_angle(a));
          p.value = chain_value(V, K, th_lo);
          found.push_back(std::move(p));
        }
      }
      have_prev = true;
      t_prev = t1;
      r_prev = r;
    }
  }

  // merge the same point reached through different branches or brackets
  std::sort(found.begin(), found.end(), [](const ShootingPoint& x, const ShootingPoint& y) {
    return x.angles < y.angles;
  });
  std::vector<ShootingPoint> unique;
  for (auto& p : found) {
    bool dup = false;
    for (const auto& q : unique) {
      double gap = 0.0;
      for (std::size_t i = 0; i < p.angles.size(); ++i)
        gap = std::max(gap, torus_gap(p.angles[i], q.angles[i]));
      if (gap < 1e-6) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(std::move(p));
  }
  return unique;
}

}  // namespace homent::testing
