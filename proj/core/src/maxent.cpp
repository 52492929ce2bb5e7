#include "homent/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace homent {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-9;   // distance treated as "on the face"
constexpr double kGradTol = 1e-12;  // dual stationarity target

struct P2 {
  double x = 0.0, y = 0.0;
};
double cross(const P2& o, const P2& a, const P2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}
double dist(const P2& a, const P2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Atom {
  double s = 0.0;   // coordinate along the active face
  double w = 1.0;   // class multiplicity
  std::size_t type; // index into spec.types()
};

// Entropy over classes of the Gibbs family q_t ~ w_t exp(lambda s_t),
// solved so that E[s] = target.  Atoms must span at least two distinct s.
struct Solve1D {
  double value = 0.0;
  double lambda = 0.0;
  int iterations = 0;
  std::vector<double> q;  // per atom
};

void gibbs_moments(const std::vector<Atom>& atoms, double lambda, std::vector<double>& q,
                   double& mean, double& var) {
  double mx = -std::numeric_limits<double>::infinity();
  for (const auto& a : atoms) mx = std::max(mx, lambda * a.s + std::log(a.w));
  double Z = 0.0;
  q.resize(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    q[i] = std::exp(lambda * atoms[i].s + std::log(atoms[i].w) - mx);
    Z += q[i];
  }
  mean = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    q[i] /= Z;
    mean += q[i] * atoms[i].s;
  }
  var = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double d = atoms[i].s - mean;
    var += q[i] * d * d;
  }
}

double entropy_of(const std::vector<Atom>& atoms, const std::vector<double>& q) {
  double h = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (q[i] > 1e-300) h += q[i] * (std::log(atoms[i].w) - std::log(q[i]));
  return h;
}

Solve1D solve_1d(const std::vector<Atom>& atoms, double target) {
  Solve1D out;
  double lambda = 0.0;
  std::vector<double> q;
  double mean = 0.0, var = 0.0;
  gibbs_moments(atoms, lambda, q, mean, var);
  for (int it = 0; it < 300; ++it) {
    const double g = mean - target;
    if (std::abs(g) <= kGradTol) break;
    double step = -g / std::max(var, 1e-300);
    // Backtrack on the moment residual.
    double t = 1.0;
    for (int h = 0; h < 60; ++h) {
      std::vector<double> q2;
      double mean2, var2;
      gibbs_moments(atoms, lambda + t * step, q2, mean2, var2);
      if (std::abs(mean2 - target) < std::abs(g)) {
        lambda += t * step;
        q = std::move(q2);
        mean = mean2;
        var = var2;
        break;
      }
      t *= 0.5;
    }
    out.iterations = it + 1;
  }
  out.lambda = lambda;
  out.q = q;
  out.value = entropy_of(atoms, q);
  return out;
}

struct FaceProblem {
  // Types listed with 2D coordinates; subsets get selected per face.
  std::vector<P2> pts;      // distinct (degree, level) pairs
  std::vector<double> wts;  // multiplicities
};

MaxEntResult finish(const MoleculeSpec& spec, const std::vector<std::size_t>& support,
                    const std::vector<double>& q_support, double value, int iters,
                    FeasibleRegion region, double ell, double c) {
  MaxEntResult r;
  r.value = value;
  r.iterations = iters;
  r.region = region;
  r.class_probs.assign(spec.basis().size(), 0.0);

  // Spread each type's probability uniformly over its member classes.
  const auto& types = spec.types();
  double ed = 0.0, ev = 0.0, total = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const auto& t = types[support[i]];
    ed += q_support[i] * t.degree;
    ev += q_support[i] * t.level.to_double();
    total += q_support[i];
    const double per_class = q_support[i] / t.weight;
    int seen = 0;
    for (std::size_t b = 0; b < spec.basis().size(); ++b) {
      const auto& cls = spec.basis()[b];
      if (cls.degree == t.degree && cls.level == t.level) {
        r.class_probs[b] = per_class;
        ++seen;
      }
    }
    (void)seen;
  }
  r.prob_sum = total;
  r.residual = std::hypot(ed - ell, ev - c);
  return r;
}

MaxEntResult infeasible(const MoleculeSpec& spec) {
  MaxEntResult r;
  r.value = kNegInf;
  r.region = FeasibleRegion::infeasible;
  r.class_probs.assign(spec.basis().size(), 0.0);
  r.prob_sum = 0.0;
  r.residual = std::numeric_limits<double>::quiet_NaN();
  return r;
}

// Solve on a one-dimensional face through atoms within kFeasTol of the
// segment's line.  Handles endpoint snapping to vertex sub-faces.
MaxEntResult solve_on_line(const MoleculeSpec& spec, const FaceProblem& fp,
                           const std::vector<std::size_t>& face_types, const P2& origin,
                           const P2& dir, double starget, double ell, double c) {
  std::vector<Atom> atoms;
  for (std::size_t t : face_types) {
    Atom a;
    a.s = (fp.pts[t].x - origin.x) * dir.x + (fp.pts[t].y - origin.y) * dir.y;
    a.w = fp.wts[t];
    a.type = t;
    atoms.push_back(a);
  }
  double smin = atoms.front().s, smax = atoms.front().s;
  for (const auto& a : atoms) {
    smin = std::min(smin, a.s);
    smax = std::max(smax, a.s);
  }
  if (starget < smin - kFeasTol || starget > smax + kFeasTol) return infeasible(spec);

  auto vertex_result = [&](double sv, FeasibleRegion reg) {
    std::vector<std::size_t> support;
    std::vector<double> q;
    double wsum = 0.0;
    for (const auto& a : atoms)
      if (std::abs(a.s - sv) <= kFeasTol) wsum += a.w;
    for (const auto& a : atoms) {
      if (std::abs(a.s - sv) <= kFeasTol) {
        support.push_back(a.type);
        q.push_back(a.w / wsum);
      }
    }
    return finish(spec, support, q, std::log(wsum), 0, reg, ell, c);
  };

  if (smax - smin <= kFeasTol) return vertex_result(smin, FeasibleRegion::vertex);
  if (starget <= smin + kFeasTol) return vertex_result(smin, FeasibleRegion::vertex);
  if (starget >= smax - kFeasTol) return vertex_result(smax, FeasibleRegion::vertex);

  const Solve1D sol = solve_1d(atoms, starget);
  std::vector<std::size_t> support;
  for (const auto& a : atoms) support.push_back(a.type);
  return finish(spec, support, sol.q, sol.value, sol.iterations, FeasibleRegion::edge, ell, c);
}

}  // namespace

MaxEntResult solve_max_entropy(const MoleculeSpec& spec, double ell, double c) {
  FaceProblem fp;
  for (const auto& t : spec.types()) {
    fp.pts.push_back({static_cast<double>(t.degree), t.level.to_double()});
    fp.wts.push_back(static_cast<double>(t.weight));
  }
  const std::size_t T = fp.pts.size();
  const P2 target{ell, c};

  // Degenerate geometry first: all types at one point.
  double spread = 0.0;
  for (std::size_t i = 0; i < T; ++i) spread = std::max(spread, dist(fp.pts[i], fp.pts[0]));
  if (spread <= kFeasTol) {
    if (dist(target, fp.pts[0]) > kFeasTol) return infeasible(spec);
    std::vector<std::size_t> support(T);
    std::iota(support.begin(), support.end(), std::size_t{0});
    double wsum = 0.0;
    for (double w : fp.wts) wsum += w;
    std::vector<double> q;
    for (double w : fp.wts) q.push_back(w / wsum);
    return finish(spec, support, q, std::log(wsum), 0, FeasibleRegion::vertex, ell, c);
  }

  // Collinear types: solve along the common line.
  std::size_t a0 = 0, a1 = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < T; ++i)
    for (std::size_t j = i + 1; j < T; ++j)
      if (dist(fp.pts[i], fp.pts[j]) > best) {
        best = dist(fp.pts[i], fp.pts[j]);
        a0 = i;
        a1 = j;
      }
  P2 dir{(fp.pts[a1].x - fp.pts[a0].x) / best, (fp.pts[a1].y - fp.pts[a0].y) / best};
  bool collinear = true;
  for (std::size_t i = 0; i < T; ++i)
    if (std::abs(cross(fp.pts[a0], fp.pts[a1], fp.pts[i])) / best > kFeasTol) {
      collinear = false;
      break;
    }
  if (collinear) {
    const double perp = std::abs(cross(fp.pts[a0], fp.pts[a1], target)) / best;
    if (perp > kFeasTol) return infeasible(spec);
    std::vector<std::size_t> all(T);
    std::iota(all.begin(), all.end(), std::size_t{0});
    const double starget =
        (target.x - fp.pts[a0].x) * dir.x + (target.y - fp.pts[a0].y) * dir.y;
    return solve_on_line(spec, fp, all, fp.pts[a0], dir, starget, ell, c);
  }

  // Full 2D hull: monotone chain over the distinct points.
  std::vector<std::size_t> idx(T);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (fp.pts[a].x != fp.pts[b].x) return fp.pts[a].x < fp.pts[b].x;
    return fp.pts[a].y < fp.pts[b].y;
  });
  auto build = [&](bool upper) {
    std::vector<std::size_t> chain;
    for (std::size_t ii = 0; ii < T; ++ii) {
      const std::size_t i = idx[upper ? T - 1 - ii : ii];
      while (chain.size() >= 2 &&
             cross(fp.pts[chain[chain.size() - 2]], fp.pts[chain.back()], fp.pts[i]) <= 0)
        chain.pop_back();
      chain.push_back(i);
    }
    return chain;
  };
  std::vector<std::size_t> hull = build(false);
  std::vector<std::size_t> up = build(true);
  hull.insert(hull.end(), up.begin() + 1, up.end() - 1);  // CCW, no repeats

  // Signed distance to each edge; negative means outside.
  double inside_margin = std::numeric_limits<double>::infinity();
  std::size_t tight_edge = 0;
  for (std::size_t e = 0; e < hull.size(); ++e) {
    const P2& A = fp.pts[hull[e]];
    const P2& B = fp.pts[hull[(e + 1) % hull.size()]];
    const double len = dist(A, B);
    const double sd = cross(A, B, target) / len;
    if (sd < inside_margin) {
      inside_margin = sd;
      tight_edge = e;
    }
  }
  if (inside_margin < -kFeasTol) return infeasible(spec);

  if (inside_margin > kFeasTol) {
    // Interior: two-multiplier damped Newton on the dual.
    double l1 = 0.0, l2 = 0.0;
    std::vector<double> q(T);
    auto moments = [&](double m1, double m2, std::vector<double>& qq, P2& mean, double cov[3]) {
      double mx = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < T; ++i)
        mx = std::max(mx, m1 * fp.pts[i].x + m2 * fp.pts[i].y + std::log(fp.wts[i]));
      double Z = 0.0;
      qq.resize(T);
      for (std::size_t i = 0; i < T; ++i) {
        qq[i] = std::exp(m1 * fp.pts[i].x + m2 * fp.pts[i].y + std::log(fp.wts[i]) - mx);
        Z += qq[i];
      }
      mean = {0.0, 0.0};
      for (std::size_t i = 0; i < T; ++i) {
        qq[i] /= Z;
        mean.x += qq[i] * fp.pts[i].x;
        mean.y += qq[i] * fp.pts[i].y;
      }
      cov[0] = cov[1] = cov[2] = 0.0;
      for (std::size_t i = 0; i < T; ++i) {
        const double dx = fp.pts[i].x - mean.x;
        const double dy = fp.pts[i].y - mean.y;
        cov[0] += qq[i] * dx * dx;
        cov[1] += qq[i] * dx * dy;
        cov[2] += qq[i] * dy * dy;
      }
    };
    P2 mean;
    double cov[3];
    moments(l1, l2, q, mean, cov);
    int iters = 0;
    for (int it = 0; it < 500; ++it) {
      const double gx = mean.x - target.x;
      const double gy = mean.y - target.y;
      if (std::hypot(gx, gy) <= kGradTol) break;
      const double det = cov[0] * cov[2] - cov[1] * cov[1];
      double sx, sy;
      if (det > 1e-300) {
        sx = -(cov[2] * gx - cov[1] * gy) / det;
        sy = -(-cov[1] * gx + cov[0] * gy) / det;
      } else {  // nearly singular covariance: gradient step
        sx = -gx;
        sy = -gy;
      }
      double t = 1.0;
      const double g0 = std::hypot(gx, gy);
      for (int h = 0; h < 60; ++h) {
        std::vector<double> q2;
        P2 mean2;
        double cov2[3];
        moments(l1 + t * sx, l2 + t * sy, q2, mean2, cov2);
        if (std::hypot(mean2.x - target.x, mean2.y - target.y) < g0) {
          l1 += t * sx;
          l2 += t * sy;
          q = std::move(q2);
          mean = mean2;
          std::copy(cov2, cov2 + 3, cov);
          break;
        }
        t *= 0.5;
      }
      iters = it + 1;
    }
    std::vector<std::size_t> support(T);
    std::iota(support.begin(), support.end(), std::size_t{0});
    std::vector<Atom> atoms(T);
    double h = 0.0;
    for (std::size_t i = 0; i < T; ++i)
      if (q[i] > 1e-300) h += q[i] * (std::log(fp.wts[i]) - std::log(q[i]));
    (void)atoms;
    return finish(spec, support, q, h, iters, FeasibleRegion::interior, ell, c);
  }

  // On the boundary: vertex if close to a hull corner, else the tight edge.
  for (std::size_t e = 0; e < hull.size(); ++e) {
    if (dist(fp.pts[hull[e]], target) <= kFeasTol) {
      std::vector<std::size_t> support;
      std::vector<double> q;
      double wsum = 0.0;
      for (std::size_t i = 0; i < T; ++i)
        if (dist(fp.pts[i], fp.pts[hull[e]]) <= kFeasTol) wsum += fp.wts[i];
      for (std::size_t i = 0; i < T; ++i)
        if (dist(fp.pts[i], fp.pts[hull[e]]) <= kFeasTol) {
          support.push_back(i);
          q.push_back(fp.wts[i] / wsum);
        }
      return finish(spec, support, q, std::log(wsum), 0, FeasibleRegion::vertex, ell, c);
    }
  }
  {
    const P2& A = fp.pts[hull[tight_edge]];
    const P2& B = fp.pts[hull[(tight_edge + 1) % hull.size()]];
    const double len = dist(A, B);
    const P2 dir2{(B.x - A.x) / len, (B.y - A.y) / len};
    std::vector<std::size_t> face;
    for (std::size_t i = 0; i < T; ++i)
      if (std::abs(cross(A, B, fp.pts[i])) / len <= kFeasTol) face.push_back(i);
    const double starget = (target.x - A.x) * dir2.x + (target.y - A.y) * dir2.y;
    return solve_on_line(spec, fp, face, A, dir2, starget, ell, c);
  }
}

double entropy_asymptotic(const MoleculeSpec& spec, double ell, double c) {
  return solve_max_entropy(spec, ell, c).value;
}

BettiSumResult betti_sum_entropy_detail(const MoleculeSpec& spec, double c) {
  // Single-constraint problem in the level coordinate.
  FaceProblem fp;
  for (const auto& t : spec.types()) {
    fp.pts.push_back({static_cast<double>(t.degree), t.level.to_double()});
    fp.wts.push_back(static_cast<double>(t.weight));
  }
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < fp.pts.size(); ++i) {
    Atom a;
    a.s = fp.pts[i].y;
    a.w = fp.wts[i];
    a.type = i;
    atoms.push_back(a);
  }
  double vmin = atoms.front().s, vmax = atoms.front().s;
  for (const auto& a : atoms) {
    vmin = std::min(vmin, a.s);
    vmax = std::max(vmax, a.s);
  }
  BettiSumResult out;
  if (c < vmin - kFeasTol || c > vmax + kFeasTol) {
    out.value = kNegInf;
    out.ell_star = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  auto at_vertex = [&](double sv) {
    double wsum = 0.0, ed = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (std::abs(atoms[i].s - sv) <= kFeasTol) {
        wsum += atoms[i].w;
        ed += atoms[i].w * fp.pts[i].x;
      }
    out.value = std::log(wsum);
    out.ell_star = ed / wsum;
  };
  if (vmax - vmin <= kFeasTol || c <= vmin + kFeasTol) {
    at_vertex(vmin);
  } else if (c >= vmax - kFeasTol) {
    at_vertex(vmax);
  } else {
    const Solve1D sol = solve_1d(atoms, c);
    out.value = sol.value;
    out.ell_star = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) out.ell_star += sol.q[i] * fp.pts[i].x;
  }
  return out;
}

double betti_sum_entropy(const MoleculeSpec& spec, double c) {
  return betti_sum_entropy_detail(spec, c).value;
}

}  // namespace homent
