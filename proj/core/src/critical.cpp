#include "homent/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>

#include "homent/counting.hpp"
#include "homent/parallel.hpp"

namespace homent {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEigTol = 1e-8;

double wrap_angle(double a) {
  double w = a - kTwoPi * std::floor(a / kTwoPi);
  if (w >= kTwoPi) w -= kTwoPi;  // floor rounding can land exactly on 2pi
  if (w < 0.0) w = 0.0;
  return w;
}

double torus_linf(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double m = 0.0;
  for (long i = 0; i < a.size(); ++i) {
    double d = std::abs(a[i] - b[i]);
    d = std::min(d, kTwoPi - d);
    m = std::max(m, d);
  }
  return m;
}

struct Converged {
  Eigen::VectorXd angles;
  double value = 0.0;
  double grad_norm = 0.0;
};

std::optional<Converged> newton_from(const WindowEnergy& energy, Eigen::VectorXd x,
                                     const SolveConfig& cfg) {
  for (long i = 0; i < x.size(); ++i) x[i] = wrap_angle(x[i]);
  Eigen::VectorXd g = energy.gradient(x);
  double gn = g.norm();
  for (int iter = 0; iter < cfg.max_iter && gn > cfg.tol; ++iter) {
    const Eigen::MatrixXd h = energy.hessian(x);
    Eigen::VectorXd step = Eigen::FullPivLU<Eigen::MatrixXd>(h).solve(-g);
    if (!step.allFinite() || (h * step + g).norm() > 1e-6 * std::max(1.0, gn) ||
        step.norm() > 1e8) {
      step = -g;  // singular Hessian: fall back to steepest descent on |g|
    }
    double t = 1.0;
    bool moved = false;
    for (int half = 0; half < 40; ++half) {
      Eigen::VectorXd x2 = x + t * step;
      for (long i = 0; i < x2.size(); ++i) x2[i] = wrap_angle(x2[i]);
      const Eigen::VectorXd g2 = energy.gradient(x2);
      const double gn2 = g2.norm();
      if (gn2 < gn) {
        x = std::move(x2);
        g = g2;
        gn = gn2;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;  // stuck; the start is dropped
  }
  if (gn > cfg.tol) return std::nullopt;
  const double value = energy.value(x);
  return Converged{std::move(x), value, gn};
}

// First primes, for Kronecker (golden-like) start sequences per coordinate.
constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                           41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

}  // namespace

std::vector<CriticalPoint> find_critical_points(const WindowEnergy& energy,
                                                const SolveConfig& config,
                                                SolveSummary* summary) {
  const std::size_t n = energy.size();
  if (n > config.site_cap)
    throw std::invalid_argument("find_critical_points: window exceeds the site cap");

  // Start set: product warm starts first, then the quasi-random cloud.
  std::vector<Eigen::VectorXd> starts;
  const auto roots = energy.potential().on_site_critical_points();
  if (!roots.empty()) {
    double count = 1.0;
    for (std::size_t i = 0; i < n; ++i) count *= static_cast<double>(roots.size());
    if (count <= static_cast<double>(config.warm_cap)) {
      std::vector<std::size_t> pick(n, 0);
      while (true) {
        Eigen::VectorXd x(static_cast<long>(n));
        for (std::size_t i = 0; i < n; ++i) x[static_cast<long>(i)] = roots[pick[i]].theta;
        starts.push_back(std::move(x));
        std::size_t axis = n;
        while (axis > 0 && pick[axis - 1] + 1 == roots.size()) pick[--axis] = 0;
        if (axis == 0) break;
        ++pick[axis - 1];
      }
    }
  }
  {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> offset(n), alpha(n);
    for (std::size_t i = 0; i < n; ++i) {
      offset[i] = uni(rng);
      const double s = std::sqrt(static_cast<double>(kPrimes[i % (sizeof kPrimes / sizeof *kPrimes)]));
      alpha[i] = s - std::floor(s);
    }
    for (int s = 0; s < config.starts; ++s) {
      Eigen::VectorXd x(static_cast<long>(n));
      for (std::size_t i = 0; i < n; ++i) {
        const double f = offset[i] + static_cast<double>(s + 1) * alpha[i];
        x[static_cast<long>(i)] = kTwoPi * (f - std::floor(f));
      }
      starts.push_back(std::move(x));
    }
  }

  std::vector<std::optional<Converged>> slots(starts.size());
  parallel_for(starts.size(),
               [&](std::size_t s) { slots[s] = newton_from(energy, starts[s], config); });

  SolveSummary sum;
  sum.starts_total = starts.size();
  std::vector<Converged> found;
  for (auto& slot : slots) {
    if (slot) {
      ++sum.converged;
      found.push_back(std::move(*slot));
    } else {
      ++sum.dropped;
    }
  }

  std::sort(found.begin(), found.end(), [](const Converged& a, const Converged& b) {
    if (a.value != b.value) return a.value < b.value;
    return std::lexicographical_compare(a.angles.data(), a.angles.data() + a.angles.size(),
                                        b.angles.data(), b.angles.data() + b.angles.size());
  });

  std::vector<CriticalPoint> out;
  for (auto& c : found) {
    bool dup = false;
    for (const auto& kept : out) {
      if (torus_linf(kept.angles, c.angles) < config.dedup_eps) {
        dup = true;
        break;
      }
    }
    if (dup) {
      ++sum.duplicates;
      continue;
    }
    CriticalPoint p;
    p.angles = std::move(c.angles);
    p.value = c.value;
    p.grad_norm = c.grad_norm;
    const Eigen::MatrixXd h = energy.hessian(p.angles);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    for (long i = 0; i < eig.eigenvalues().size(); ++i) {
      const double lam = eig.eigenvalues()[i];
      if (lam < -kEigTol) ++p.morse_index;
      if (std::abs(lam) <= kEigTol) p.degenerate = true;
    }
    out.push_back(std::move(p));
  }
  if (summary) *summary = sum;
  return out;
}

SpectrumHistogram spectrum(const std::vector<CriticalPoint>& points, std::size_t n) {
  SpectrumHistogram h;
  h.n = n;
  std::vector<double> values;
  values.reserve(points.size());
  for (const auto& p : points) values.push_back(p.value);
  std::sort(values.begin(), values.end());
  for (double v : values) {
    if (!h.entries.empty() && v - h.entries.back().first <= 1e-12)
      ++h.entries.back().second;
    else
      h.entries.emplace_back(v, 1);
  }
  return h;
}

double cri(const SpectrumHistogram& hist, double a, double b, bool distinct_values) {
  if (!(a < b)) throw std::invalid_argument("cri: interval must satisfy a < b");
  long long count = 0;
  for (const auto& [v, mult] : hist.entries)
    if (v > a && v < b) count += distinct_values ? 1 : mult;
  if (count == 0) return kNegInf;
  return std::log(static_cast<double>(count)) / static_cast<double>(hist.n);
}

MorseBoundReport morse_bound_check(const MoleculeSpec& spec, const PairPotential& potential,
                                   const CubeSequence& seq, double a, double b, Coord i_min,
                                   Coord i_max, const SolveConfig& config) {
  if (!(a < b)) throw std::invalid_argument("morse_bound_check: interval must satisfy a < b");
  if (i_min < 1 || i_max < i_min)
    throw std::invalid_argument("morse_bound_check: bad sequence range");

  MorseBoundReport rep;
  for (Coord i = i_min; i <= i_max; ++i) {
    const LatticeWindow w = seq.window(i);
    const WindowEnergy energy = build_energy(w, potential);
    SolveSummary sum;
    const auto points = find_critical_points(energy, config, &sum);
    const auto hist = spectrum(points, w.size());

    long long in_band = 0;
    for (const auto& [v, mult] : hist.entries)
      if (v > a && v < b) in_band += mult;

    const ClassCount classes =
        count_classes_level_band(spec, static_cast<std::int64_t>(w.size()), a, b);

    const double nd = static_cast<double>(w.size());
    MorseBoundRow row;
    row.i = i;
    row.n = w.size();
    row.points_found = static_cast<long long>(points.size());
    row.dropped_starts = sum.dropped;
    row.cri_value = in_band > 0 ? std::log(static_cast<double>(in_band)) / nd : kNegInf;
    // Use the same double-log path as cri when the count fits, so equal
    // counts give bitwise-equal values and an exactly zero margin.
    if (classes.count == 0) {
      row.cohomology_bound = kNegInf;
    } else if (classes.count.fits_slong_p()) {
      row.cohomology_bound =
          std::log(static_cast<double>(classes.count.get_si())) / nd;
    } else {
      row.cohomology_bound = classes.log_count / nd;
    }

    if (row.cri_value == kNegInf && row.cohomology_bound == kNegInf)
      row.margin = 0.0;
    else
      row.margin = row.cri_value - row.cohomology_bound;
    if (row.margin < -1e-9) rep.violations.push_back(i);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace homent
