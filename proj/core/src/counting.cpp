#include "homent/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace homent {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct TypeView {
  long long d = 0;  // per-site degree
  long long u = 0;  // per-site level numerator over the common denominator
  long long w = 1;  // multiplicity of the (degree, level) pair
};

std::vector<TypeView> type_views(const MoleculeSpec& spec) {
  std::vector<TypeView> out;
  out.reserve(spec.types().size());
  for (const auto& t : spec.types())
    out.push_back({t.degree, t.level_num, t.weight});
  return out;
}

// Per-suffix per-site min/max of degree and level numerator, used to prune
// composition subtrees that cannot reach the target windows.
struct SuffixBounds {
  std::vector<long long> dmin, dmax, umin, umax;
  explicit SuffixBounds(const std::vector<TypeView>& types) {
    const std::size_t T = types.size();
    dmin.assign(T + 1, std::numeric_limits<long long>::max());
    dmax.assign(T + 1, std::numeric_limits<long long>::min());
    umin = dmin;
    umax = dmax;
    for (std::size_t t = T; t-- > 0;) {
      dmin[t] = std::min(dmin[t + 1], types[t].d);
      dmax[t] = std::max(dmax[t + 1], types[t].d);
      umin[t] = std::min(umin[t + 1], types[t].u);
      umax[t] = std::max(umax[t + 1], types[t].u);
    }
  }
};

bool ranges_touch(long long lo, long long hi, const IntWindow& w) {
  return !(hi < w.lo || lo > w.hi);
}

// Exact recursion.  coeff arrives as the multinomial prefix
// n! / (k_0! ... k_{t-1}! (n - k_0 - ... - k_{t-1})!) * prod w_s^{k_s}
// restricted to the first t types; the loop extends it one type at a time
// via C(R, k) * w^k updated incrementally.
void recurse_exact(const std::vector<TypeView>& types, const SuffixBounds& sb, std::size_t t,
                   long long R, long long D, long long V, const mpz_class& coeff,
                   const IntWindow& degw, const IntWindow& levw, mpz_class& total) {
  const std::size_t T = types.size();
  if (!ranges_touch(D + sb.dmin[t] * R, D + sb.dmax[t] * R, degw)) return;
  if (!ranges_touch(V + sb.umin[t] * R, V + sb.umax[t] * R, levw)) return;
  if (t + 1 == T) {
    const long long Df = D + types[t].d * R;
    const long long Vf = V + types[t].u * R;
    if (degw.contains(Df) && levw.contains(Vf)) {
      mpz_class term;
      mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(types[t].w),
                    static_cast<unsigned long>(R));
      total += coeff * term;
    }
    return;
  }
  mpz_class cur = coeff;  // k = 0 term: C(R,0) * w^0
  for (long long k = 0;; ++k) {
    recurse_exact(types, sb, t + 1, R - k, D + types[t].d * k, V + types[t].u * k, cur, degw,
                  levw, total);
    if (k == R) break;
    // C(R,k+1) = C(R,k) (R-k)/(k+1); fold in one more factor of w.
    cur *= static_cast<long>((R - k) * types[t].w);
    mpz_divexact_ui(cur.get_mpz_t(), cur.get_mpz_t(), static_cast<unsigned long>(k + 1));
  }
}

// lgamma(x+1) table so leaf coefficients are pure lookups.
std::vector<double> lfact_table(long long n) {
  std::vector<double> f(static_cast<std::size_t>(n) + 1, 0.0);
  for (long long i = 1; i <= n; ++i)
    f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i - 1)] + std::log(static_cast<double>(i));
  return f;
}

struct LogSum {
  double max = kNegInf;
  double acc = 0.0;  // sum of exp(x - max)
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max) {
      acc += std::exp(x - max);
    } else {
      acc = acc * std::exp(max - x) + 1.0;
      max = x;
    }
  }
  double value() const { return max == kNegInf ? kNegInf : max + std::log(acc); }
};

template <class Leaf>
void recurse_log(const std::vector<TypeView>& types, const SuffixBounds& sb, std::size_t t,
                 long long R, long long D, long long V, double logcoeff,
                 const std::vector<double>& lf, const IntWindow& degw, const IntWindow& levw,
                 Leaf&& leaf) {
  const std::size_t T = types.size();
  if (!ranges_touch(D + sb.dmin[t] * R, D + sb.dmax[t] * R, degw)) return;
  if (!ranges_touch(V + sb.umin[t] * R, V + sb.umax[t] * R, levw)) return;
  if (t + 1 == T) {
    const long long Df = D + types[t].d * R;
    const long long Vf = V + types[t].u * R;
    if (degw.contains(Df) && levw.contains(Vf)) {
      const double lc = logcoeff - lf[static_cast<std::size_t>(R)] +
                        static_cast<double>(R) * std::log(static_cast<double>(types[t].w));
      leaf(Df, Vf, lc);
    }
    return;
  }
  const double lw = std::log(static_cast<double>(types[t].w));
  for (long long k = 0; k <= R; ++k) {
    const double lc = logcoeff - lf[static_cast<std::size_t>(k)] + static_cast<double>(k) * lw;
    recurse_log(types, sb, t + 1, R - k, D + types[t].d * k, V + types[t].u * k, lc, lf, degw,
                levw, leaf);
  }
}

void validate_window_args(std::int64_t n, double nu, double delta) {
  if (n < 1) throw std::invalid_argument("count_classes: n must be >= 1");
  if (!(nu > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("count_classes: window half-widths must be positive");
}

}  // namespace

IntWindow IntWindow::open(double lo_real, double hi_real) {
  IntWindow w;
  if (!(lo_real < hi_real)) {
    w.lo = 0;
    w.hi = -1;
    return w;
  }
  const double cap = 4.0e18;
  const double lo_c = std::max(lo_real, -cap);
  const double hi_c = std::min(hi_real, cap);
  // smallest integer strictly greater than lo; largest strictly less than hi
  w.lo = static_cast<long long>(std::floor(lo_c)) + 1;
  w.hi = static_cast<long long>(std::ceil(hi_c)) - 1;
  return w;
}

IntWindow IntWindow::everything() {
  IntWindow w;
  w.lo = std::numeric_limits<long long>::min() / 4;
  w.hi = std::numeric_limits<long long>::max() / 4;
  return w;
}

double log_of_mpz(const mpz_class& z) {
  if (z == 0) return kNegInf;
  signed long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::abs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

ClassCount count_classes(const MoleculeSpec& spec, std::int64_t n, double ell, double nu,
                         double c, double delta) {
  validate_window_args(n, nu, delta);
  const auto types = type_views(spec);
  const SuffixBounds sb(types);
  const double nd = static_cast<double>(n);
  const double Ld = static_cast<double>(spec.level_denominator());
  const IntWindow degw = IntWindow::open((ell - nu) * nd, (ell + nu) * nd);
  const IntWindow levw = IntWindow::open((c - delta) * Ld * nd, (c + delta) * Ld * nd);

  ClassCount out;
  out.count = 0;
  if (!degw.empty() && !levw.empty())
    recurse_exact(types, sb, 0, n, 0, 0, mpz_class(1), degw, levw, out.count);
  out.log_count = log_of_mpz(out.count);
  return out;
}

double count_classes_log(const MoleculeSpec& spec, std::int64_t n, double ell, double nu,
                         double c, double delta) {
  validate_window_args(n, nu, delta);
  const auto types = type_views(spec);
  const SuffixBounds sb(types);
  const double nd = static_cast<double>(n);
  const double Ld = static_cast<double>(spec.level_denominator());
  const IntWindow degw = IntWindow::open((ell - nu) * nd, (ell + nu) * nd);
  const IntWindow levw = IntWindow::open((c - delta) * Ld * nd, (c + delta) * Ld * nd);
  if (degw.empty() || levw.empty()) return kNegInf;

  const auto lf = lfact_table(n);
  LogSum sum;
  recurse_log(types, sb, 0, n, 0, 0, lf[static_cast<std::size_t>(n)], lf, degw, levw,
              [&](long long, long long, double lc) { sum.add(lc); });
  return sum.value();
}

ClassCount count_classes_level_band(const MoleculeSpec& spec, std::int64_t n, double c_lo,
                                    double c_hi) {
  if (n < 1) throw std::invalid_argument("count_classes_level_band: n must be >= 1");
  if (!(c_lo < c_hi))
    throw std::invalid_argument("count_classes_level_band: interval must be nonempty");
  const auto types = type_views(spec);
  const SuffixBounds sb(types);
  const double nd = static_cast<double>(n);
  const double Ld = static_cast<double>(spec.level_denominator());
  const IntWindow degw = IntWindow::everything();
  const IntWindow levw = IntWindow::open(c_lo * Ld * nd, c_hi * Ld * nd);

  ClassCount out;
  out.count = 0;
  if (!levw.empty())
    recurse_exact(types, sb, 0, n, 0, 0, mpz_class(1), degw, levw, out.count);
  out.log_count = log_of_mpz(out.count);
  return out;
}

std::vector<mpz_class> degree_rank_vector(const MoleculeSpec& spec, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("degree_rank_vector: n must be >= 1");
  const long long maxd = spec.max_degree();
  std::vector<mpz_class> acc(1, mpz_class(1));
  // repeated sparse multiplication by the per-site degree polynomial
  for (std::int64_t s = 0; s < n; ++s) {
    std::vector<mpz_class> next(acc.size() + static_cast<std::size_t>(maxd), mpz_class(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] == 0) continue;
      for (const auto& t : spec.types())
        next[i + static_cast<std::size_t>(t.degree)] += acc[i] * t.weight;
    }
    acc = std::move(next);
  }
  return acc;
}

PoincareValue poincare_polynomial(const MoleculeSpec& spec, std::int64_t n, double t) {
  if (n < 1) throw std::invalid_argument("poincare_polynomial: n must be >= 1");
  if (!(t >= 0.0)) throw std::invalid_argument("poincare_polynomial: t must be >= 0");

  // Per-site degree polynomial S(t); the single degree-0 class contributes 1.
  double S = 0.0;
  for (const auto& cls : spec.basis()) S += std::pow(t, static_cast<double>(cls.degree));

  PoincareValue out;
  const double nd = static_cast<double>(n);
  const double logS = std::log(S);
  out.full_log = nd * logS;
  if (S <= 1.0) {
    // Only the degree-0 term survives: sum over d >= 1 is empty.
    out.value = 0.0;
    out.log_value = kNegInf;
    out.per_site_log = kNegInf;
    return out;
  }
  // ln(S^n - 1), evaluated without forming S^n
  out.log_value = nd * logS + std::log1p(-std::exp(-nd * logS));
  out.per_site_log = out.log_value / nd;
  out.value = out.log_value < 700.0 ? std::exp(out.log_value)
                                    : std::numeric_limits<double>::infinity();
  // For small n the direct form is exact in doubles; prefer it.
  if (nd * logS < 52.0 * std::log(2.0)) out.value = std::pow(S, nd) - 1.0;
  return out;
}

PigeonholeBound pigeonhole_lower_bound(const MoleculeSpec& spec, std::int64_t n, int k, int r) {
  if (n < 1) throw std::invalid_argument("pigeonhole_lower_bound: n must be >= 1");
  if (k < 1 || r < 1) throw std::invalid_argument("pigeonhole_lower_bound: k, r must be >= 1");

  const auto types = type_views(spec);
  const SuffixBounds sb(types);
  const auto lf = lfact_table(n);
  const double nd = static_cast<double>(n);
  const double Ld = static_cast<double>(spec.level_denominator());
  const long long m = spec.max_degree();

  // One log-space accumulator per (degree slice, level slice) cell.
  std::vector<LogSum> cells(static_cast<std::size_t>(k) * static_cast<std::size_t>(r));
  const IntWindow all = IntWindow::everything();
  recurse_log(types, sb, 0, n, 0, 0, lf[static_cast<std::size_t>(n)], lf, all, all,
              [&](long long D, long long V, double lc) {
                int jd = 0;
                if (m > 0) {
                  const double lnorm = static_cast<double>(D) / (nd * static_cast<double>(m));
                  jd = std::min(r - 1, static_cast<int>(lnorm * r));
                }
                const double cnorm = static_cast<double>(V) / (Ld * nd);
                const int jc = std::min(k - 1, static_cast<int>(cnorm * k));
                cells[static_cast<std::size_t>(jc) * static_cast<std::size_t>(r) +
                      static_cast<std::size_t>(jd)]
                    .add(lc);
              });

  std::size_t best = 0;
  double best_log = kNegInf;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double v = cells[i].value();
    if (v > best_log) {
      best_log = v;
      best = i;
    }
  }

  PigeonholeBound out;
  const int jc = static_cast<int>(best) / r;
  const int jd = static_cast<int>(best) % r;
  out.ell_star = m > 0 ? (jd + 0.5) * static_cast<double>(m) / r : 0.0;
  out.c_star = (jc + 0.5) / static_cast<double>(k);
  out.max_cell_log = best_log;
  const double slice_const = static_cast<double>(k) * static_cast<double>(r) *
                             static_cast<double>(std::max<long long>(1, m));
  out.bound = (nd * std::log(static_cast<double>(spec.total_rank())) - std::log(slice_const)) / nd;
  return out;
}

}  // namespace homent
