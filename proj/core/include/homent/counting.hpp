#pragma once

// Exact and log-space counting of product cohomology classes over a window
// of n sites, filtered by normalized total degree and mean level windows.
//
// A class over the window assigns one basis class to each site.  Its
// normalized degree is (sum of degrees)/n and its mean level is
// (sum of levels)/n.  Counts are over open windows (l-nu, l+nu) and
// (c-delta, c+delta) with strict endpoint comparisons; level sums are
// compared through exact integer numerators over the spec's common
// denominator so no class is gained or lost to float boundaries.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "homent/molecule.hpp"

namespace homent {

// Integers strictly inside the open real interval (lo, hi).
struct IntWindow {
  long long lo = 0;  // inclusive
  long long hi = -1; // inclusive; empty when lo > hi

  static IntWindow open(double lo_real, double hi_real);
  static IntWindow everything();
  bool contains(long long x) const { return x >= lo && x <= hi; }
  bool empty() const { return lo > hi; }
};

struct ClassCount {
  mpz_class count;           // exact number of classes in the window
  double log_count = 0.0;    // natural log; -inf when count == 0
};

double log_of_mpz(const mpz_class& z);  // -inf for zero

// Exact count of classes with normalized degree in (ell-nu, ell+nu) and
// mean level in (c-delta, c+delta).  nu, delta > 0; n >= 1.
ClassCount count_classes(const MoleculeSpec& spec, std::int64_t n, double ell, double nu,
                         double c, double delta);

// Same count, accumulated in log space with a Stirling-free lgamma table;
// use this when n is large and the exact integer is not needed.
double count_classes_log(const MoleculeSpec& spec, std::int64_t n, double ell, double nu,
                         double c, double delta);

// Exact count of classes of any degree whose mean level is strictly inside
// (c_lo, c_hi).  The endpoints are used verbatim (no midpoint/half-width
// recombination), so callers comparing against per-point level statistics
// share the identical boundary predicate.
ClassCount count_classes_level_band(const MoleculeSpec& spec, std::int64_t n, double c_lo,
                                    double c_hi);

// Number of classes of each exact total degree 0..max_degree*n (the
// coefficient vector of the per-site degree polynomial raised to n).
std::vector<mpz_class> degree_rank_vector(const MoleculeSpec& spec, std::int64_t n);

struct PoincareValue {
  double value = 0.0;         // sum over d >= 1 of t^d * rank_d
  double log_value = 0.0;     // stable natural log of the same (-inf if 0)
  double per_site_log = 0.0;  // log_value / n
  double full_log = 0.0;      // log including the degree-0 term
};

// Degree generating series evaluated at t >= 0.  The degree-complete form
// (full_log) is the submultiplicative one; dropping the degree-0 term
// changes nothing in the per-site limit.
PoincareValue poincare_polynomial(const MoleculeSpec& spec, std::int64_t n, double t);

struct PigeonholeBound {
  double ell_star = 0.0;    // midpoint of the heaviest (degree, level) cell
  double c_star = 0.0;
  double bound = 0.0;       // (1/n)(ln total_rank - ln(k*r*m*omega))
  double max_cell_log = 0.0;  // ln of the heaviest cell's class count
};

// Partition the normalized degree axis [0, m] into r slices and the level
// axis [0,1] into k slices, locate the heaviest cell by exact class count,
// and certify the entropy carried by that cell: the total rank B^n spread
// over at most k*r*m*omega_o slices leaves at least B^n/(k r m omega_o)
// classes in the heaviest one (omega_o = 1 throughout, probe = identity).
PigeonholeBound pigeonhole_lower_bound(const MoleculeSpec& spec, std::int64_t n, int k, int r);

}  // namespace homent
