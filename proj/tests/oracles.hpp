#pragma once

// Brute-force reference implementations the fast code is tested against.
// Everything here trades speed for obviousness: plain enumeration and
// one-dimensional shooting, no shared machinery with the library beyond
// the window quantization contract (IntWindow::open on identical bound
// expressions, so both sides agree on which integers are inside).

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "homent/molecule.hpp"

namespace homent::testing {

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

// Count classes by walking every per-site basis assignment (B^n leaves)
// and testing the degree and level sums against the same open windows the
// counting module derives from (ell, nu, c, delta).
mpz_class enumerate_class_count(const MoleculeSpec& spec, std::int64_t n, double ell, double nu,
                                double c, double delta);

// Any degree, mean level strictly inside (c_lo, c_hi).
mpz_class enumerate_level_band_count(const MoleculeSpec& spec, std::int64_t n, double c_lo,
                                     double c_hi);

// Number of assignments per exact total degree, by the same walk.
std::vector<mpz_class> enumerate_degree_ranks(const MoleculeSpec& spec, std::int64_t n);

// Independent stationary-state enumeration for free-end cosine chains with
// positive coupling.  The first gradient equation pins sin(theta_1 -
// theta_2) once theta_1 is fixed, so each critical point corresponds to a
// root of the end-site residual for one of the 2^(n-1) arcsine branch
// patterns; scanning theta_1 and bisecting sign changes per branch
// enumerates them all.  Derivatives are written out longhand here rather
// than taken from the energy module.
struct ShootingPoint {
  std::vector<double> angles;  // wrapped to [0, 2*pi)
  double value = 0.0;          // normalized chain energy
};

std::vector<ShootingPoint> shoot_chain_stationary(int n, double a0, double a1, double b1,
                                                  double a2, double coupling);

}  // namespace homent::testing
