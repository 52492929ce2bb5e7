#pragma once

// Asymptotic per-site entropy of the class count: the normalized log-count
// over windows around (ell, c) converges, as windows shrink after n grows,
// to the entropy of the maximum-entropy distribution on basis classes whose
// mean degree is ell and mean level is c.  Equivalently, Stirling applied
// to the dominant multinomial term.
//
// The optimizer is the two-multiplier Gibbs family q_t ~ w_t exp(l1 d_t +
// l2 v_t) solved by damped Newton on the dual.  Targets outside the convex
// hull of the (degree, level) pairs are infeasible (-inf).  Targets on a
// proper face force the support onto that face; we detect the minimal face
// within a small tolerance and solve the reduced problem there, which keeps
// corner values exact (a hull vertex carrying one class gives entropy 0).

#include <vector>

#include "homent/molecule.hpp"

namespace homent {

enum class FeasibleRegion { infeasible, vertex, edge, interior };

struct MaxEntResult {
  double value = 0.0;                  // -inf when infeasible
  std::vector<double> class_probs;     // per basis class, sums to ~1
  double residual = 0.0;               // |moment(q) - target|_2
  double prob_sum = 0.0;
  int iterations = 0;
  FeasibleRegion region = FeasibleRegion::infeasible;
};

MaxEntResult solve_max_entropy(const MoleculeSpec& spec, double ell, double c);

// Just the value; -inf outside the feasible hull.
double entropy_asymptotic(const MoleculeSpec& spec, double ell, double c);

struct BettiSumResult {
  double value = 0.0;     // sup over ell of the asymptotic entropy at level c
  double ell_star = 0.0;  // degree moment attaining it
};

// Level-only maximum entropy: the degree constraint is dropped, which is
// the same as maximizing over ell.
BettiSumResult betti_sum_entropy_detail(const MoleculeSpec& spec, double c);
double betti_sum_entropy(const MoleculeSpec& spec, double c);

}  // namespace homent
