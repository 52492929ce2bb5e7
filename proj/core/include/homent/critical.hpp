#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "homent/energy.hpp"
#include "homent/lattice.hpp"
#include "homent/molecule.hpp"

namespace homent {

struct CriticalPoint {
  Eigen::VectorXd angles;   // each component in [0, 2pi)
  double value = 0.0;       // normalized energy at the point
  double grad_norm = 0.0;   // residual of the converged gradient
  int morse_index = 0;      // negative Hessian eigenvalues
  bool degenerate = false;  // some eigenvalue within tolerance of zero
};

struct SolveConfig {
  int starts = 256;             // quasi-random starts on top of warm starts
  double tol = 1e-10;           // gradient norm target
  int max_iter = 80;
  double dedup_eps = 1e-5;      // torus l-infinity dedup distance
  std::uint64_t seed = 1234;
  std::size_t site_cap = 12;    // refuse larger windows
  std::size_t warm_cap = 4096;  // cap on uncoupled product warm starts
};

struct SolveSummary {
  std::size_t starts_total = 0;
  std::size_t converged = 0;
  std::size_t dropped = 0;  // starts that never reached the tolerance
  std::size_t duplicates = 0;
};

// Multi-start damped Newton on the torus.  Warm starts are the Cartesian
// products of the on-site potential's critical angles (exact stationary
// points when the coupling is zero); quasi-random starts cover whatever
// those miss.  Results are deduplicated and sorted by (value, angles).
std::vector<CriticalPoint> find_critical_points(const WindowEnergy& energy,
                                                const SolveConfig& config = {},
                                                SolveSummary* summary = nullptr);

struct SpectrumHistogram {
  std::vector<std::pair<double, int>> entries;  // (value, multiplicity), ascending
  std::size_t n = 0;                            // window size
};

SpectrumHistogram spectrum(const std::vector<CriticalPoint>& points, std::size_t n);

// (1/n) ln of the number of critical points with value strictly inside
// (a, b); -inf when there are none.  distinct_values counts merged values
// instead of points.  Throws when a >= b.
double cri(const SpectrumHistogram& hist, double a, double b, bool distinct_values = false);

struct MorseBoundRow {
  Coord i = 0;                    // sequence index
  std::size_t n = 0;              // window size
  double cri_value = 0.0;         // (1/n) ln #points with value in (a, b)
  double cohomology_bound = 0.0;  // (1/n) ln #classes with mean level in (a, b)
  double margin = 0.0;            // cri_value - cohomology_bound
  long long points_found = 0;
  std::size_t dropped_starts = 0;
};

struct MorseBoundReport {
  std::vector<MorseBoundRow> rows;
  std::vector<Coord> violations;  // sequence indices with margin < -1e-9
  bool passed() const { return violations.empty(); }
};

// Compares the critical spectrum of the windowed energy against the count
// of cohomology classes in the same open value band, window by window.
// With zero coupling both sides count the same binomial families through
// the same log evaluation, so the margin is exactly >= 0; with coupling a
// negative margin signals missed critical points, not a broken bound.
MorseBoundReport morse_bound_check(const MoleculeSpec& spec, const PairPotential& potential,
                                   const CubeSequence& seq, double a, double b, Coord i_min,
                                   Coord i_max, const SolveConfig& config = {});

}  // namespace homent
