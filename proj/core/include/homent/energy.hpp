#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

#include "homent/lattice.hpp"
#include "homent/potential.hpp"

namespace homent {

// Normalized energy of circle-valued site variables over a window:
//   F'(x) = (1/n) ( sum_i V(x_i) + K sum_{(i,j) in E} (1 - cos(x_i - x_j)) )
// where E is the nearest-neighbor edge set inside the window (free
// boundary, no wraparound).  Site order follows the window's sorted point
// order; edges are listed lexicographically.
class WindowEnergy {
 public:
  WindowEnergy(LatticeWindow window, PairPotential potential);

  std::size_t size() const { return n_; }
  const LatticeWindow& window() const { return window_; }
  const PairPotential& potential() const { return potential_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;
  Eigen::VectorXd hessian_vec(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const;

  // Bounds containing every reachable normalized value.
  double lower_bound() const;
  double upper_bound() const;

 private:
  LatticeWindow window_;
  PairPotential potential_;
  std::size_t n_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

// Validates the window (nonempty, dimension 1 or 2) and assembles the edge
// list deterministically.
WindowEnergy build_energy(const LatticeWindow& window, const PairPotential& potential);

}  // namespace homent
