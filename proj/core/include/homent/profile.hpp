#pragma once

#include <cstddef>
#include <vector>

#include "homent/molecule.hpp"

namespace homent {

enum class ProfileMode { asymptotic, exact_n };

struct ProfileParams {
  ProfileMode mode = ProfileMode::asymptotic;
  int resolution = 41;  // grid points per axis, >= 2
  int n = 100;          // window size, exact_n mode only
  double nu = 0.05;     // degree half-width, exact_n mode only
  double delta = 0.05;  // level half-width, exact_n mode only
};

// Grid of entropy values over (degree rate, level) with the generating
// molecule kept alongside, so downstream scans can re-evaluate off-grid
// points in the same mode.  Values use -inf as the infeasibility sentinel.
class EntropyProfile {
 public:
  EntropyProfile(MoleculeSpec spec, ProfileParams params, std::vector<double> ells,
                 std::vector<double> cs, std::vector<double> values);

  const MoleculeSpec& spec() const { return spec_; }
  const ProfileParams& params() const { return params_; }

  std::size_t rows() const { return ells_.size(); }  // degree-rate axis
  std::size_t cols() const { return cs_.size(); }    // level axis
  double ell(std::size_t i) const { return ells_[i]; }
  double c(std::size_t j) const { return cs_[j]; }
  double value(std::size_t i, std::size_t j) const { return values_[i * cs_.size() + j]; }
  void set_value(std::size_t i, std::size_t j, double v) { values_[i * cs_.size() + j] = v; }

  // Re-evaluates an arbitrary point in this profile's mode.
  double value_at(double ell, double c) const;

  // Largest finite grid value and its location; -inf if the grid is all
  // infeasible.
  double grid_max(double* ell_out = nullptr, double* c_out = nullptr) const;

 private:
  MoleculeSpec spec_;
  ProfileParams params_;
  std::vector<double> ells_;
  std::vector<double> cs_;
  std::vector<double> values_;  // row-major, rows = ells
};

EntropyProfile entropy_profile(const MoleculeSpec& spec, const ProfileParams& params);

}  // namespace homent
