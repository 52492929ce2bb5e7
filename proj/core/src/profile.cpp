#include "homent/profile.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

#include "homent/counting.hpp"
#include "homent/maxent.hpp"
#include "homent/parallel.hpp"

namespace homent {

EntropyProfile::EntropyProfile(MoleculeSpec spec, ProfileParams params, std::vector<double> ells,
                               std::vector<double> cs, std::vector<double> values)
    : spec_(std::move(spec)),
      params_(params),
      ells_(std::move(ells)),
      cs_(std::move(cs)),
      values_(std::move(values)) {
  if (ells_.empty() || cs_.empty() || values_.size() != ells_.size() * cs_.size())
    throw std::invalid_argument("profile: grid shape mismatch");
}

double EntropyProfile::value_at(double ell, double c) const {
  if (params_.mode == ProfileMode::asymptotic) return entropy_asymptotic(spec_, ell, c);
  const double lg = count_classes_log(spec_, params_.n, ell, params_.nu, c, params_.delta);
  return lg / static_cast<double>(params_.n);
}

double EntropyProfile::grid_max(double* ell_out, double* c_out) const {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j)
      if (value(i, j) > best) {
        best = value(i, j);
        bi = i;
        bj = j;
      }
  if (ell_out) *ell_out = ells_[bi];
  if (c_out) *c_out = cs_[bj];
  return best;
}

EntropyProfile entropy_profile(const MoleculeSpec& spec, const ProfileParams& params) {
  if (params.resolution < 2) throw std::invalid_argument("profile: resolution must be >= 2");
  if (params.mode == ProfileMode::exact_n) {
    if (params.n < 1) throw std::invalid_argument("profile: n must be >= 1 in exact mode");
    if (params.nu <= 0.0 || params.delta <= 0.0)
      throw std::invalid_argument("profile: nu and delta must be positive");
  }
  const std::size_t res = static_cast<std::size_t>(params.resolution);
  const double ell_hi = static_cast<double>(spec.max_degree());

  std::vector<double> ells(res), cs(res);
  for (std::size_t i = 0; i < res; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(res - 1);
    ells[i] = t * ell_hi;
    cs[i] = t;
  }

  std::vector<double> values(res * res);
  EntropyProfile scratch(spec, params, ells, cs, values);
  parallel_for(res * res, [&](std::size_t idx) {
    const std::size_t i = idx / res, j = idx % res;
    values[idx] = scratch.value_at(ells[i], cs[j]);
  });
  return EntropyProfile(spec, params, std::move(ells), std::move(cs), std::move(values));
}

}  // namespace homent
