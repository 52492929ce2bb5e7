#include "homent/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace homent {

WindowEnergy::WindowEnergy(LatticeWindow window, PairPotential potential)
    : window_(std::move(window)), potential_(potential) {
  if (window_.empty()) throw std::invalid_argument("energy window must be nonempty");
  if (window_.dim() != 1 && window_.dim() != 2)
    throw std::invalid_argument("energy supports lattice dimension 1 or 2");
  if (potential_.coupling < 0.0) throw std::invalid_argument("coupling must be >= 0");
  n_ = window_.size();

  // Nearest neighbors in the +axis direction; points are lex sorted, so the
  // resulting (i, j) pairs come out lexicographic without a final sort.
  const std::size_t d = static_cast<std::size_t>(window_.dim());
  std::vector<Coord> nbr(d);
  for (std::size_t i = 0; i < n_; ++i) {
    auto p = window_.point(i);
    for (std::size_t a = 0; a < d; ++a) {
      std::copy(p.begin(), p.end(), nbr.begin());
      ++nbr[a];
      const std::size_t j = window_.index_of(nbr);
      if (j != LatticeWindow::npos) edges_.emplace_back(i, j);
    }
  }
  std::sort(edges_.begin(), edges_.end());
}

double WindowEnergy::value(const Eigen::VectorXd& x) const {
  const double K = potential_.coupling;
  double total = 0.0;
  for (std::size_t i = 0; i < n_; ++i) total += potential_.on_site.value(x[static_cast<long>(i)]);
  for (const auto& [i, j] : edges_)
    total += K * (1.0 - std::cos(x[static_cast<long>(i)] - x[static_cast<long>(j)]));
  return total / static_cast<double>(n_);
}

Eigen::VectorXd WindowEnergy::gradient(const Eigen::VectorXd& x) const {
  const double K = potential_.coupling;
  Eigen::VectorXd g(static_cast<long>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    g[static_cast<long>(i)] = potential_.on_site.deriv(x[static_cast<long>(i)]);
  for (const auto& [i, j] : edges_) {
    const double s = K * std::sin(x[static_cast<long>(i)] - x[static_cast<long>(j)]);
    g[static_cast<long>(i)] += s;
    g[static_cast<long>(j)] -= s;
  }
  return g / static_cast<double>(n_);
}

Eigen::MatrixXd WindowEnergy::hessian(const Eigen::VectorXd& x) const {
  const double K = potential_.coupling;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<long>(n_), static_cast<long>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    h(static_cast<long>(i), static_cast<long>(i)) =
        potential_.on_site.deriv2(x[static_cast<long>(i)]);
  for (const auto& [i, j] : edges_) {
    const double c = K * std::cos(x[static_cast<long>(i)] - x[static_cast<long>(j)]);
    h(static_cast<long>(i), static_cast<long>(i)) += c;
    h(static_cast<long>(j), static_cast<long>(j)) += c;
    h(static_cast<long>(i), static_cast<long>(j)) -= c;
    h(static_cast<long>(j), static_cast<long>(i)) -= c;
  }
  return h / static_cast<double>(n_);
}

Eigen::VectorXd WindowEnergy::hessian_vec(const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& v) const {
  const double K = potential_.coupling;
  Eigen::VectorXd out(static_cast<long>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    out[static_cast<long>(i)] =
        potential_.on_site.deriv2(x[static_cast<long>(i)]) * v[static_cast<long>(i)];
  for (const auto& [i, j] : edges_) {
    const double c = K * std::cos(x[static_cast<long>(i)] - x[static_cast<long>(j)]);
    const double dv = v[static_cast<long>(i)] - v[static_cast<long>(j)];
    out[static_cast<long>(i)] += c * dv;
    out[static_cast<long>(j)] -= c * dv;
  }
  return out / static_cast<double>(n_);
}

double WindowEnergy::lower_bound() const {
  // Attained: park every site at the on-site minimum, all couplings vanish.
  return potential_.on_site_min();
}

double WindowEnergy::upper_bound() const {
  return potential_.on_site_max() + 2.0 * potential_.coupling *
                                        static_cast<double>(edges_.size()) /
                                        static_cast<double>(n_);
}

WindowEnergy build_energy(const LatticeWindow& window, const PairPotential& potential) {
  return WindowEnergy(window, potential);
}

}  // namespace homent
