#include "homent/molecule.hpp"

#include <algorithm>

namespace homent {

MoleculeSpec::MoleculeSpec(int dim, std::vector<CohClass> basis)
    : dim_(dim), basis_(std::move(basis)) {
  if (dim_ < 0) throw std::invalid_argument("molecule dimension must be >= 0");
  if (basis_.empty()) throw std::invalid_argument("molecule basis must be nonempty");

  int zero_degree = 0;
  for (const auto& c : basis_) {
    if (c.degree < 0 || c.degree > dim_)
      throw std::invalid_argument("class degree outside [0, dim]");
    if (c.level.num < 0 || c.level.num > c.level.den)
      throw std::invalid_argument("class level outside [0, 1]");
    if (c.degree == 0) {
      ++zero_degree;
      if (!(c.level == Rational(1, 1)))
        throw std::invalid_argument("the degree-0 class must sit at level 1");
    }
    max_degree_ = std::max(max_degree_, c.degree);
  }
  if (zero_degree != 1)
    throw std::invalid_argument("molecule basis needs exactly one degree-0 class");

  level_den_ = 1;
  for (const auto& c : basis_) level_den_ = std::lcm(level_den_, c.level.den);

  // Collapse identical (degree, level) pairs.
  std::vector<CohClass> sorted = basis_;
  std::sort(sorted.begin(), sorted.end(), [](const CohClass& a, const CohClass& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.level.num * b.level.den < b.level.num * a.level.den;
  });
  for (const auto& c : sorted) {
    if (!types_.empty() && types_.back().degree == c.degree && types_.back().level == c.level) {
      ++types_.back().weight;
    } else {
      ClassType t;
      t.degree = c.degree;
      t.level = c.level;
      t.weight = 1;
      t.level_num = c.level.num * (level_den_ / c.level.den);
      types_.push_back(t);
    }
  }
}

MoleculeSpec MoleculeSpec::circle() {
  return MoleculeSpec(1, {{0, Rational(1, 1)}, {1, Rational(0, 1)}});
}

MoleculeSpec MoleculeSpec::torus() {
  return MoleculeSpec(
      2, {{0, Rational(1, 1)}, {1, Rational(1, 2)}, {1, Rational(1, 2)}, {2, Rational(0, 1)}});
}

bool MoleculeSpec::has_top_class() const {
  for (const auto& c : basis_)
    if (c.degree == dim_) return true;
  return false;
}

}  // namespace homent
