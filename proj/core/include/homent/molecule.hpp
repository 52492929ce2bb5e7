#pragma once

// Per-site model data: a finite basis of cohomology classes for the factor
// manifold, each carrying an integer degree and a rational level in [0,1].
// The level of a class is where it first appears along the sublevel sets of
// the reference function on the factor; products over a window add degrees
// and average levels sitewise.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace homent {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

struct CohClass {
  int degree = 0;
  Rational level;
};

// Distinct (degree, level) pairs with multiplicities; counting and
// asymptotics only ever see classes through these.
struct ClassType {
  int degree = 0;
  Rational level;
  int weight = 1;          // how many basis classes share this pair
  std::int64_t level_num = 0;  // level scaled by the spec's common denominator
};

class MoleculeSpec {
public:
  // dim: dimension m of the factor manifold.  basis must contain exactly one
  // degree-0 class and it must sit at level 1 (the unit class); degrees lie
  // in [0, m] and levels in [0,1].
  MoleculeSpec(int dim, std::vector<CohClass> basis);

  static MoleculeSpec circle();  // S^1 with a two-point height function
  static MoleculeSpec torus();   // T^2, unit + two middle classes + top

  int dim_m() const { return dim_; }
  int total_rank() const { return static_cast<int>(basis_.size()); }
  int max_degree() const { return max_degree_; }
  std::int64_t level_denominator() const { return level_den_; }
  const std::vector<CohClass>& basis() const { return basis_; }
  const std::vector<ClassType>& types() const { return types_; }

  // A top-degree class marks the factor as orientable over the coefficient
  // field; some degenerate fixtures legitimately lack one.
  bool has_top_class() const;

  bool operator==(const MoleculeSpec&) const = default;

private:
  int dim_;
  std::vector<CohClass> basis_;
  std::vector<ClassType> types_;
  std::int64_t level_den_ = 1;
  int max_degree_ = 0;
};

}  // namespace homent
