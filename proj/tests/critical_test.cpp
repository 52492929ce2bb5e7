#include "homent/critical.hpp"

#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "homent/energy.hpp"
#include "homent/lattice.hpp"
#include "homent/molecule.hpp"
#include "homent/potential.hpp"
#include "oracles.hpp"

using namespace homent;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int euler_sum(const std::vector<CriticalPoint>& pts) {
  int s = 0;
  for (const auto& p : pts) s += (p.morse_index % 2 == 0) ? 1 : -1;
  return s;
}

double torus_gap(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double m = 0.0;
  for (long i = 0; i < a.size(); ++i) {
    double d = std::fabs(a[i] - b[i]);
    d = std::min(d, 2.0 * M_PI - d);
    m = std::max(m, d);
  }
  return m;
}

}  // namespace

TEST_CASE("a single site recovers the on site landscape") {
  const auto e = build_energy(LatticeWindow::interval(0, 0), cosine_well(0.9));
  const auto pts = find_critical_points(e);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].value == 0.0);
  CHECK(pts[0].morse_index == 0);
  CHECK(pts[1].value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pts[1].morse_index == 1);
  for (const auto& p : pts) {
    CHECK(p.grad_norm <= 1e-10);
    CHECK(!p.degenerate);
  }
  const auto hist = spectrum(pts, 1);
  CHECK(cri(hist, -0.5, 0.5) == 0.0);  // ln 1 / 1
}

TEST_CASE("weakly coupled pair matches the analytic solution") {
  // summing the two stationarity equations forces sin t2 = -sin t1, which
  // leaves exactly the four product points for K < 1/4
  const double K = 0.05;
  const auto e = build_energy(LatticeWindow::interval(0, 1), cosine_well(K));
  SolveSummary sum;
  const auto pts = find_critical_points(e, {}, &sum);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].value == 0.0);
  CHECK(pts[0].morse_index == 0);
  CHECK(pts[1].value == doctest::Approx((1.0 + 2.0 * K) / 2.0).epsilon(1e-12));
  CHECK(pts[1].morse_index == 1);
  CHECK(pts[2].value == doctest::Approx((1.0 + 2.0 * K) / 2.0).epsilon(1e-12));
  CHECK(pts[2].morse_index == 1);
  CHECK(pts[3].value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pts[3].morse_index == 2);
  CHECK(euler_sum(pts) == 0);

  CHECK(sum.starts_total == sum.converged + sum.dropped);
  CHECK(sum.converged - sum.duplicates == pts.size());
}

TEST_CASE("decoupled chains enumerate the full product spectrum") {
  const auto e = build_energy(LatticeWindow::interval(0, 2), cosine_well(0.0));
  const auto pts = find_critical_points(e);
  REQUIRE(pts.size() == 8);
  CHECK(euler_sum(pts) == 0);
  for (const auto& p : pts) {
    int flipped = 0;
    for (long i = 0; i < p.angles.size(); ++i)
      if (std::fabs(p.angles[i] - M_PI) < 1e-8) ++flipped;
    CHECK(p.value == static_cast<double>(flipped) * 1.0 / 3.0);
    CHECK(p.morse_index == flipped);
  }
  const auto hist = spectrum(pts, 3);
  REQUIRE(hist.entries.size() == 4);
  for (int k = 0; k <= 3; ++k) {
    CHECK(hist.entries[static_cast<std::size_t>(k)].first ==
          static_cast<double>(k) * 1.0 / 3.0);
    CHECK(hist.entries[static_cast<std::size_t>(k)].second == binom(3, k));
  }
}

TEST_CASE("spectral counting function on the frozen chain") {
  const auto e = build_energy(LatticeWindow::interval(0, 2), cosine_well(0.0));
  const auto hist = spectrum(find_critical_points(e), 3);
  CHECK(cri(hist, 0.25, 0.42) == std::log(3.0) / 3.0);
  CHECK(cri(hist, -1.0, 2.0) == std::log(8.0) / 3.0);
  CHECK(cri(hist, -1.0, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(cri(hist, 0.4, 0.45) == kNegInf);
  CHECK(cri(hist, -1.0, 2.0, true) == std::log(4.0) / 3.0);  // distinct values
  CHECK_THROWS_AS(cri(hist, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(cri(hist, 0.7, 0.2), std::invalid_argument);
}

TEST_CASE("coupled triple agrees with the shooting oracle") {
  const double K = 0.05;
  const auto e = build_energy(LatticeWindow::interval(0, 2), cosine_well(K));
  const auto pts = find_critical_points(e);
  const auto oracle = testing::shoot_chain_stationary(3, 0.5, -0.5, 0.0, 0.0, K);
  REQUIRE(pts.size() == oracle.size());
  CHECK(euler_sum(pts) == 0);
  for (const auto& want : oracle) {
    Eigen::VectorXd w(3);
    for (int i = 0; i < 3; ++i) w[i] = want.angles[static_cast<std::size_t>(i)];
    bool matched = false;
    for (const auto& p : pts)
      if (torus_gap(p.angles, w) < 1e-6) {
        CHECK(std::fabs(p.value - want.value) < 1e-9);
        matched = true;
        break;
      }
    CHECK(matched);
  }
}

TEST_CASE("spectra do not depend on where the window sits") {
  const double K = 0.05;
  const auto here = spectrum(
      find_critical_points(build_energy(LatticeWindow::interval(0, 2), cosine_well(K))), 3);
  const auto there = spectrum(
      find_critical_points(build_energy(LatticeWindow::interval(7, 9), cosine_well(K))), 3);
  REQUIRE(here.entries.size() == there.entries.size());
  for (std::size_t i = 0; i < here.entries.size(); ++i) {
    CHECK(here.entries[i].first == there.entries[i].first);
    CHECK(here.entries[i].second == there.entries[i].second);
  }
}

TEST_CASE("more starts discover nothing new") {
  const auto e = build_energy(LatticeWindow::interval(0, 1), cosine_well(0.05));
  SolveConfig big;
  big.starts = 512;
  const auto base = find_critical_points(e);
  const auto more = find_critical_points(e, big);
  REQUIRE(base.size() == more.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(base[i].value == doctest::Approx(more[i].value).epsilon(1e-12));
    CHECK(base[i].morse_index == more[i].morse_index);
  }
}

TEST_CASE("oversized windows are refused") {
  const auto e = build_energy(LatticeWindow::interval(0, 12), cosine_well(0.0));
  CHECK_THROWS_AS(find_critical_points(e), std::invalid_argument);
}

TEST_CASE("decoupled morse bound margins vanish identically") {
  const auto rep = morse_bound_check(MoleculeSpec::circle(), cosine_well(0.0), CubeSequence(1),
                                     0.45, 0.55, 2, 5);
  CHECK(rep.passed());
  REQUIRE(rep.rows.size() == 4);
  for (const auto& row : rep.rows) {
    CHECK(row.n == 2 * static_cast<std::size_t>(row.i));
    CHECK(row.points_found == (1LL << row.n));
    CHECK(row.margin == 0.0);  // same integer count through the same log
  }
  // every even n has its central binomial family inside the band
  CHECK(rep.rows[0].cri_value == std::log(6.0) / 4.0);
  CHECK(rep.rows[3].cri_value == std::log(252.0) / 10.0);
}

TEST_CASE("narrow low band is empty on both sides") {
  const auto rep = morse_bound_check(MoleculeSpec::circle(), cosine_well(0.0), CubeSequence(1),
                                     0.0, 0.05, 2, 3);
  CHECK(rep.passed());
  for (const auto& row : rep.rows) {
    CHECK(row.cri_value == kNegInf);
    CHECK(row.cohomology_bound == kNegInf);
    CHECK(row.margin == 0.0);
  }
}

TEST_CASE("weak coupling keeps the center band populated") {
  const auto rep = morse_bound_check(MoleculeSpec::circle(), cosine_well(0.05), CubeSequence(1),
                                     0.45, 0.55, 2, 3);
  REQUIRE(rep.rows.size() == 2);
  for (const auto& row : rep.rows) {
    // warm starts land exactly on the 2^n product points, which stay
    // stationary for every K because all angle differences are 0 or pi
    CHECK(row.points_found >= (1LL << row.n));
    CHECK(row.cri_value > kNegInf);
  }
  CHECK_THROWS_AS(morse_bound_check(MoleculeSpec::circle(), cosine_well(0.0), CubeSequence(1),
                                    0.5, 0.5, 1, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(morse_bound_check(MoleculeSpec::circle(), cosine_well(0.0), CubeSequence(1),
                                    0.1, 0.2, 3, 2),
                  std::invalid_argument);
}
