#include "homent/counting.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "homent/molecule.hpp"
#include "oracles.hpp"

using namespace homent;
using homent::testing::binomial;
using homent::testing::enumerate_class_count;
using homent::testing::enumerate_degree_ranks;
using homent::testing::enumerate_level_band_count;

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;

MoleculeSpec mixed_spec() {
  return MoleculeSpec(2, {{0, Rational(1, 1)},
                          {1, Rational(1, 2)},
                          {1, Rational(1, 3)},
                          {2, Rational(0, 1)}});
}

// Distance of x from the nearest integer.
double int_gap(double x) { return std::fabs(x - std::round(x)); }

}  // namespace

TEST_CASE("open integer windows clip strictly") {
  const auto w = IntWindow::open(0.8, 3.2);
  CHECK(w.lo == 1);
  CHECK(w.hi == 3);
  // exact endpoints are excluded
  const auto x = IntWindow::open(1.0, 3.0);
  CHECK(x.lo == 2);
  CHECK(x.hi == 2);
  CHECK(IntWindow::open(2.0, 2.0).empty());
  CHECK(IntWindow::open(3.0, 1.0).empty());
  CHECK(IntWindow::everything().contains(1LL << 40));
  CHECK(IntWindow::everything().contains(-(1LL << 40)));
}

TEST_CASE("four site circle counts match the subset picture") {
  const auto s1 = MoleculeSpec::circle();
  // degrees strictly inside (0.8, 3.2), level sums strictly inside the same
  CHECK(count_classes(s1, 4, 0.5, 0.3, 0.5, 0.3).count == 14);
  // windows wide enough to cover everything count the full rank
  CHECK(count_classes(s1, 4, 0.5, 2.0, 0.5, 2.0).count == 16);
  // only the all-ones assignment has degree near 1 and level near 0
  CHECK(count_classes(s1, 4, 1.0, 0.1, 0.0, 0.1).count == 1);
  // the log view agrees with the exact integer
  CHECK(count_classes_log(s1, 4, 0.5, 0.3, 0.5, 0.3) ==
        doctest::Approx(std::log(14.0)).epsilon(1e-12));
}

TEST_CASE("composition DP equals full assignment enumeration") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto check_spec = [&](const MoleculeSpec& spec, std::int64_t n_max, int tuples) {
    std::uniform_int_distribution<std::int64_t> n_dist(1, n_max);
    const double m = static_cast<double>(spec.max_degree());
    for (int t = 0; t < tuples; ++t) {
      const std::int64_t n = n_dist(rng);
      const double ell = -0.2 + (m + 0.4) * unit(rng);
      const double nu = 0.01 + 0.7 * unit(rng);
      const double c = -0.1 + 1.2 * unit(rng);
      const double delta = 0.01 + 0.7 * unit(rng);
      const mpz_class expect = enumerate_class_count(spec, n, ell, nu, c, delta);
      const ClassCount got = count_classes(spec, n, ell, nu, c, delta);
      CHECK(got.count == expect);
      if (expect > 0)
        CHECK(count_classes_log(spec, n, ell, nu, c, delta) ==
              doctest::Approx(log_of_mpz(expect)).epsilon(1e-10));
      else
        CHECK(count_classes_log(spec, n, ell, nu, c, delta) ==
              -std::numeric_limits<double>::infinity());
    }
  };

  check_spec(MoleculeSpec::circle(), 16, 60);
  check_spec(MoleculeSpec::torus(), 8, 25);
  check_spec(mixed_spec(), 6, 15);
}

TEST_CASE("log space counting tracks the exact count at larger sizes") {
  const auto s1 = MoleculeSpec::circle();
  const auto t2 = MoleculeSpec::torus();
  for (std::int64_t n : {100, 300}) {
    const ClassCount exact = count_classes(s1, n, 0.5, 0.07, 0.5, 0.07);
    REQUIRE(exact.count > 0);
    CHECK(count_classes_log(s1, n, 0.5, 0.07, 0.5, 0.07) ==
          doctest::Approx(exact.log_count).epsilon(1e-10));
  }
  const ClassCount exact2 = count_classes(t2, 60, 1.0, 0.11, 0.5, 0.09);
  REQUIRE(exact2.count > 0);
  CHECK(count_classes_log(t2, 60, 1.0, 0.11, 0.5, 0.09) ==
        doctest::Approx(exact2.log_count).epsilon(1e-10));
}

TEST_CASE("counts grow as the windows widen") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto t2 = MoleculeSpec::torus();
  for (int t = 0; t < 30; ++t) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 40);
    const double ell = 2.0 * unit(rng);
    const double c = unit(rng);
    const double nu = 0.02 + 0.3 * unit(rng);
    const double delta = 0.02 + 0.3 * unit(rng);
    const mpz_class base = count_classes(t2, n, ell, nu, c, delta).count;
    CHECK(count_classes(t2, n, ell, nu * 2.0, c, delta).count >= base);
    CHECK(count_classes(t2, n, ell, nu, c, delta * 2.0).count >= base);
    CHECK(count_classes(t2, n, ell, nu * 2.0, c, delta * 2.0).count >= base);
  }
}

TEST_CASE("disjoint windows multiply into the averaged window") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto run_pairs = [&](const MoleculeSpec& spec, std::int64_t n_max, int pairs) {
    const double m = static_cast<double>(spec.max_degree());
    const double L = static_cast<double>(spec.level_denominator());
    int done = 0;
    int attempts = 0;
    while (done < pairs && attempts < pairs * 200) {
      ++attempts;
      const std::int64_t n1 = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n_max));
      const std::int64_t n2 = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n_max));
      const double l1 = m * unit(rng), l2 = m * unit(rng);
      const double c1 = unit(rng), c2 = unit(rng);
      const double nu = 0.05 + 0.45 * unit(rng);
      const double delta = 0.05 + 0.45 * unit(rng);
      const double alpha = static_cast<double>(n1) / static_cast<double>(n1 + n2);
      const double lbar = alpha * l1 + (1.0 - alpha) * l2;
      const double cbar = alpha * c1 + (1.0 - alpha) * c2;

      // keep every scaled endpoint away from the integer lattice so the
      // averaged window cannot flip a boundary integer by a rounding ulp
      bool clean = true;
      const auto guard = [&](double lo, double hi, double scale) {
        if (int_gap(lo * scale) < 1e-5 || int_gap(hi * scale) < 1e-5) clean = false;
      };
      guard(l1 - nu, l1 + nu, static_cast<double>(n1));
      guard(l2 - nu, l2 + nu, static_cast<double>(n2));
      guard(lbar - nu, lbar + nu, static_cast<double>(n1 + n2));
      guard(c1 - delta, c1 + delta, L * static_cast<double>(n1));
      guard(c2 - delta, c2 + delta, L * static_cast<double>(n2));
      guard(cbar - delta, cbar + delta, L * static_cast<double>(n1 + n2));
      if (!clean) continue;

      const mpz_class a = count_classes(spec, n1, l1, nu, c1, delta).count;
      const mpz_class b = count_classes(spec, n2, l2, nu, c2, delta).count;
      const mpz_class ab = count_classes(spec, n1 + n2, lbar, nu, cbar, delta).count;
      CHECK(ab >= a * b);
      ++done;
    }
    CHECK(done == pairs);
  };

  run_pairs(MoleculeSpec::circle(), 40, 80);
  run_pairs(MoleculeSpec::torus(), 20, 40);
}

TEST_CASE("level band counting uses its endpoints verbatim") {
  const auto s1 = MoleculeSpec::circle();
  // four sites, level sums strictly inside (1.8, 2.2): only sum 2 qualifies
  CHECK(count_classes_level_band(s1, 4, 0.45, 0.55).count == 6);
  // the band spans all sums: the full rank comes back
  CHECK(count_classes_level_band(s1, 4, -0.1, 1.1).count == 16);
  CHECK(count_classes_level_band(s1, 4, 0.8, 0.9).count == 0);
  CHECK_THROWS_AS(count_classes_level_band(s1, 4, 0.5, 0.5), std::invalid_argument);

  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& spec : {MoleculeSpec::circle(), MoleculeSpec::torus(), mixed_spec()}) {
    for (int t = 0; t < 25; ++t) {
      const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 8);
      const double lo = -0.2 + 1.2 * unit(rng);
      const double hi = lo + 0.01 + unit(rng);
      CHECK(count_classes_level_band(spec, n, lo, hi).count ==
            enumerate_level_band_count(spec, n, lo, hi));
    }
  }
}

TEST_CASE("degree ranks reproduce the closed binomial forms") {
  const auto s1 = MoleculeSpec::circle();
  const auto ranks1 = degree_rank_vector(s1, 30);
  REQUIRE(ranks1.size() == 31);
  for (std::size_t d = 0; d < ranks1.size(); ++d)
    CHECK(ranks1[d] == binomial(30, static_cast<unsigned long>(d)));

  // torus: per-site polynomial 1 + 2t + t^2 = (1+t)^2, so ranks are C(2n, d)
  const auto t2 = MoleculeSpec::torus();
  const auto ranks2 = degree_rank_vector(t2, 10);
  REQUIRE(ranks2.size() == 21);
  mpz_class total = 0;
  for (std::size_t d = 0; d < ranks2.size(); ++d) {
    CHECK(ranks2[d] == binomial(20, static_cast<unsigned long>(d)));
    total += ranks2[d];
  }
  mpz_class four_pow;
  mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, 10);
  CHECK(total == four_pow);

  CHECK(degree_rank_vector(t2, 6) == enumerate_degree_ranks(t2, 6));
  CHECK(degree_rank_vector(mixed_spec(), 5) == enumerate_degree_ranks(mixed_spec(), 5));
}

TEST_CASE("degree ranks convolve exactly across a window split") {
  std::mt19937_64 rng(35);
  for (const auto& spec : {MoleculeSpec::circle(), MoleculeSpec::torus()}) {
    for (int t = 0; t < 20; ++t) {
      const std::int64_t n1 = 1 + static_cast<std::int64_t>(rng() % 12);
      const std::int64_t n2 = 1 + static_cast<std::int64_t>(rng() % 12);
      const auto ra = degree_rank_vector(spec, n1);
      const auto rb = degree_rank_vector(spec, n2);
      const auto rc = degree_rank_vector(spec, n1 + n2);
      for (std::size_t d = 0; d < rc.size(); ++d) {
        mpz_class conv = 0;
        for (std::size_t d1 = 0; d1 < ra.size(); ++d1) {
          if (d1 > d) break;
          const std::size_t d2 = d - d1;
          if (d2 < rb.size()) conv += ra[d1] * rb[d2];
        }
        // the union rank never exceeds the convolution; the product model
        // attains it with equality
        CHECK(rc[d] <= conv);
        CHECK(rc[d] == conv);
      }
    }
  }
}

TEST_CASE("degree series values and logs behave at small sizes") {
  const auto s1 = MoleculeSpec::circle();
  const auto p = poincare_polynomial(s1, 3, 1.0);
  CHECK(p.value == 7.0);
  CHECK(p.log_value == doctest::Approx(std::log(7.0)).epsilon(1e-14));
  CHECK(p.per_site_log == doctest::Approx(std::log(7.0) / 3.0).epsilon(1e-14));
  CHECK(p.full_log == doctest::Approx(3.0 * kLn2).epsilon(1e-14));

  // t = 0 keeps only the empty degree, which the d >= 1 series drops
  const auto z = poincare_polynomial(MoleculeSpec::torus(), 5, 0.0);
  CHECK(z.value == 0.0);
  CHECK(z.per_site_log == -std::numeric_limits<double>::infinity());

  // exact rational case: S = 1 + 2(1/2) + (1/2)^2 at the torus, n = 4
  const auto q = poincare_polynomial(MoleculeSpec::torus(), 4, 0.5);
  CHECK(q.value == doctest::Approx(std::pow(2.25, 4.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("per site degree series log converges to the per site factor") {
  const auto s1 = MoleculeSpec::circle();
  for (std::int64_t n : {50, 500, 2000}) {
    const auto p = poincare_polynomial(s1, n, 1.0);
    CHECK(p.per_site_log <= kLn2 + 1e-12);
    CHECK(p.per_site_log == doctest::Approx(kLn2).epsilon(1e-6));
  }
  const auto t2 = MoleculeSpec::torus();
  const auto p2 = poincare_polynomial(t2, 1000, 2.0);
  // per-site factor 1 + 2t + t^2 at t = 2 is 9
  CHECK(p2.per_site_log == doctest::Approx(std::log(9.0)).epsilon(1e-9));
}

TEST_CASE("the heaviest cell certifies the pigeonhole entropy bound") {
  const auto s1 = MoleculeSpec::circle();
  const auto out = pigeonhole_lower_bound(s1, 100, 10, 10);
  // total rank 2^100 over at most 100 cells
  CHECK(out.bound == doctest::Approx(kLn2 - std::log(100.0) / 100.0).epsilon(1e-12));
  CHECK(out.bound >= 0.6);
  // the actual heaviest cell must carry at least the certified mass
  CHECK(out.max_cell_log >= 100.0 * out.bound - 1e-9);
  CHECK(out.ell_star > 0.4);
  CHECK(out.ell_star < 0.6);
  CHECK(out.c_star > 0.4);
  CHECK(out.c_star < 0.6);

  const auto t2 = pigeonhole_lower_bound(MoleculeSpec::torus(), 100, 10, 10);
  CHECK(t2.bound == doctest::Approx(std::log(4.0) - std::log(200.0) / 100.0).epsilon(1e-12));
  CHECK(t2.max_cell_log >= 100.0 * t2.bound - 1e-9);
}

TEST_CASE("a single class spec pushes the bound to zero from below") {
  const MoleculeSpec unit_only(1, {{0, Rational(1, 1)}});
  double prev = -1.0;
  for (std::int64_t n : {10, 100, 1000}) {
    const auto out = pigeonhole_lower_bound(unit_only, n, 5, 5);
    CHECK(out.bound == doctest::Approx(-std::log(25.0) / static_cast<double>(n)).epsilon(1e-12));
    CHECK(out.bound < 0.0);
    CHECK(out.bound > prev);
    prev = out.bound;
  }
  CHECK(prev > -0.005);
}
