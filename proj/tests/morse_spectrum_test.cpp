#include "homent/morse_spectrum.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace homent;

TEST_CASE("height function fixtures satisfy both morse identities") {
  const auto circle = morse_check_single(circle_height_fixture());
  CHECK(circle.passed());
  CHECK(circle.sb == 2);
  CHECK(circle.b_total == 2);
  REQUIRE(circle.tallies.size() == 2);
  CHECK(circle.tallies.front().level == -1.0);
  CHECK(circle.tallies.back().level == 1.0);

  const auto torus = morse_check_single(torus_perfect_fixture());
  CHECK(torus.passed());
  CHECK(torus.sb == 4);
  CHECK(torus.b_total == 4);
  CHECK(torus.tallies.size() == 4);
  for (const auto& t : torus.tallies) {
    CHECK(t.b == 1);
    CHECK(t.crit == 1);
  }
}

TEST_CASE("points sharing a level are tallied together") {
  MorseSpectrumSpec spec;
  spec.points = {{0.0, 0, true}, {0.5, 1, true}, {0.5, 1, true}, {1.0, 2, true}};
  const auto rep = morse_check_single(spec);
  CHECK(rep.passed());
  REQUIRE(rep.tallies.size() == 3);
  CHECK(rep.tallies[1].level == 0.5);
  CHECK(rep.tallies[1].b == 2);
  CHECK(rep.tallies[1].crit == 2);  // equality case of b(c) <= crit count
  CHECK(rep.sb == 4);
}

TEST_CASE("a wrong betti sum is reported, not thrown") {
  MorseSpectrumSpec spec = circle_height_fixture();
  spec.expected_sb = 3;
  const auto rep = morse_check_single(spec);
  CHECK(!rep.passed());
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].find("SB = 3") != std::string::npos);
}

TEST_CASE("non contributing points may outnumber classes at a level") {
  // an imperfect function: a cancelling pair sits at level 0.5
  MorseSpectrumSpec spec;
  spec.points = {{0.0, 0, true}, {0.5, 1, false}, {0.5, 2, false}, {1.0, 1, true}};
  spec.expected_sb = 2;
  const auto rep = morse_check_single(spec);
  CHECK(rep.passed());
  REQUIRE(rep.tallies.size() == 3);
  CHECK(rep.tallies[1].b == 0);
  CHECK(rep.tallies[1].crit == 2);
}

TEST_CASE("the level sum check catches a missing class") {
  // drop one contributing flag but keep the perfect expected sum
  MorseSpectrumSpec spec = torus_perfect_fixture();
  spec.points[2].contributes = false;
  const auto rep = morse_check_single(spec);
  CHECK(!rep.passed());
  CHECK(rep.b_total == 3);
  CHECK(rep.sb == 4);
}

TEST_CASE("non finite levels are rejected") {
  MorseSpectrumSpec spec;
  spec.points = {{std::numeric_limits<double>::quiet_NaN(), 0, true}};
  CHECK_THROWS_AS(morse_check_single(spec), std::invalid_argument);
  spec.points = {{std::numeric_limits<double>::infinity(), 1, true}};
  CHECK_THROWS_AS(morse_check_single(spec), std::invalid_argument);
}
