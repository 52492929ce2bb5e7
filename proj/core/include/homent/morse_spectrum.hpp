#pragma once

#include <string>
#include <vector>

namespace homent {

// Critical data of a single Morse function, supplied as a fixture: each
// point carries its level, its Morse index, and whether it contributes a
// homology class (all points do for a perfect Morse function).
struct MorseSpectrumSpec {
  struct Point {
    double level = 0.0;
    int index = 0;
    bool contributes = true;
  };
  std::vector<Point> points;
  // Expected sum of Betti numbers; -1 derives it from the contributing
  // count (the perfect case).  Supplying it independently makes the check
  // meaningful for hand-written fixtures.
  int expected_sb = -1;
};

struct MorseCheckReport {
  struct LevelTally {
    double level = 0.0;
    int b = 0;     // contributing points at this level
    int crit = 0;  // all critical points at this level
  };
  std::vector<LevelTally> tallies;  // sorted by level
  int sb = 0;                       // expected Betti sum
  int b_total = 0;                  // sum over levels of b
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

// Checks sum_c b(c) = SB and b(c) <= #critical points at level c.
MorseCheckReport morse_check_single(const MorseSpectrumSpec& spec);

// Height function on the circle: one minimum, one maximum, both contributing.
MorseSpectrumSpec circle_height_fixture();
// Perfect Morse function on the 2-torus: four points at distinct levels
// with indices 0, 1, 1, 2.
MorseSpectrumSpec torus_perfect_fixture();

}  // namespace homent
