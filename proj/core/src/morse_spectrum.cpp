#include "homent/morse_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace homent {

MorseCheckReport morse_check_single(const MorseSpectrumSpec& spec) {
  for (const auto& p : spec.points)
    if (!std::isfinite(p.level))
      throw std::invalid_argument("morse_check_single: levels must be finite");

  std::vector<MorseSpectrumSpec::Point> pts = spec.points;
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a.level < b.level; });

  MorseCheckReport rep;
  for (std::size_t i = 0; i < pts.size();) {
    MorseCheckReport::LevelTally t;
    t.level = pts[i].level;
    std::size_t j = i;
    for (; j < pts.size() && pts[j].level == t.level; ++j) {
      ++t.crit;
      if (pts[j].contributes) ++t.b;
    }
    rep.tallies.push_back(t);
    i = j;
  }

  int contributing = 0;
  for (const auto& t : rep.tallies) rep.b_total += t.b;
  for (const auto& p : pts) contributing += p.contributes ? 1 : 0;
  rep.sb = spec.expected_sb >= 0 ? spec.expected_sb : contributing;

  char buf[160];
  if (rep.b_total != rep.sb) {
    std::snprintf(buf, sizeof buf, "sum of b(c) = %d does not match SB = %d", rep.b_total,
                  rep.sb);
    rep.violations.emplace_back(buf);
  }
  for (const auto& t : rep.tallies) {
    if (t.b > t.crit) {
      std::snprintf(buf, sizeof buf, "level %.17g: b = %d exceeds critical count %d", t.level,
                    t.b, t.crit);
      rep.violations.emplace_back(buf);
    }
  }
  return rep;
}

MorseSpectrumSpec circle_height_fixture() {
  MorseSpectrumSpec s;
  s.points = {{-1.0, 0, true}, {1.0, 1, true}};
  s.expected_sb = 2;
  return s;
}

MorseSpectrumSpec torus_perfect_fixture() {
  MorseSpectrumSpec s;
  s.points = {{0.0, 0, true}, {1.0, 1, true}, {2.0, 1, true}, {3.0, 2, true}};
  s.expected_sb = 4;
  return s;
}

}  // namespace homent
