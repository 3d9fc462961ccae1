#pragma once

#include <cstdint>
#include <string>

namespace forest {

// All asymptotic constants of the construction, as run-time parameters.
// paper() keeps the asymptotic values; desk() scales them so that graphs with
// a few thousand vertices exercise every code path.
struct Config {
  std::int64_t geoLength = 0;  // 0: min(asymptotic value, diameter - 2)
  int geoSeparation = 50;
  int ellMin = 3;
  int ellMax = 4;
  std::int64_t longPathThreshold = 20;
  std::int64_t breakLength = 0;  // Q1 bound on component length
  std::int64_t segmentMin = 5;
  std::int64_t segmentMax = 10;
  int transversalDegreeCap = 4;
  int weakThomassenBound = 40;
  std::uint64_t seed = 1;
  double epsilon = 0.5;
  int componentSizeCap = 64;
  int gadgetsPerLength = 4;
  int attemptCap = 16;
  // Q2 thresholds: a path of length <= spiderShort meeting >= spiderCount
  // opposite paths of length >= spiderLong is a violation.
  int spiderShort = 3;
  int spiderCount = 6;
  int spiderLong = 6;
  // Opposite-colour components counted as short when picking flip edges.
  int shortComponent = 10;

  static Config paper(int n);
  static Config desk(int n);

  // Throws std::invalid_argument on a broken invariant.
  void validate() const;
  std::string describe() const;
};

}  // namespace forest
