#include "forest/config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace forest {

namespace {

double sqrt_log(int n) { return std::sqrt(std::log(std::max(n, 3))); }

}  // namespace

Config Config::paper(int n) {
  Config c;
  const double sl = sqrt_log(n);
  c.geoLength = static_cast<std::int64_t>(std::ceil(1e10 * sl));
  c.geoSeparation = 50;
  c.ellMin = 3;
  c.ellMax = static_cast<int>(std::min<std::int64_t>(c.geoLength, 1 << 30));
  c.longPathThreshold = static_cast<std::int64_t>(std::ceil(4000 * sl));
  c.breakLength = static_cast<std::int64_t>(std::ceil(1000 * std::log(std::max(n, 3))));
  c.segmentMin = static_cast<std::int64_t>(std::ceil(1000 * sl));
  c.segmentMax = static_cast<std::int64_t>(std::ceil(2000 * sl));
  c.componentSizeCap = 64 * static_cast<int>(std::ceil(sl));
  c.spiderShort = static_cast<int>(std::ceil(std::pow(std::log(std::max(n, 3)), 2.0 / 3.0)));
  c.spiderCount = static_cast<int>(std::ceil(100 * sl));
  c.spiderLong = c.spiderCount;
  c.shortComponent = static_cast<int>(std::ceil(100 * sl));
  return c;
}

Config Config::desk(int n) {
  Config c;
  const double sl = sqrt_log(n);
  constexpr double scale = 1e-3;
  c.geoLength = 0;
  c.geoSeparation = 50;
  c.ellMin = 3;
  c.ellMax = 4;
  c.longPathThreshold = std::max<std::int64_t>(20, static_cast<std::int64_t>(std::ceil(4000 * sl * scale)));
  c.breakLength = static_cast<std::int64_t>(std::ceil(1000 * std::log(std::max(n, 3))));
  c.segmentMin = c.longPathThreshold / 4;
  c.segmentMax = c.longPathThreshold / 2;
  c.componentSizeCap = 64 * static_cast<int>(std::ceil(sl));
  c.spiderShort = static_cast<int>(std::ceil(std::pow(std::log(std::max(n, 3)), 2.0 / 3.0)));
  c.spiderCount = 2 * static_cast<int>(std::ceil(sl));
  c.spiderLong = 2 * static_cast<int>(std::ceil(sl));
  c.shortComponent = static_cast<int>(c.longPathThreshold / 2);
  return c;
}

void Config::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("config: ") + what);
  };
  need(geoLength >= 0, "geoLength must be non-negative");
  need(geoSeparation > 0, "geoSeparation must be positive");
  need(ellMin >= 3, "ell range must start at 3 or above");
  need(ellMax >= ellMin, "ell range is empty");
  need(longPathThreshold > 0, "longPathThreshold must be positive");
  need(segmentMin > 0 && segmentMin <= segmentMax, "segment bounds out of order");
  need(transversalDegreeCap > 0, "transversalDegreeCap must be positive");
  need(weakThomassenBound > 0, "weakThomassenBound must be positive");
  need(epsilon > 0 && epsilon < 1, "epsilon must lie in (0, 1)");
  need(componentSizeCap > 0, "componentSizeCap must be positive");
  need(gadgetsPerLength > 0, "gadgetsPerLength must be positive");
  need(attemptCap > 0, "attemptCap must be positive");
  need(spiderShort > 0 && spiderCount > 0 && spiderLong > 0, "spider thresholds must be positive");
  need(shortComponent > 0, "shortComponent must be positive");
}

std::string Config::describe() const {
  std::ostringstream os;
  os << "geoLength=" << geoLength << "\ngeoSeparation=" << geoSeparation << "\nellMin=" << ellMin
     << "\nellMax=" << ellMax << "\nlongPathThreshold=" << longPathThreshold
     << "\nbreakLength=" << breakLength << "\nsegmentMin=" << segmentMin
     << "\nsegmentMax=" << segmentMax << "\ntransversalDegreeCap=" << transversalDegreeCap
     << "\nweakThomassenBound=" << weakThomassenBound << "\nseed=" << seed
     << "\nepsilon=" << epsilon << "\ncomponentSizeCap=" << componentSizeCap
     << "\ngadgetsPerLength=" << gadgetsPerLength << "\nattemptCap=" << attemptCap
     << "\nspiderShort=" << spiderShort << "\nspiderCount=" << spiderCount
     << "\nspiderLong=" << spiderLong << "\nshortComponent=" << shortComponent << "\n";
  return os.str();
}

}  // namespace forest
