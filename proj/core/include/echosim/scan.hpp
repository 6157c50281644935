#pragma once

#include <cstdint>
#include <vector>

namespace echosim {

// One received magnitude scan: unsigned 16-bit amplitudes in arbitrary units
// (AU), one value per range bin. Index 0 is the bin nearest the sensor.
struct MagnitudeScan {
  std::vector<std::uint16_t> samples;
  std::int64_t tick = 0;  // simulation tick the scan was completed on
  friend bool operator==(const MagnitudeScan&, const MagnitudeScan&) = default;
};

}  // namespace echosim
