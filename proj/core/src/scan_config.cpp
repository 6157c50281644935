#include "echosim/scan_config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "echosim/errors.hpp"
#include "echosim/geometry.hpp"

namespace echosim {

void validate(const ScanConfig& cfg) {
  if (!(cfg.f_op > 0.0)) throw ConfigError("scan: f_op must be > 0");
  if (cfg.decim < 1) throw ConfigError("scan: decim must be >= 1");
  if (cfg.num_samples < 1 || cfg.num_samples > 65535) {
    throw ConfigError("scan: num_samples must be in [1, 65535]");
  }
  if (cfg.tx_cycles < 1) throw ConfigError("scan: tx_cycles must be >= 1");
  if (cfg.ringdown_samples < 0 || cfg.ringdown_samples > cfg.num_samples) {
    throw ConfigError("scan: ringdown_samples must be in [0, num_samples]");
  }
  if (!(cfg.fov_deg > 0.0) || cfg.fov_deg >= 180.0) {
    throw ConfigError("scan: fov_deg must be in (0, 180)");
  }
  if (!(cfg.speed_of_sound > 0.0)) throw ConfigError("scan: speed_of_sound must be > 0");
}

double resolution(const ScanConfig& cfg) {
  // Two-way travel: each sample period covers c * decim / f_op of path,
  // half of which is range.
  return cfg.speed_of_sound * static_cast<double>(cfg.decim) / (2.0 * cfg.f_op);
}

double max_range(const ScanConfig& cfg) {
  return static_cast<double>(cfg.num_samples) * resolution(cfg);
}

double sample_index_to_distance(int index, const ScanConfig& cfg) {
  if (index < 0 || index >= cfg.num_samples) {
    throw std::out_of_range("sample index " + std::to_string(index) + " outside scan of " +
                            std::to_string(cfg.num_samples) + " samples");
  }
  return static_cast<double>(index) * resolution(cfg);
}

int distance_to_sample_index(double distance, const ScanConfig& cfg) {
  const int idx = static_cast<int>(std::lround(distance / resolution(cfg)));
  if (distance < 0.0 || idx < 0 || idx >= cfg.num_samples) {
    throw std::out_of_range("distance " + std::to_string(distance) + " m outside scan range");
  }
  return idx;
}

double fov_half_angle_rad(const ScanConfig& cfg) { return deg_to_rad(cfg.fov_deg) / 2.0; }

}  // namespace echosim
