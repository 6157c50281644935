#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "echosim/scan.hpp"
#include "echosim/scan_config.hpp"

namespace echosim {

// Filter strengths. k_slow averages across consecutive scans (exponential
// moving average, weight 1/k_slow on the newest scan); k_fast is a causal
// moving average across neighboring range bins within one scan. 1 disables
// the respective stage.
struct FilterParams {
  int k_slow = 3;
  int k_fast = 1;
  friend bool operator==(const FilterParams&, const FilterParams&) = default;
};

void validate(const FilterParams& params);  // throws ConfigError

// Persistent per-sensor filter memory: the EMA array and the stored ringdown
// reference, both kept as 16-bit values like the scans themselves.
struct FilterState {
  explicit FilterState(const ScanConfig& cfg)
      : ema(static_cast<std::size_t>(cfg.num_samples)),
        ringdown_ref(static_cast<std::size_t>(cfg.ringdown_samples)) {}

  std::vector<std::uint16_t> ema;
  std::vector<std::uint16_t> ringdown_ref;
  bool ema_initialized = false;
  bool ringdown_initialized = false;
};

// Across-scan EMA: y_i <- ((k-1)*y_i + x_i) / k, rounded to nearest on store.
// The first call seeds the state with the scan itself. Throws
// std::invalid_argument on scan/state length mismatch or k_slow < 1.
MagnitudeScan slow_time_update(FilterState& state, const MagnitudeScan& scan, int k_slow);

// Within-scan causal moving average over k_fast bins; the first bins average
// over however many samples exist. Throws std::invalid_argument when
// k_fast < 1 or k_fast > scan length.
MagnitudeScan fast_time_filter(const MagnitudeScan& scan, int k_fast);

// Saturating subtraction of the stored ringdown reference from the leading
// bins, then an EMA update (same k_slow) of the reference from the raw
// leading bins. Keeps slowly drifting transducer ringdown from masking close
// echoes.
MagnitudeScan ringdown_compensate(FilterState& state, const MagnitudeScan& scan, int k_slow);

// First-crossing range detection result. present() tells whether anything
// beyond the ringdown region exceeded the threshold; peak_value always holds
// the largest post-ringdown amplitude seen, detection or not.
struct Detection {
  std::optional<int> sample_index;
  std::optional<double> distance;
  std::uint16_t peak_value = 0;
  bool present() const { return distance.has_value(); }
  friend bool operator==(const Detection&, const Detection&) = default;
};

// Scan the filtered magnitudes left to right, skipping the ringdown region,
// and report the first bin strictly above threshold as the closest obstacle.
// Throws std::invalid_argument when threshold <= 0.
Detection detect_closest(const MagnitudeScan& filtered, double threshold, const ScanConfig& cfg);

// 16-bit payload footprint of the filter memory plus one scan buffer:
// num_samples * 2 * 2 + ringdown_samples * 2 bytes.
int state_size_bytes(const ScanConfig& cfg);

// Convenience chain in fixed order: ringdown compensation, slow-time EMA,
// fast-time average. This is what flies on the drone.
struct Pipeline {
  Pipeline(const ScanConfig& cfg, FilterParams p) : params(p), state(cfg) {}
  MagnitudeScan process(const MagnitudeScan& raw);

  FilterParams params;
  FilterState state;
};

}  // namespace echosim
