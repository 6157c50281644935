#pragma once

#include <cstdint>

namespace echosim {

// Additive noise floor seen by the receiver while motors run. Values are AU.
// Outliers model sporadic wideband interference: with probability
// outlier_prob a sample gains a positive spike of magnitude
// outlier_scale * |N(0,1)|. Chosen so that the unfiltered floor occasionally
// spikes while the slow-time-filtered floor stays safely below the detection
// threshold.
struct NoiseModel {
  double floor_mean = 1700.0;
  double floor_std_unfiltered = 700.0;
  double outlier_prob = 0.001;
  double outlier_scale = 3000.0;
  std::uint64_t rng_seed = 1;
  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

void validate(const NoiseModel& noise);  // throws ConfigError

}  // namespace echosim
