#include "echosim/dsp.hpp"

#include <stdexcept>

#include "echosim/errors.hpp"

namespace echosim {

void validate(const FilterParams& params) {
  if (params.k_slow < 1 || params.k_slow > 32768) {
    throw ConfigError("filter: k_slow must be in [1, 32768]");
  }
  if (params.k_fast < 1 || params.k_fast > 32768) {
    throw ConfigError("filter: k_fast must be in [1, 32768]");
  }
}

namespace {

// Round-to-nearest integer EMA step, accumulated in 32 bits: with k <= 32768
// and 16-bit inputs the numerator stays below 2^32.
inline std::uint16_t ema_step(std::uint16_t prev, std::uint16_t x, int k) {
  const std::uint32_t num = static_cast<std::uint32_t>(k - 1) * prev + x +
                            static_cast<std::uint32_t>(k) / 2u;
  return static_cast<std::uint16_t>(num / static_cast<std::uint32_t>(k));
}

}  // namespace

MagnitudeScan slow_time_update(FilterState& state, const MagnitudeScan& scan, int k_slow) {
  if (k_slow < 1) throw std::invalid_argument("slow_time_update: k_slow must be >= 1");
  if (scan.samples.size() != state.ema.size()) {
    throw std::invalid_argument("slow_time_update: scan length does not match filter state");
  }
  if (!state.ema_initialized) {
    state.ema = scan.samples;
    state.ema_initialized = true;
  } else {
    for (std::size_t i = 0; i < state.ema.size(); ++i) {
      state.ema[i] = ema_step(state.ema[i], scan.samples[i], k_slow);
    }
  }
  MagnitudeScan out;
  out.tick = scan.tick;
  out.samples = state.ema;
  return out;
}

MagnitudeScan fast_time_filter(const MagnitudeScan& scan, int k_fast) {
  if (k_fast < 1) throw std::invalid_argument("fast_time_filter: k_fast must be >= 1");
  if (static_cast<std::size_t>(k_fast) > scan.samples.size()) {
    throw std::invalid_argument("fast_time_filter: k_fast exceeds scan length");
  }
  MagnitudeScan out;
  out.tick = scan.tick;
  out.samples.resize(scan.samples.size());
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < scan.samples.size(); ++i) {
    sum += scan.samples[i];
    if (i >= static_cast<std::size_t>(k_fast)) sum -= scan.samples[i - k_fast];
    const std::uint64_t count = std::min<std::uint64_t>(i + 1, k_fast);
    out.samples[i] = static_cast<std::uint16_t>((sum + count / 2) / count);
  }
  return out;
}

MagnitudeScan ringdown_compensate(FilterState& state, const MagnitudeScan& scan, int k_slow) {
  if (k_slow < 1) throw std::invalid_argument("ringdown_compensate: k_slow must be >= 1");
  if (scan.samples.size() < state.ringdown_ref.size()) {
    throw std::invalid_argument("ringdown_compensate: scan shorter than ringdown region");
  }
  MagnitudeScan out = scan;
  for (std::size_t k = 0; k < state.ringdown_ref.size(); ++k) {
    const std::uint16_t ref = state.ringdown_ref[k];
    out.samples[k] = scan.samples[k] > ref ? static_cast<std::uint16_t>(scan.samples[k] - ref)
                                           : std::uint16_t{0};
  }
  if (!state.ringdown_initialized) {
    for (std::size_t k = 0; k < state.ringdown_ref.size(); ++k) {
      state.ringdown_ref[k] = scan.samples[k];
    }
    state.ringdown_initialized = true;
  } else {
    for (std::size_t k = 0; k < state.ringdown_ref.size(); ++k) {
      state.ringdown_ref[k] = ema_step(state.ringdown_ref[k], scan.samples[k], k_slow);
    }
  }
  return out;
}

Detection detect_closest(const MagnitudeScan& filtered, double threshold, const ScanConfig& cfg) {
  if (!(threshold > 0.0)) throw std::invalid_argument("detect_closest: threshold must be > 0");
  Detection det;
  const std::size_t begin = static_cast<std::size_t>(cfg.ringdown_samples);
  for (std::size_t i = begin; i < filtered.samples.size(); ++i) {
    det.peak_value = std::max(det.peak_value, filtered.samples[i]);
    if (!det.sample_index && static_cast<double>(filtered.samples[i]) > threshold) {
      det.sample_index = static_cast<int>(i);
      det.distance = sample_index_to_distance(static_cast<int>(i), cfg);
    }
  }
  return det;
}

int state_size_bytes(const ScanConfig& cfg) {
  return cfg.num_samples * 2 * 2 + cfg.ringdown_samples * 2;
}

MagnitudeScan Pipeline::process(const MagnitudeScan& raw) {
  const MagnitudeScan compensated = ringdown_compensate(state, raw, params.k_slow);
  const MagnitudeScan averaged = slow_time_update(state, compensated, params.k_slow);
  return fast_time_filter(averaged, params.k_fast);
}

}  // namespace echosim
