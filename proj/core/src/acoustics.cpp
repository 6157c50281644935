#include "echosim/acoustics.hpp"

#include <algorithm>
#include <cmath>

#include "echosim/errors.hpp"

namespace echosim {

void validate(const NoiseModel& noise) {
  if (noise.floor_mean < 0.0 || noise.floor_mean > 65535.0) {
    throw ConfigError("noise: floor_mean outside [0, 65535]");
  }
  if (noise.floor_std_unfiltered < 0.0) throw ConfigError("noise: floor_std must be >= 0");
  if (noise.outlier_prob < 0.0 || noise.outlier_prob > 1.0) {
    throw ConfigError("noise: outlier_prob outside [0, 1]");
  }
  if (noise.outlier_scale < 0.0) throw ConfigError("noise: outlier_scale must be >= 0");
}

void validate(const EchoModel& echo) {
  if (!(echo.a0 > 0.0)) throw ConfigError("echo: a0 must be > 0");
  if (!(echo.alpha > 0.0)) throw ConfigError("echo: alpha must be > 0");
  if (!(echo.pulse_sigma_m > 0.0)) throw ConfigError("echo: pulse_sigma_m must be > 0");
  if (echo.angle_cos_floor < 0.0 || echo.angle_cos_floor > 1.0) {
    throw ConfigError("echo: angle_cos_floor outside [0, 1]");
  }
  if (echo.ringdown_peak < 0.0) throw ConfigError("echo: ringdown_peak must be >= 0");
  if (echo.ringdown_decay < 0.0 || echo.ringdown_decay >= 1.0) {
    throw ConfigError("echo: ringdown_decay outside [0, 1)");
  }
}

double echo_peak_amplitude(const EchoModel& echo, const Material& material, double distance,
                           double bearing_rad) {
  const double angle_factor = std::max(std::cos(bearing_rad), echo.angle_cos_floor);
  return echo.a0 * material.reflectivity * (1.0 - material.softness) * angle_factor /
         std::pow(1.0 + distance, echo.alpha);
}

double ringdown_template(const EchoModel& echo, int sample) {
  return echo.ringdown_peak * std::pow(echo.ringdown_decay, sample);
}

namespace {

void fill_noise_floor(std::vector<double>& acc, const NoiseModel& noise, Rng& rng) {
  for (double& v : acc) {
    v = noise.floor_mean + noise.floor_std_unfiltered * rng.gaussian();
    // The uniform draw happens unconditionally so the stream layout does not
    // depend on the outlier probability.
    const double u = rng.uniform01();
    if (u < noise.outlier_prob) v += noise.outlier_scale * std::abs(rng.gaussian());
  }
}

MagnitudeScan quantize(const std::vector<double>& acc, std::int64_t tick) {
  MagnitudeScan scan;
  scan.tick = tick;
  scan.samples.resize(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const long long q = std::llround(acc[i]);
    scan.samples[i] = static_cast<std::uint16_t>(std::clamp(q, 0ll, 65535ll));
  }
  return scan;
}

}  // namespace

MagnitudeScan synthesize_scan(const Pose& pose, const Environment& env, const ScanConfig& cfg,
                              const EchoModel& echo, const NoiseModel& noise, Rng& rng,
                              std::int64_t tick) {
  std::vector<double> acc(static_cast<std::size_t>(cfg.num_samples));
  fill_noise_floor(acc, noise, rng);

  for (int k = 0; k < cfg.ringdown_samples && k < cfg.num_samples; ++k) {
    acc[static_cast<std::size_t>(k)] += ringdown_template(echo, k);
  }

  const double res = resolution(cfg);
  const double range_limit = max_range(cfg);
  const double half = fov_half_angle_rad(cfg);
  const double sigma = echo.pulse_sigma_m;
  const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
  const int window = static_cast<int>(std::ceil(5.0 * sigma / res));

  for (const Segment& seg : env.segments) {
    const auto hit = closest_point_in_cone(pose.position, pose.heading, half, seg.a, seg.b);
    if (!hit || hit->distance > range_limit) continue;
    const double amp = echo_peak_amplitude(echo, seg.material, hit->distance, hit->bearing);
    if (amp <= 0.0) continue;
    const int center = static_cast<int>(std::lround(hit->distance / res));
    const int i0 = std::max(0, center - window);
    const int i1 = std::min(cfg.num_samples - 1, center + window);
    for (int i = i0; i <= i1; ++i) {
      const double dx = static_cast<double>(i) * res - hit->distance;
      acc[static_cast<std::size_t>(i)] += amp * std::exp(-dx * dx * inv_two_sigma2);
    }
  }

  return quantize(acc, tick);
}

MagnitudeScan motor_noise_only_scan(const ScanConfig& cfg, const NoiseModel& noise, Rng& rng,
                                    std::int64_t tick) {
  std::vector<double> acc(static_cast<std::size_t>(cfg.num_samples));
  fill_noise_floor(acc, noise, rng);
  return quantize(acc, tick);
}

}  // namespace echosim
