#include "echosim/control.hpp"

#include <algorithm>
#include <stdexcept>

#include "echosim/errors.hpp"

namespace echosim {

void validate(const OAParams& p) {
  if (!(p.threshold > 0.0)) throw ConfigError("oa: threshold must be > 0");
  if (!(p.stop_dist > 0.0)) throw ConfigError("oa: stop_dist must be > 0");
  if (!(p.yaw_zero_dist > p.stop_dist)) {
    throw ConfigError("oa: yaw_zero_dist must exceed stop_dist");
  }
  if (!(p.max_yaw_rate > 0.0)) throw ConfigError("oa: max_yaw_rate must be > 0");
  if (!(p.vel_divisor > 0.0)) throw ConfigError("oa: vel_divisor must be > 0");
  if (!(p.max_velocity > 0.0)) throw ConfigError("oa: max_velocity must be > 0");
  if (!(p.accel_limit > 0.0)) throw ConfigError("oa: accel_limit must be > 0");
  if (!(p.reroll_period > 0.0)) throw ConfigError("oa: reroll_period must be > 0");
}

RawPolicy raw_policy(std::optional<double> distance, const OAParams& p) {
  if (distance && *distance < 0.0) {
    throw std::invalid_argument("raw_policy: negative distance");
  }
  const double usable_range = p.max_velocity * p.vel_divisor;
  if (!distance || *distance >= usable_range) {
    return {p.max_velocity, 0.0};
  }
  const double d = *distance;
  if (d < p.stop_dist) {
    return {0.0, p.max_yaw_rate};
  }
  if (d <= p.yaw_zero_dist) {
    const double yaw =
        p.max_yaw_rate * (p.yaw_zero_dist - d) / (p.yaw_zero_dist - p.stop_dist);
    return {d / p.vel_divisor, yaw};
  }
  return {std::min(d / p.vel_divisor, p.max_velocity), 0.0};
}

ControlCommand controller_step(ControllerState& state, const Detection& detection,
                               const OAParams& params, double dt, Rng& rng) {
  const RawPolicy raw = raw_policy(detection.distance, params);
  const double velocity = std::min(raw.velocity, state.last_velocity + params.accel_limit);

  state.time_since_reroll += dt;
  const bool turning_away = detection.present() && *detection.distance < params.stop_dist;
  if (state.time_since_reroll >= params.reroll_period && !turning_away) {
    state.yaw_sign = rng.coin_sign();
    state.time_since_reroll = 0.0;
  }

  state.last_velocity = velocity;
  return {velocity, static_cast<double>(state.yaw_sign) * raw.yaw_magnitude};
}

}  // namespace echosim
