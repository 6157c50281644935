#pragma once

#include <optional>

#include "echosim/dsp.hpp"
#include "echosim/rng.hpp"

namespace echosim {

// Obstacle-avoidance tuning. Distances in meters, rates in deg/s, velocities
// in m/s. Semantics of the bands are in raw_policy below.
struct OAParams {
  double threshold = 6000.0;       // detection threshold, AU
  double stop_dist = 0.40;         // closer than this: stop and spin
  double yaw_zero_dist = 0.80;     // farther than this: fly straight
  double max_yaw_rate = 83.25;     // deg/s
  double vel_divisor = 4.0;        // velocity = distance / vel_divisor
  double max_velocity = 1.15;      // m/s
  double accel_limit = 0.05;       // max velocity increase per control step, m/s
  double reroll_period = 10.0;     // seconds between turn-direction redraws
  friend bool operator==(const OAParams&, const OAParams&) = default;
};

void validate(const OAParams& params);  // throws ConfigError

struct ControlCommand {
  double forward_velocity = 0.0;  // m/s
  double yaw_rate = 0.0;          // deg/s, signed
  friend bool operator==(const ControlCommand&, const ControlCommand&) = default;
};

// Memory carried between control steps.
struct ControllerState {
  int yaw_sign = +1;              // -1 or +1; which way the drone currently turns
  double last_velocity = 0.0;     // commanded velocity of the previous step
  double time_since_reroll = 0.0; // seconds
};

// Stateless mapping from a detection distance to (velocity, |yaw|):
//   no detection, or distance beyond the usable range   -> full speed, no yaw
//   distance <  stop_dist                               -> stop, full yaw rate
//   stop_dist <= distance <= yaw_zero_dist              -> velocity = d / vel_divisor,
//       yaw ramps linearly from max (at stop_dist) to 0 (at yaw_zero_dist)
//   beyond yaw_zero_dist                                -> velocity = min(d / vel_divisor,
//       max_velocity), no yaw
// The usable range is max_velocity * vel_divisor, where the velocity branch
// saturates anyway. Throws std::invalid_argument on negative distances.
struct RawPolicy {
  double velocity = 0.0;       // m/s
  double yaw_magnitude = 0.0;  // deg/s, unsigned
};
RawPolicy raw_policy(std::optional<double> distance, const OAParams& params);

// One control step: applies the raw policy, limits velocity increase to
// accel_limit per step (decreases are immediate), advances the turn-direction
// timer by dt and redraws yaw_sign from rng once the timer has run down —
// except while an obstacle sits closer than stop_dist, where the turn in
// progress must finish first.
ControlCommand controller_step(ControllerState& state, const Detection& detection,
                               const OAParams& params, double dt, Rng& rng);

}  // namespace echosim
