#pragma once

#include <cstdint>

#include "echosim/environment.hpp"
#include "echosim/noise.hpp"
#include "echosim/rng.hpp"
#include "echosim/scan.hpp"
#include "echosim/scan_config.hpp"

namespace echosim {

// Echo synthesis model. One echo per surface visible inside the cone,
// centered on the closest in-cone point of that surface: at oblique incidence
// a wide-beam transducer hears the nearest patch, not the boresight one.
// Amplitude law (AU above the noise floor):
//
//   A = a0 * reflectivity * (1 - softness) * angle_factor / (1 + d)^alpha
//
// with angle_factor = max(cos(bearing of that closest point), angle_cos_floor)
// so returns from the cone edge come in attenuated. a0 is calibrated so a
// rigid perpendicular wall at 4.0 m peaks around 8000 AU (see the calibrate
// command); the echo itself is a Gaussian pulse of pulse_sigma_m range spread,
// which matches a ~0.64 ms burst after envelope extraction.
struct EchoModel {
  double a0 = 70436.14129124339;  // (8000 - 1700) * (1 + 4)^1.5
  double alpha = 1.5;
  double pulse_sigma_m = 0.055;
  double angle_cos_floor = 0.2;
  double ringdown_peak = 40000.0;   // AU added at sample 0 by the transmit burst
  double ringdown_decay = 0.7;      // per-sample decay of the ringdown template
  friend bool operator==(const EchoModel&, const EchoModel&) = default;
};

void validate(const EchoModel& echo);  // throws ConfigError

// Peak amplitude (AU above the floor) of the echo from a surface patch at
// the given range and bearing. Exposed for analysis/tests; synthesize_scan
// uses exactly this law.
double echo_peak_amplitude(const EchoModel& echo, const Material& material, double distance,
                           double bearing_rad);

// Deterministic ringdown template value for sample k (AU).
double ringdown_template(const EchoModel& echo, int sample);

// Full receive chain for one transmit burst from `pose` in `env`:
// noise floor + ringdown template + one Gaussian echo per in-cone surface.
// Surfaces whose closest in-cone point lies beyond max_range(cfg) contribute
// nothing. Samples are rounded and clamped to [0, 65535]. Consumes rng in a
// fixed order, so equal seeds give bit-identical scans.
MagnitudeScan synthesize_scan(const Pose& pose, const Environment& env, const ScanConfig& cfg,
                              const EchoModel& echo, const NoiseModel& noise, Rng& rng,
                              std::int64_t tick = 0);

// Receive-only scan: the noise floor alone (no burst, no ringdown, no echo).
// What the sensor records when listening while motors run.
MagnitudeScan motor_noise_only_scan(const ScanConfig& cfg, const NoiseModel& noise, Rng& rng,
                                    std::int64_t tick = 0);

}  // namespace echosim
