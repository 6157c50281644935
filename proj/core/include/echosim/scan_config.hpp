#pragma once

namespace echosim {

// Acquisition geometry of the ultrasonic front end. One transmit burst is
// followed by num_samples magnitude samples taken at f_op/decim, so each
// sample bin spans speed_of_sound * decim / (2 * f_op) meters of range.
struct ScanConfig {
  double f_op = 50'000.0;        // transducer operating frequency, Hz
  int decim = 4;                 // decimation factor applied to f_op sampling
  int num_samples = 340;         // magnitude samples per scan
  int tx_cycles = 512;           // transmit burst length, transducer cycles
  int ringdown_samples = 20;     // leading samples dominated by transducer ringdown
  double fov_deg = 55.0;         // full cone angle of the acoustic beam
  double speed_of_sound = 343.0; // m/s
  friend bool operator==(const ScanConfig&, const ScanConfig&) = default;
};

// Throws ConfigError on out-of-range fields (used on every config-file /
// override path; library callers get the same checks there).
void validate(const ScanConfig& cfg);

// Range covered by one sample bin, meters.
double resolution(const ScanConfig& cfg);

// Farthest range the scan covers: num_samples * resolution.
double max_range(const ScanConfig& cfg);

// Center range of sample i. Throws std::out_of_range unless 0 <= i < num_samples.
double sample_index_to_distance(int index, const ScanConfig& cfg);

// Nearest sample bin for a range. Throws std::out_of_range when the rounded
// index falls outside the scan.
int distance_to_sample_index(double distance, const ScanConfig& cfg);

double fov_half_angle_rad(const ScanConfig& cfg);

}  // namespace echosim
