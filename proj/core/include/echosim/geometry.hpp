#pragma once

#include <optional>

namespace echosim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend Vec2 operator*(double s, Vec2 a) { return a * s; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double dot(Vec2 a, Vec2 b);
double cross(Vec2 a, Vec2 b);
double norm(Vec2 a);
Vec2 unit_from_angle(double rad);
Vec2 rotated(Vec2 v, double rad);

// Wrap an angle into (-pi, pi].
double wrap_angle(double rad);

double deg_to_rad(double deg);
double rad_to_deg(double rad);

// Position plus heading (radians, measured from +x, CCW positive).
struct Pose {
  Vec2 position;
  double heading = 0.0;
  friend bool operator==(const Pose&, const Pose&) = default;
};

// Closest point of a segment restricted to a forward wedge (the sensor cone).
struct ConePoint {
  double distance = 0.0;     // meters from the wedge apex
  double bearing = 0.0;      // radians relative to the wedge axis, in [-half_angle, half_angle]
};

// Minimum-distance point of segment [a,b] among the points lying inside the
// wedge with the given apex/axis/half-angle. Empty when no part of the
// segment is inside the wedge. half_angle must be in (0, pi/2).
std::optional<ConePoint> closest_point_in_cone(Vec2 apex, double axis, double half_angle,
                                               Vec2 a, Vec2 b);

// Distance along a ray (origin, unit dir) to segment [a,b]; empty on miss.
std::optional<double> ray_segment_intersection(Vec2 origin, Vec2 dir, Vec2 a, Vec2 b);

// Euclidean distance from p to segment [a,b].
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

}  // namespace echosim
