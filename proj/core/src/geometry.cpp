#include "echosim/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace echosim {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kParallelEps = 1e-12;
}  // namespace

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }
Vec2 unit_from_angle(double rad) { return {std::cos(rad), std::sin(rad)}; }

Vec2 rotated(Vec2 v, double rad) {
  const double c = std::cos(rad), s = std::sin(rad);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

double wrap_angle(double rad) {
  double a = std::fmod(rad, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

namespace {

// Clip the parametric interval [lo, hi] of a segment against the half-plane
// c0 + t*c1 >= 0. Returns false when the intersection is empty.
bool clip_halfplane(double c0, double c1, double& lo, double& hi) {
  if (std::abs(c1) < kParallelEps) return c0 >= -kParallelEps;
  const double t = -c0 / c1;
  if (c1 > 0.0) {
    lo = std::max(lo, t);
  } else {
    hi = std::min(hi, t);
  }
  return lo <= hi;
}

}  // namespace

std::optional<ConePoint> closest_point_in_cone(Vec2 apex, double axis, double half_angle,
                                               Vec2 a, Vec2 b) {
  // A forward wedge with half-angle < pi/2 is convex: it is exactly the
  // intersection of the half-planes right of the left edge ray and left of
  // the right edge ray. Clipping the segment against both yields a single
  // parameter interval; the closest point is the (clamped) perpendicular foot.
  const Vec2 e_left = unit_from_angle(axis + half_angle);
  const Vec2 e_right = unit_from_angle(axis - half_angle);
  const Vec2 rel = a - apex;
  const Vec2 d = b - a;

  double lo = 0.0, hi = 1.0;
  // cross(e_right, x - apex) >= 0  (x not right of the right edge)
  if (!clip_halfplane(cross(e_right, rel), cross(e_right, d), lo, hi)) return std::nullopt;
  // cross(e_left, x - apex) <= 0   (x not left of the left edge)
  if (!clip_halfplane(-cross(e_left, rel), -cross(e_left, d), lo, hi)) return std::nullopt;

  const double dd = dot(d, d);
  double t = (dd > 0.0) ? dot(apex - a, d) / dd : 0.0;  // unconstrained perpendicular foot
  t = std::clamp(t, lo, hi);
  const Vec2 p = a + t * d;
  const Vec2 v = p - apex;
  const double dist = norm(v);
  if (dist < kParallelEps) return std::nullopt;  // apex touching the segment
  const double bearing = wrap_angle(std::atan2(v.y, v.x) - axis);
  return ConePoint{dist, bearing};
}

std::optional<double> ray_segment_intersection(Vec2 origin, Vec2 dir, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double denom = cross(dir, d);
  if (std::abs(denom) < kParallelEps) return std::nullopt;  // parallel/collinear: treat as miss
  const Vec2 rel = a - origin;
  const double t = cross(rel, d) / denom;   // along the ray
  const double s = cross(rel, dir) / denom;  // along the segment
  if (t < 0.0 || s < 0.0 || s > 1.0) return std::nullopt;
  return t;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double dd = dot(d, d);
  double t = (dd > 0.0) ? dot(p - a, d) / dd : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * d));
}

}  // namespace echosim
