#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "echosim/geometry.hpp"

namespace echosim {

// How a surface responds to a narrow-beam optical rangefinder. Acoustics does
// not care: a pane of glass is as hard a reflector as a concrete wall.
enum class OpticalKind { diffuse, glass, dark_absorptive };

struct Material {
  double reflectivity = 0.95;                     // acoustic reflectivity, [0, 1]
  OpticalKind optical_kind = OpticalKind::diffuse;
  double softness = 0.0;                          // acoustic absorption, [0, 1]; 0 = rigid
  friend bool operator==(const Material&, const Material&) = default;
};

struct Segment {
  Vec2 a;
  Vec2 b;
  Material material;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Bounds {
  Vec2 min;
  Vec2 max;
  bool contains(Vec2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

struct Environment {
  std::vector<Segment> segments;
  Bounds bounds;
  friend bool operator==(const Environment&, const Environment&) = default;
};

std::string to_string(OpticalKind kind);
OpticalKind optical_kind_from_string(const std::string& token);  // throws ConfigError

// Structural checks: non-degenerate segments, material ranges, everything
// inside bounds. Throws ConfigError naming the offending segment.
void validate_environment(const Environment& env);

// Plain-text scene file: see data/*.env or the README for the schema.
// Throws ConfigError with file/line context on malformed input.
Environment load_environment(const std::filesystem::path& path);
void save_environment(const Environment& env, const std::filesystem::path& path);

}  // namespace echosim
