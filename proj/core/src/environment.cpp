#include "echosim/environment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "echosim/csv.hpp"
#include "echosim/errors.hpp"

namespace echosim {

std::string to_string(OpticalKind kind) {
  switch (kind) {
    case OpticalKind::diffuse: return "diffuse";
    case OpticalKind::glass: return "glass";
    case OpticalKind::dark_absorptive: return "dark_absorptive";
  }
  return "diffuse";
}

OpticalKind optical_kind_from_string(const std::string& token) {
  if (token == "diffuse") return OpticalKind::diffuse;
  if (token == "glass") return OpticalKind::glass;
  if (token == "dark_absorptive") return OpticalKind::dark_absorptive;
  throw ConfigError("unknown optical kind '" + token +
                    "' (expected diffuse|glass|dark_absorptive)");
}

void validate_environment(const Environment& env) {
  if (!(env.bounds.min.x < env.bounds.max.x) || !(env.bounds.min.y < env.bounds.max.y)) {
    throw ConfigError("environment bounds are empty or inverted");
  }
  if (env.segments.empty()) {
    throw ConfigError("environment has no segments");
  }
  for (std::size_t i = 0; i < env.segments.size(); ++i) {
    const Segment& s = env.segments[i];
    const std::string where = "segment " + std::to_string(i);
    if (norm(s.b - s.a) < 1e-9) throw ConfigError(where + ": endpoints coincide");
    if (!env.bounds.contains(s.a) || !env.bounds.contains(s.b)) {
      throw ConfigError(where + ": endpoint outside bounds");
    }
    if (s.material.reflectivity < 0.0 || s.material.reflectivity > 1.0) {
      throw ConfigError(where + ": reflectivity outside [0, 1]");
    }
    if (s.material.softness < 0.0 || s.material.softness > 1.0) {
      throw ConfigError(where + ": softness outside [0, 1]");
    }
  }
}

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line, const std::string& msg) {
  throw ConfigError(path.string() + ":" + std::to_string(line) + ": " + msg);
}

double parse_num(const std::string& tok, const std::filesystem::path& path, int line) {
  try {
    return parse_double(tok);
  } catch (const std::exception&) {
    parse_fail(path, line, "expected a number, got '" + tok + "'");
  }
}

}  // namespace

Environment load_environment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open environment file: " + path.string());

  Environment env;
  bool have_bounds = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string kw;
    if (!(ss >> kw)) continue;  // blank/comment line

    if (kw == "bounds") {
      if (have_bounds) parse_fail(path, lineno, "duplicate bounds line");
      std::string t[4];
      if (!(ss >> t[0] >> t[1] >> t[2] >> t[3])) {
        parse_fail(path, lineno, "bounds needs: xmin ymin xmax ymax");
      }
      env.bounds.min = {parse_num(t[0], path, lineno), parse_num(t[1], path, lineno)};
      env.bounds.max = {parse_num(t[2], path, lineno), parse_num(t[3], path, lineno)};
      have_bounds = true;
    } else if (kw == "segment") {
      std::string t[5], kind;
      if (!(ss >> t[0] >> t[1] >> t[2] >> t[3] >> t[4] >> kind)) {
        parse_fail(path, lineno,
                   "segment needs: x1 y1 x2 y2 reflectivity optical_kind [softness]");
      }
      Segment s;
      s.a = {parse_num(t[0], path, lineno), parse_num(t[1], path, lineno)};
      s.b = {parse_num(t[2], path, lineno), parse_num(t[3], path, lineno)};
      s.material.reflectivity = parse_num(t[4], path, lineno);
      try {
        s.material.optical_kind = optical_kind_from_string(kind);
      } catch (const ConfigError& e) {
        parse_fail(path, lineno, e.what());
      }
      std::string soft;
      if (ss >> soft) s.material.softness = parse_num(soft, path, lineno);
      std::string extra;
      if (ss >> extra) parse_fail(path, lineno, "trailing token '" + extra + "'");
      env.segments.push_back(s);
    } else {
      parse_fail(path, lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_bounds) throw ConfigError(path.string() + ": missing bounds line");
  try {
    validate_environment(env);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return env;
}

void save_environment(const Environment& env, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write environment file: " + path.string());
  out << "bounds " << format_double(env.bounds.min.x) << ' ' << format_double(env.bounds.min.y)
      << ' ' << format_double(env.bounds.max.x) << ' ' << format_double(env.bounds.max.y) << '\n';
  for (const Segment& s : env.segments) {
    out << "segment " << format_double(s.a.x) << ' ' << format_double(s.a.y) << ' '
        << format_double(s.b.x) << ' ' << format_double(s.b.y) << ' '
        << format_double(s.material.reflectivity) << ' ' << to_string(s.material.optical_kind)
        << ' ' << format_double(s.material.softness) << '\n';
  }
  if (!out.flush()) throw ConfigError("write failed: " + path.string());
}

}  // namespace echosim
