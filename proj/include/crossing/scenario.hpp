#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crossing/dynamics.hpp"
#include "crossing/params.hpp"

namespace crossing {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  explicit ParseError(const std::string& what)
      : std::runtime_error(what), line_(0) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InitialVehicle {
  double x = 0.0;
  double v = 0.0;
  double u_prev = 0.0;
};

struct Spawner {
  double period = 1.0;  // [s]
  double speed = 0.0;   // entry speed and standing command [m/s]
  double phase = 0.0;   // first entry time [s]
};

/// A complete batch-simulation input. Routes are listed front first.
struct Scenario {
  ModelParams params;
  std::array<std::vector<InitialVehicle>, 2> routes;
  std::array<std::optional<Spawner>, 2> spawners;
  NoiseKind noise = NoiseKind::kZero;
  bool condition3_guard = false;
  int horizon = 1;  // ticks
  std::uint64_t seed = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

inline double parse_double(const std::string& text, int line) {
  std::istringstream in(text);
  double value = 0.0;
  in >> value;
  if (in.fail()) throw ParseError(line, "expected a number, got '" + text + "'");
  std::string rest;
  in >> rest;
  if (!rest.empty()) throw ParseError(line, "trailing text '" + rest + "'");
  return value;
}

inline std::vector<double> parse_doubles(const std::string& text, int line) {
  std::istringstream in(text);
  std::vector<double> values;
  double v = 0.0;
  while (in >> v) values.push_back(v);
  if (!in.eof()) throw ParseError(line, "expected numbers, got '" + text + "'");
  return values;
}

}  // namespace detail

/// Checks the semantic invariants a parsed scenario must satisfy. Initial
/// speeds must sit within epsilon of the standing command: the estimator
/// assumes every vehicle is already tracking it.
inline void validate_scenario(const Scenario& sc) {
  validate(sc.params);
  const ModelParams& p = sc.params;
  if (sc.horizon < 1) throw ConfigError("horizon must be >= 1");
  for (int k = 0; k < 2; ++k) {
    const auto& route = sc.routes[k];
    const std::string where = "route." + std::to_string(k + 1);
    for (std::size_t i = 0; i < route.size(); ++i) {
      const InitialVehicle& veh = route[i];
      if (std::abs(veh.x) > p.zone_radius)
        throw ConfigError(where + ": vehicle position outside [-L, L]");
      if (veh.v < 0 || veh.v > p.v_max)
        throw ConfigError(where + ": vehicle speed outside [0, v_max]");
      if (veh.u_prev < 0 || veh.u_prev > p.v_max)
        throw ConfigError(where + ": u_prev outside [0, v_max]");
      if (std::abs(veh.v - veh.u_prev) > p.epsilon)
        throw ConfigError(where + ": initial speed must be within epsilon of u_prev");
      if (i > 0 && !(route[i - 1].x > veh.x))
        throw ConfigError(where + ": vehicles must be front first with positive gaps");
    }
    if (sc.spawners[k]) {
      const Spawner& sp = *sc.spawners[k];
      if (!(sp.period > 0)) throw ConfigError("spawn period must be > 0");
      if (sp.speed < 0 || sp.speed > p.v_max)
        throw ConfigError("spawn speed outside [0, v_max]");
      if (sp.phase < 0) throw ConfigError("spawn phase must be >= 0");
    }
  }
}

/// Parses the flat key/value scenario format. See README for the schema.
inline Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  std::array<bool, 9> seen{};  // params keys, in field order
  bool params_section_seen = false;
  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = detail::trim(line);
    if (text.empty() || text[0] == '#') continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ParseError(line_no, "unterminated section");
      section = text.substr(1, text.size() - 2);
      if (section == "params") params_section_seen = true;
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ParseError(line_no, "expected 'key = value'");
    const std::string key = detail::trim(text.substr(0, eq));
    const std::string value = detail::trim(text.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");

    if (section == "params") {
      ModelParams& p = sc.params;
      if (key == "delta") { p.delta = detail::parse_double(value, line_no); seen[0] = true; }
      else if (key == "theta") { p.theta = detail::parse_double(value, line_no); seen[1] = true; }
      else if (key == "epsilon") { p.epsilon = detail::parse_double(value, line_no); seen[2] = true; }
      else if (key == "a_max") { p.a_max = detail::parse_double(value, line_no); seen[3] = true; }
      else if (key == "v_max") { p.v_max = detail::parse_double(value, line_no); seen[4] = true; }
      else if (key == "h") { p.h = detail::parse_double(value, line_no); seen[5] = true; }
      else if (key == "h_bar") { p.h_bar = detail::parse_double(value, line_no); seen[6] = true; }
      else if (key == "L") { p.zone_radius = detail::parse_double(value, line_no); seen[7] = true; }
      else if (key == "R") { p.conflict_radius = detail::parse_double(value, line_no); seen[8] = true; }
      else throw ParseError(line_no, "unknown key '" + key + "' in [params]");
    } else if (section == "sim") {
      if (key == "horizon") {
        sc.horizon = static_cast<int>(detail::parse_double(value, line_no));
      } else if (key == "seed") {
        try {
          std::size_t used = 0;
          sc.seed = std::stoull(value, &used);
          if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
          throw ParseError(line_no, "seed must be an unsigned integer");
        }
      } else if (key == "noise") {
        if (value == "zero") sc.noise = NoiseKind::kZero;
        else if (value == "uniform") sc.noise = NoiseKind::kUniform;
        else if (value == "adversarial") sc.noise = NoiseKind::kAdversarial;
        else throw ParseError(line_no, "noise must be zero|uniform|adversarial");
      } else if (key == "guard") {
        if (value == "none") sc.condition3_guard = false;
        else if (value == "cond3") sc.condition3_guard = true;
        else throw ParseError(line_no, "guard must be none|cond3");
      } else {
        throw ParseError(line_no, "unknown key '" + key + "' in [sim]");
      }
    } else if (section == "route.1" || section == "route.2") {
      if (key != "vehicle")
        throw ParseError(line_no, "unknown key '" + key + "' in [" + section + "]");
      const auto fields = detail::parse_doubles(value, line_no);
      if (fields.size() != 3)
        throw ParseError(line_no, "vehicle needs 'x v u_prev'");
      sc.routes[section == "route.1" ? 0 : 1].push_back(
          {fields[0], fields[1], fields[2]});
    } else if (section == "spawn.1" || section == "spawn.2") {
      auto& spawner = sc.spawners[section == "spawn.1" ? 0 : 1];
      if (!spawner) spawner = Spawner{};
      if (key == "period") spawner->period = detail::parse_double(value, line_no);
      else if (key == "speed") spawner->speed = detail::parse_double(value, line_no);
      else if (key == "phase") spawner->phase = detail::parse_double(value, line_no);
      else throw ParseError(line_no, "unknown key '" + key + "' in [" + section + "]");
    } else if (section == "sweep") {
      // Parsed by parse_sweep_axes; ignored here so one file can drive both.
      continue;
    } else if (section.empty()) {
      throw ParseError(line_no, "key outside any [section]");
    } else {
      throw ParseError(line_no, "unknown section [" + section + "]");
    }
  }
  if (!params_section_seen) throw ParseError("missing [params] section");
  static const char* kParamKeys[] = {"delta", "theta", "epsilon", "a_max",
                                     "v_max", "h",     "h_bar",   "L",
                                     "R"};
  for (int i = 0; i < 9; ++i) {
    if (!seen[i])
      throw ParseError(std::string("missing key '") + kParamKeys[i] +
                       "' in [params]");
  }
  validate_scenario(sc);
  return sc;
}

inline Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_scenario(in);
}

/// Collects the sweep grid axes from a config's [sweep] section.
/// Recognized axes: theta, delta, epsilon, h; each a list of values.
struct SweepAxesConfig {
  std::vector<double> theta, delta, epsilon, h;
};

inline SweepAxesConfig parse_sweep_axes(std::istream& in) {
  SweepAxesConfig axes;
  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = detail::trim(line);
    if (text.empty() || text[0] == '#') continue;
    if (text.front() == '[') {
      section = text.substr(1, text.size() - 2);
      continue;
    }
    if (section != "sweep") continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ParseError(line_no, "expected 'key = value'");
    const std::string key = detail::trim(text.substr(0, eq));
    const std::string value = detail::trim(text.substr(eq + 1));
    if (key == "theta") axes.theta = detail::parse_doubles(value, line_no);
    else if (key == "delta") axes.delta = detail::parse_doubles(value, line_no);
    else if (key == "epsilon") axes.epsilon = detail::parse_doubles(value, line_no);
    else if (key == "h") axes.h = detail::parse_doubles(value, line_no);
    else throw ParseError(line_no, "unknown key '" + key + "' in [sweep]");
  }
  return axes;
}

inline std::string serialize_scenario(const Scenario& sc) {
  char buf[64];
  const auto num = [&buf](double x) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  std::ostringstream out;
  const ModelParams& p = sc.params;
  out << "[params]\n";
  out << "delta = " << num(p.delta) << "\n";
  out << "theta = " << num(p.theta) << "\n";
  out << "epsilon = " << num(p.epsilon) << "\n";
  out << "a_max = " << num(p.a_max) << "\n";
  out << "v_max = " << num(p.v_max) << "\n";
  out << "h = " << num(p.h) << "\n";
  out << "h_bar = " << num(p.h_bar) << "\n";
  out << "L = " << num(p.zone_radius) << "\n";
  out << "R = " << num(p.conflict_radius) << "\n";
  out << "\n[sim]\n";
  out << "horizon = " << sc.horizon << "\n";
  out << "seed = " << sc.seed << "\n";
  out << "noise = "
      << (sc.noise == NoiseKind::kZero
              ? "zero"
              : sc.noise == NoiseKind::kUniform ? "uniform" : "adversarial")
      << "\n";
  out << "guard = " << (sc.condition3_guard ? "cond3" : "none") << "\n";
  for (int k = 0; k < 2; ++k) {
    if (sc.routes[k].empty()) continue;
    out << "\n[route." << (k + 1) << "]\n";
    for (const InitialVehicle& veh : sc.routes[k]) {
      out << "vehicle = " << num(veh.x) << " " << num(veh.v) << " "
          << num(veh.u_prev) << "\n";
    }
  }
  for (int k = 0; k < 2; ++k) {
    if (!sc.spawners[k]) continue;
    const Spawner& sp = *sc.spawners[k];
    out << "\n[spawn." << (k + 1) << "]\n";
    out << "period = " << num(sp.period) << "\n";
    out << "speed = " << num(sp.speed) << "\n";
    out << "phase = " << num(sp.phase) << "\n";
  }
  return out.str();
}

}  // namespace crossing
