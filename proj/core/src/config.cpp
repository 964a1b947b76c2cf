#include "leaksense/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unordered_map>

#include "leaksense/error.hpp"

namespace leaksense {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::Configuration,
              "invalid value '" + std::string(value) + "' for '" + std::string(key) + "'");
}

double to_double(std::string_view key, std::string_view value) {
  value = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
    bad_value(key, value);
  }
  return out;
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view value) {
  value = trim(value);
  Int out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
    bad_value(key, value);
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view value) {
  value = trim(value);
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad_value(key, value);
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view)>;

Setter real(double RunConfig::*field) {
  return [field](RunConfig& c, std::string_view k, std::string_view v) { c.*field = to_double(k, v); };
}

Setter sim_real(double SimParams::*field) {
  return [field](RunConfig& c, std::string_view k, std::string_view v) {
    c.sim.*field = to_double(k, v);
  };
}

const std::unordered_map<std::string_view, Setter>& setters() {
  static const std::unordered_map<std::string_view, Setter> table{
      {"window_days",
       [](RunConfig& c, auto k, auto v) { c.window_days = to_integer<std::size_t>(k, v); }},
      {"threshold", real(&RunConfig::threshold)},
      {"alpha", real(&RunConfig::alpha)},
      {"significance_level", real(&RunConfig::alpha)},
      {"unit",
       [](RunConfig& c, auto k, auto v) {
         const auto unit = parse_unit(v);
         if (!unit) bad_value(k, v);
         c.unit = *unit;
       }},
      {"with_intercept", [](RunConfig& c, auto k, auto v) { c.with_intercept = to_bool(k, v); }},
      {"daily", [](RunConfig& c, auto k, auto v) { c.daily = to_bool(k, v); }},
      {"trim_leading",
       [](RunConfig& c, auto k, auto v) { c.trim_leading = to_integer<std::size_t>(k, v); }},
      {"trim_trailing",
       [](RunConfig& c, auto k, auto v) { c.trim_trailing = to_integer<std::size_t>(k, v); }},
      {"initial_leak", real(&RunConfig::initial_leak)},
      {"exponent.heating",
       [](RunConfig& c, auto k, auto v) { c.exponents[OperationMode::Heating] = to_double(k, v); }},
      {"exponent.cooling",
       [](RunConfig& c, auto k, auto v) { c.exponents[OperationMode::Cooling] = to_double(k, v); }},
      {"sim.mode",
       [](RunConfig& c, auto k, auto v) {
         const auto mode = parse_mode(v);
         if (!mode || *mode == OperationMode::Idle) bad_value(k, v);
         c.sim_mode = *mode;
       }},
      {"sim.cadence_s", real(&RunConfig::cadence_s)},
      {"sim.S", sim_real(&SimParams::hole_area)},
      {"sim.V", sim_real(&SimParams::hole_volume)},
      {"sim.v_z", sim_real(&SimParams::leak_velocity)},
      {"sim.c_M", sim_real(&SimParams::c_m)},
      {"sim.c_p", sim_real(&SimParams::c_p)},
      {"sim.M0", sim_real(&SimParams::initial_mass)},
      {"sim.T0", sim_real(&SimParams::initial_temp)},
      {"sim.p0", sim_real(&SimParams::initial_pressure)},
      {"sim.rho0", sim_real(&SimParams::initial_density)},
      {"sim.V0", sim_real(&SimParams::pipe_volume)},
      {"sim.gamma", sim_real(&SimParams::gamma)},
      {"sim.z_c", sim_real(&SimParams::compressibility)},
      {"sim.R", sim_real(&SimParams::gas_constant)},
      {"sim.t0", sim_real(&SimParams::leak_start)},
      {"sim.t_end", sim_real(&SimParams::t_end)},
      {"sim.dt", sim_real(&SimParams::dt)},
      {"sim.noise_sigma", sim_real(&SimParams::noise_sigma)},
      {"seed",
       [](RunConfig& c, auto k, auto v) { c.sim.seed = to_integer<std::uint64_t>(k, v); }},
  };
  return table;
}

}  // namespace

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) {
    throw Error(ErrorCode::Configuration, "unknown configuration key '" + std::string(key) + "'");
  }
  it->second(config, key, trim(value));
}

void load_config_file(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": expected 'key = value'";
      throw Error(ErrorCode::Configuration, msg.str());
    }
    try {
      apply_setting(config, view.substr(0, eq), view.substr(eq + 1));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": " << e.what();
      throw Error(e.code(), msg.str());
    }
  }
}

void apply_exponent(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::Configuration,
                "exponent must look like heating=-0.0874 (got '" + std::string(assignment) + "')");
  }
  const auto mode = parse_mode(assignment.substr(0, eq));
  if (!mode || *mode == OperationMode::Idle) {
    throw Error(ErrorCode::Configuration,
                "exponent mode must be heating or cooling (got '" + std::string(assignment) + "')");
  }
  config.exponents[*mode] = to_double("exponent", assignment.substr(eq + 1));
}

std::string describe(const RunConfig& c) {
  std::ostringstream out;
  out.precision(6);
  out << "window_days = " << c.window_days << '\n'
      << "threshold = " << c.threshold << '\n'
      << "alpha = " << c.alpha << '\n'
      << "unit = " << to_string(c.unit) << '\n'
      << "with_intercept = " << (c.with_intercept ? "true" : "false") << '\n'
      << "daily = " << (c.daily ? "true" : "false") << '\n'
      << "trim_leading = " << c.trim_leading << '\n'
      << "trim_trailing = " << c.trim_trailing << '\n'
      << "initial_leak = " << c.initial_leak << '\n';
  for (const auto& [mode, exponent] : c.exponents) {
    out << "exponent." << to_string(mode) << " = " << exponent << '\n';
  }
  const auto& s = c.sim;
  out << "sim.mode = " << to_string(c.sim_mode) << '\n'
      << "sim.cadence_s = " << c.cadence_s << '\n'
      << "sim.S = " << s.hole_area << '\n'
      << "sim.V = " << s.hole_volume << '\n'
      << "sim.v_z = " << s.leak_velocity << '\n'
      << "sim.c_M = " << s.c_m << '\n'
      << "sim.c_p = " << s.c_p << '\n'
      << "sim.M0 = " << s.initial_mass << '\n'
      << "sim.T0 = " << s.initial_temp << '\n'
      << "sim.p0 = " << s.initial_pressure << '\n'
      << "sim.rho0 = " << s.initial_density << '\n'
      << "sim.V0 = " << s.pipe_volume << '\n'
      << "sim.gamma = " << s.gamma << '\n'
      << "sim.z_c = " << s.compressibility << '\n'
      << "sim.R = " << s.gas_constant << '\n'
      << "sim.t0 = " << s.leak_start << '\n'
      << "sim.t_end = " << s.t_end << '\n'
      << "sim.dt = " << s.dt << '\n'
      << "sim.noise_sigma = " << s.noise_sigma << '\n'
      << "seed = " << s.seed << '\n';
  return out.str();
}

}  // namespace leaksense
