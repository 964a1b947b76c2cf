#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "leaksense/csv_io.hpp"
#include "leaksense/leak_sensor.hpp"
#include "leaksense/leak_sim.hpp"

namespace leaksense {

// Effective settings of one command invocation.
//
// Config files are flat `key = value` text; `#` starts a comment. Keys:
//
//   window_days, threshold, alpha, unit (kelvin|celsius), with_intercept,
//   daily (aggregate fault-test records per day before fitting),
//   exponent.heating, exponent.cooling,
//   initial_leak, trim_leading, trim_trailing,
//   sim.mode (heating|cooling), sim.cadence_s,
//   sim.S, sim.V, sim.v_z, sim.c_M, sim.c_p, sim.M0, sim.T0, sim.p0, sim.rho0,
//   sim.V0, sim.gamma, sim.z_c, sim.R, sim.t0, sim.t_end, sim.dt,
//   sim.noise_sigma, seed
struct RunConfig {
  std::size_t window_days = 7;
  double threshold = 0.5;
  double alpha = 0.05;
  TemperatureUnit unit = TemperatureUnit::Celsius;
  bool with_intercept = true;
  bool daily = false;
  std::size_t trim_leading = 0;
  std::size_t trim_trailing = 0;
  double initial_leak = 0.0;
  ModeExponents exponents;

  SimParams sim;
  OperationMode sim_mode = OperationMode::Heating;
  double cadence_s = 86400.0;
};

// Applies one key/value pair. Throws Error(Configuration) on unknown keys or
// unparsable values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

// Reads a config file over the current values of `config`.
void load_config_file(const std::filesystem::path& path, RunConfig& config);

// Parses "heating=-0.0874" style exponent assignments.
void apply_exponent(RunConfig& config, std::string_view assignment);

// Human-readable echo of every effective setting, one `key = value` per line.
std::string describe(const RunConfig& config);

}  // namespace leaksense
