// Command-line front end: simulate, fit, ttest, diagnose.
//
// Exit codes: 0 success (no detection), 2 leak detected, 1 error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leaksense/commands.hpp"
#include "leaksense/config.hpp"
#include "leaksense/error.hpp"

namespace fs = std::filesystem;
using namespace leaksense;

namespace {

// Flags shared by every subcommand. Values left unset keep whatever the
// config file (or the defaults) provided.
struct CommonFlags {
  std::optional<fs::path> config_file;
  std::vector<std::string> settings;
  std::optional<std::size_t> window_days;
  std::optional<double> threshold;
  std::optional<double> alpha;
  std::optional<std::string> unit;
  bool no_intercept = false;
  std::optional<std::uint64_t> seed;
  std::optional<fs::path> out;

  void add_to(CLI::App& app) {
    app.add_option("--config", config_file, "flat key = value config file")->check(CLI::ExistingFile);
    app.add_option("--set", settings, "override one config key, e.g. --set sim.c_M=0.1");
    app.add_option("--window-days", window_days, "moving-average / T0 window (days)");
    app.add_option("--threshold", threshold, "leak-degree alarm threshold");
    app.add_option("--alpha", alpha, "significance level of the slope test");
    app.add_option("--unit", unit, "temperature unit of CSV files (kelvin|celsius)");
    app.add_flag("--no-intercept", no_intercept, "fit through the origin");
    app.add_option("--seed", seed, "noise seed for simulate");
    app.add_option("--out", out, "output directory (simulate) or file (fit, diagnose)");
  }

  RunConfig resolve() const {
    RunConfig config;
    if (config_file) load_config_file(*config_file, config);
    for (const auto& kv : settings) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::Configuration, "--set expects key=value (got '" + kv + "')");
      }
      apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (window_days) apply_setting(config, "window_days", std::to_string(*window_days));
    if (threshold) config.threshold = *threshold;
    if (alpha) config.alpha = *alpha;
    if (unit) apply_setting(config, "unit", *unit);
    if (no_intercept) config.with_intercept = false;
    if (seed) config.sim.seed = *seed;
    return config;
  }
};

struct ReferenceFlags {
  std::optional<double> m0;
  std::optional<double> t0_heating;
  std::optional<double> t0_cooling;

  void add_to(CLI::App& app, const std::string& suffix = "") {
    app.add_option("--m0" + suffix, m0, "initial refrigerant mass (kg)");
    app.add_option("--t0-heating" + suffix, t0_heating,
                   "initial heating temperature, in the CSV unit");
    app.add_option("--t0-cooling" + suffix, t0_cooling,
                   "initial cooling temperature, in the CSV unit");
  }

  FitReference resolve(TemperatureUnit unit) const {
    const auto to_k = [unit](double t) {
      return unit == TemperatureUnit::Celsius ? celsius_to_kelvin(t) : t;
    };
    FitReference ref;
    ref.initial_mass = m0;
    if (t0_heating) ref.initial_temp[OperationMode::Heating] = to_k(*t0_heating);
    if (t0_cooling) ref.initial_temp[OperationMode::Cooling] = to_k(*t0_cooling);
    return ref;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"leaksense: scaling-law soft sensor for refrigerant leak detection"};
  app.require_subcommand(1);

  CommonFlags sim_flags;
  std::optional<std::string> sim_mode;
  std::optional<double> cadence;
  auto* simulate = app.add_subcommand("simulate", "simulate a controlled leak and export telemetry");
  sim_flags.add_to(*simulate);
  simulate->add_option("--mode", sim_mode, "sensor routing of the export (heating|cooling)");
  simulate->add_option("--cadence", cadence, "seconds between exported records");

  CommonFlags fit_flags;
  ReferenceFlags fit_ref;
  fs::path fit_input;
  bool fit_daily = false;
  auto* fit = app.add_subcommand("fit", "fit the scaling exponent per operation mode");
  fit->add_option("telemetry", fit_input, "fault-test telemetry CSV")->required()->check(CLI::ExistingFile);
  fit_flags.add_to(*fit);
  fit_ref.add_to(*fit);
  fit->add_flag("--daily", fit_daily, "average records per day before fitting");

  CommonFlags tt_flags;
  ReferenceFlags ref_a;
  ReferenceFlags ref_b;
  fs::path tt_a;
  fs::path tt_b;
  auto* ttest = app.add_subcommand("ttest", "test equality of scaling exponents of two systems");
  ttest->add_option("telemetry_a", tt_a, "first fault-test CSV")->required()->check(CLI::ExistingFile);
  ttest->add_option("telemetry_b", tt_b, "second fault-test CSV")->required()->check(CLI::ExistingFile);
  tt_flags.add_to(*ttest);
  ref_a.add_to(*ttest, "-a");
  ref_b.add_to(*ttest, "-b");

  CommonFlags dx_flags;
  fs::path dx_input;
  std::vector<std::string> exponents;
  std::optional<double> initial_leak;
  auto* diag = app.add_subcommand("diagnose", "estimate the leak degree over logged telemetry");
  diag->add_option("telemetry", dx_input, "field telemetry CSV")->required()->check(CLI::ExistingFile);
  dx_flags.add_to(*diag);
  diag->add_option("--exponent", exponents, "scaling exponent per mode, e.g. heating=-0.0874");
  diag->add_option("--initial-leak", initial_leak, "leak degree at the start of the data");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      RunConfig config = sim_flags.resolve();
      if (sim_mode) apply_setting(config, "sim.mode", *sim_mode);
      if (cadence) config.cadence_s = *cadence;
      const auto result = cmd_simulate(config, sim_flags.out.value_or(fs::path{"."}));
      std::cout << result.report;
      return kExitOk;
    }
    if (*fit) {
      RunConfig config = fit_flags.resolve();
      if (fit_daily) config.daily = true;
      const auto result = cmd_fit(fit_input, fit_ref.resolve(config.unit), config, fit_flags.out);
      std::cout << result.report;
      return kExitOk;
    }
    if (*ttest) {
      const RunConfig config = tt_flags.resolve();
      const auto result = cmd_ttest(tt_a, ref_a.resolve(config.unit), tt_b,
                                    ref_b.resolve(config.unit), config);
      std::cout << result.report;
      return kExitOk;
    }
    if (*diag) {
      RunConfig config = dx_flags.resolve();
      for (const auto& e : exponents) apply_exponent(config, e);
      if (initial_leak) config.initial_leak = *initial_leak;
      const auto result = cmd_diagnose(dx_input, config, dx_flags.out);
      std::cout << result.report;
      return result.detection ? kExitDetection : kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
