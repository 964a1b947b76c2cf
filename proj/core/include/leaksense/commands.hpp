#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leaksense/config.hpp"
#include "leaksense/leak_sensor.hpp"
#include "leaksense/scaling_fit.hpp"

namespace leaksense {

// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDetection = 2;

struct SimulateResult {
  double exponent = 0.0;
  std::filesystem::path telemetry_path;
  std::filesystem::path ground_truth_path;
  std::size_t records = 0;
  std::string report;
};

// Writes <out_dir>/telemetry.csv and <out_dir>/ground_truth.csv.
SimulateResult cmd_simulate(const RunConfig& config,
                            const std::filesystem::path& out_dir);

// Reference values for the log ratios of a fault-test file. Unset values
// default to the first sample (mass of the first record; per-mode
// temperature of the mode's first sample).
struct FitReference {
  std::optional<double> initial_mass;
  std::map<OperationMode, double> initial_temp;
};

struct ModeFit {
  OperationMode mode = OperationMode::Heating;
  double initial_mass = 0.0;
  double initial_temp = 0.0;
  ScalingFit fit;
  std::vector<LogRatioPoint> points;
};

struct FitResult {
  std::vector<ModeFit> fits;
  std::string report;
};

// Fits one exponent per operation mode present. When `csv_out` is given a
// machine-readable table is written there.
FitResult cmd_fit(const std::filesystem::path& telemetry, const FitReference& reference,
                  const RunConfig& config,
                  const std::optional<std::filesystem::path>& csv_out = std::nullopt);

struct ModeTTest {
  OperationMode mode = OperationMode::Heating;
  ScalingFit fit_a;
  ScalingFit fit_b;
  SlopeTest test;
  bool rejected = false;
};

struct TTestResult {
  std::vector<ModeTTest> tests;
  std::string report;
};

// Homogeneity-of-slopes test for every mode present in both files.
// Throws Error(Configuration) when the files share no mode.
TTestResult cmd_ttest(const std::filesystem::path& telemetry_a,
                      const FitReference& reference_a,
                      const std::filesystem::path& telemetry_b,
                      const FitReference& reference_b, const RunConfig& config);

struct DiagnoseResult {
  LeakTrace trace;
  std::optional<Date> detection;
  std::string report;
};

// Daily aggregation plus the full diagnosis pipeline. Writes the trace CSV to
// `trace_out` when given.
DiagnoseResult cmd_diagnose(const std::filesystem::path& telemetry,
                            const RunConfig& config,
                            const std::optional<std::filesystem::path>& trace_out);

}  // namespace leaksense
