#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "leaksense/commands.hpp"
#include "leaksense/csv_io.hpp"
#include "leaksense/leak_sim.hpp"
#include "support/errors.hpp"
#include "support/scenarios.hpp"

using namespace leaksense;
using leaksense::testing::code_of;
using leaksense::testing::kSecondsPerDay;
using leaksense::testing::TempDir;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

// 150 days of daily heating records, leak from day 14, half the charge gone
// around day 100.
RunConfig leak_config() {
  RunConfig c;
  c.sim = leaksense::testing::daily_leak_params(0.1, 0.17866, 86.0, 150.0, 14.0, 0.0, 1);
  c.cadence_s = kSecondsPerDay;
  return c;
}

void write_records(const fs::path& path, const std::vector<TelemetryRecord>& records,
                   TemperatureUnit unit) {
  std::ostringstream out;
  write_telemetry_csv(out, records, unit);
  write_file_atomic(path, out.str());
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LEAKSENSE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST(CmdSimulate, EchoesGroundTruthExponent) {
  TempDir dir("sim_echo");
  RunConfig c = leak_config();
  c.sim.c_m = 0.1;
  c.sim.c_p = 0.5;
  const auto result = cmd_simulate(c, dir.path());
  EXPECT_NEAR(result.exponent, -4.0 / 9.0, 1e-15);
  EXPECT_NE(result.report.find("ground-truth exponent c = -0.444444"), std::string::npos);
  EXPECT_NE(result.report.find("sim.c_p = 0.5"), std::string::npos);
  EXPECT_EQ(result.records, 151u);
  EXPECT_EQ(line_count(result.telemetry_path), 152u);
  EXPECT_EQ(slurp(result.ground_truth_path).substr(0, 32), "t_s,mass_kg,pressure_pa,temp_k,y");
}

TEST(CmdSimulate, NoiseFreeRunIsRecoveredByFit) {
  TempDir dir("sim_fit");
  RunConfig c = leak_config();
  c.sim.c_m = 0.1;
  c.sim.c_p = 0.5;
  const auto sim = cmd_simulate(c, dir.path());
  const auto fit = cmd_fit(sim.telemetry_path, {}, c, dir / "fit.csv");
  ASSERT_EQ(fit.fits.size(), 1u);
  EXPECT_EQ(fit.fits[0].mode, OperationMode::Heating);
  EXPECT_NEAR(fit.fits[0].fit.c, sim.exponent, 1e-9);
  EXPECT_EQ(line_count(dir / "fit.csv"), 2u);
}

TEST(CmdSimulate, DegenerateHorizonGivesSingleRows) {
  TempDir dir("sim_single");
  RunConfig c = leak_config();
  c.sim.t_end = 0.0;
  c.sim.leak_start = 0.0;
  const auto sim = cmd_simulate(c, dir.path());
  EXPECT_EQ(line_count(sim.telemetry_path), 2u);
  EXPECT_EQ(line_count(sim.ground_truth_path), 2u);
}

TEST(CmdSimulate, InvalidParamsAreConfigurationErrors) {
  TempDir dir("sim_bad");
  RunConfig c = leak_config();
  c.sim.c_p = 1.5;
  EXPECT_EQ(code_of([&] { cmd_simulate(c, dir.path()); }), ErrorCode::Configuration);
}

TEST(CmdSimulate, DeterministicForSeed) {
  TempDir a("sim_det_a");
  TempDir b("sim_det_b");
  RunConfig c = leak_config();
  c.sim.noise_sigma = 0.005;
  c.sim.seed = 77;
  cmd_simulate(c, a.path());
  cmd_simulate(c, b.path());
  EXPECT_EQ(slurp(a / "telemetry.csv"), slurp(b / "telemetry.csv"));
  EXPECT_EQ(slurp(a / "ground_truth.csv"), slurp(b / "ground_truth.csv"));
}

TEST(CmdFit, SplitsByMode) {
  TempDir dir("fit_modes");
  RunConfig c = leak_config();
  const auto heating = simulate_analytic(c.sim);
  auto cooling_params = c.sim;
  cooling_params.c_p = 0.1 + 0.0104 * 0.9;
  const auto cooling = simulate_analytic(cooling_params);
  auto records = export_fault_test(heating, OperationMode::Heating, kSecondsPerDay);
  const auto later = default_epoch() + std::chrono::days{200};
  const auto cooling_records =
      export_fault_test(cooling, OperationMode::Cooling, kSecondsPerDay, later);
  records.insert(records.end(), cooling_records.begin(), cooling_records.end());
  write_records(dir / "lab.csv", records, c.unit);

  const auto result = cmd_fit(dir / "lab.csv", {}, c);
  ASSERT_EQ(result.fits.size(), 2u);
  EXPECT_NEAR(result.fits[0].fit.c, control_exponent(0.1, 0.17866), 1e-9);
  EXPECT_EQ(result.fits[1].mode, OperationMode::Cooling);
  EXPECT_NEAR(result.fits[1].fit.c, -0.0104, 1e-9);
}

TEST(CmdFit, ConstantMassIsDegenerate) {
  TempDir dir("fit_const");
  RunConfig c = leak_config();
  c.sim.leak_start = c.sim.t_end;
  const auto sim = cmd_simulate(c, dir.path());
  EXPECT_EQ(code_of([&] { cmd_fit(sim.telemetry_path, {}, c); }), ErrorCode::DegenerateDesign);
}

TEST(CmdFit, MissingMassIsFittingDataError) {
  TempDir dir("fit_nomass");
  const RunConfig c;
  std::ofstream(dir / "field.csv") << kTelemetryHeader << "\n"
                                   << "2015-01-01T00:00:00Z,heating,60,10,10,\n"
                                   << "2015-01-02T00:00:00Z,heating,61,10,10,\n"
                                   << "2015-01-03T00:00:00Z,heating,62,10,10,\n";
  EXPECT_EQ(code_of([&] { cmd_fit(dir / "field.csv", {}, c); }), ErrorCode::FittingData);
}

TEST(CmdFit, DailyAggregationOption) {
  TempDir dir("fit_daily");
  RunConfig c = leak_config();
  c.cadence_s = 6 * 3600.0;
  const auto sim = cmd_simulate(c, dir.path());
  c.daily = true;
  const auto daily = cmd_fit(sim.telemetry_path, {}, c);
  c.daily = false;
  const auto raw = cmd_fit(sim.telemetry_path, {}, c);
  EXPECT_EQ(raw.fits[0].fit.n, 4 * daily.fits[0].fit.n - 3);
  EXPECT_NEAR(raw.fits[0].fit.c, sim.exponent, 1e-9);
  // Averaging temperature and mass within a day bends the power law only
  // at second order over a few percent of mass change per day.
  EXPECT_NEAR(daily.fits[0].fit.c, sim.exponent, 1e-5);
}

TEST(CmdTTest, CopyIsNotRejected) {
  TempDir dir("tt_copy");
  RunConfig c = leak_config();
  c.sim.noise_sigma = 0.002;
  const auto sim = cmd_simulate(c, dir.path());
  fs::copy_file(sim.telemetry_path, dir / "copy.csv");
  const auto result = cmd_ttest(sim.telemetry_path, {}, dir / "copy.csv", {}, c);
  ASSERT_EQ(result.tests.size(), 1u);
  EXPECT_EQ(result.tests[0].test.t_value, 0.0);
  EXPECT_DOUBLE_EQ(result.tests[0].test.p_value, 1.0);
  EXPECT_FALSE(result.tests[0].rejected);
  EXPECT_NE(result.report.find("parallelism not rejected"), std::string::npos);
}

TEST(CmdTTest, DifferentControlsAreRejected) {
  TempDir a("tt_diff_a");
  TempDir b("tt_diff_b");
  RunConfig c = leak_config();
  c.sim.noise_sigma = 0.002;
  cmd_simulate(c, a.path());
  c.sim.c_p = 0.3;
  c.sim.seed = 2;
  cmd_simulate(c, b.path());
  const auto result = cmd_ttest(a / "telemetry.csv", {}, b / "telemetry.csv", {}, c);
  EXPECT_TRUE(result.tests[0].rejected);
  EXPECT_NE(result.report.find("parallelism rejected"), std::string::npos);
}

TEST(CmdTTest, NoSharedModeIsConfigurationError) {
  TempDir a("tt_none_a");
  TempDir b("tt_none_b");
  RunConfig c = leak_config();
  cmd_simulate(c, a.path());
  c.sim_mode = OperationMode::Cooling;
  cmd_simulate(c, b.path());
  EXPECT_EQ(code_of([&] { cmd_ttest(a / "telemetry.csv", {}, b / "telemetry.csv", {}, c); }),
            ErrorCode::Configuration);
}

TEST(CmdDiagnose, NoLeakNoDetection) {
  TempDir dir("dx_none");
  RunConfig c = leak_config();
  c.sim.leak_start = c.sim.t_end;
  const auto sim = cmd_simulate(c, dir.path());
  c.exponents[OperationMode::Heating] = sim.exponent;
  const auto result = cmd_diagnose(sim.telemetry_path, c, dir / "trace.csv");
  EXPECT_FALSE(result.detection.has_value());
  EXPECT_NE(result.report.find("no leak detected"), std::string::npos);
  EXPECT_EQ(line_count(dir / "trace.csv"), 152u);
  EXPECT_EQ(slurp(dir / "trace.csv").substr(0, 40), "date,mode,y_raw,y_smooth,y_mono,detected");
}

TEST(CmdDiagnose, LeakCrossingThresholdIsReported) {
  TempDir dir("dx_leak");
  RunConfig c = leak_config();
  const auto sim = cmd_simulate(c, dir.path());
  c.exponents[OperationMode::Heating] = sim.exponent;
  const auto result = cmd_diagnose(sim.telemetry_path, c, std::nullopt);
  ASSERT_TRUE(result.detection.has_value());
  EXPECT_NE(result.report.find("leak detected on " + format_date(*result.detection)),
            std::string::npos);
}

TEST(CmdDiagnose, MissingCoolingExponent) {
  TempDir dir("dx_missing");
  RunConfig c = leak_config();
  const auto heating = simulate_analytic(c.sim);
  auto records = export_fault_test(heating, OperationMode::Heating, kSecondsPerDay);
  const auto cooling = export_fault_test(heating, OperationMode::Cooling, kSecondsPerDay,
                                         default_epoch() + std::chrono::days{200});
  records.insert(records.end(), cooling.begin(), cooling.end());
  write_records(dir / "mixed.csv", records, c.unit);
  c.exponents[OperationMode::Heating] = -0.0874;
  EXPECT_EQ(code_of([&] { cmd_diagnose(dir / "mixed.csv", c, std::nullopt); }),
            ErrorCode::Configuration);
}

TEST(Cli, ExitCodes) {
  TempDir dir("cli");
  const std::string out = (dir / "sim").string();
  ASSERT_EQ(run_cli("simulate --out " + out +
                    " --set sim.t_end=12960000 --set sim.dt=3600 --set sim.t0=1209600"),
            0);
  const std::string telemetry = (dir / "sim/telemetry.csv").string();
  EXPECT_EQ(run_cli("fit " + telemetry), 0);
  EXPECT_EQ(run_cli("ttest " + telemetry + " " + telemetry), 0);
  EXPECT_EQ(run_cli("diagnose " + telemetry + " --exponent heating=-0.0874 --out " +
                    (dir / "trace.csv").string()),
            2);
  EXPECT_TRUE(fs::exists(dir / "trace.csv"));
  EXPECT_EQ(run_cli("diagnose " + telemetry + " --exponent heating=-0.0874 --threshold 0.99"), 0);
  EXPECT_EQ(run_cli("diagnose " + telemetry), 1);
  EXPECT_EQ(run_cli("diagnose " + telemetry + " --exponent heating=-0.0874 --threshold 1.5"), 1);
  EXPECT_EQ(run_cli("simulate --out " + out + " --set sim.c_M=2"), 1);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  TempDir dir("cli_conf");
  std::ofstream(dir / "run.conf") << "sim.t_end = 12960000\nsim.dt = 3600\nsim.t0 = 1209600\n"
                                     "exponent.heating = -0.0874\nthreshold = 0.99\n";
  const std::string conf = (dir / "run.conf").string();
  ASSERT_EQ(run_cli("simulate --config " + conf + " --out " + dir.path().string()), 0);
  const std::string telemetry = (dir / "telemetry.csv").string();
  EXPECT_EQ(run_cli("diagnose " + telemetry + " --config " + conf), 0);
  EXPECT_EQ(run_cli("diagnose " + telemetry + " --config " + conf + " --threshold 0.5"), 2);
}
