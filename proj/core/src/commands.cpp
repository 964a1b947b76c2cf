#include "leaksense/commands.hpp"

#include <algorithm>
#include <sstream>

#include "leaksense/csv_io.hpp"
#include "leaksense/error.hpp"
#include "leaksense/leak_sim.hpp"

namespace leaksense {

namespace fs = std::filesystem;

namespace {

constexpr OperationMode kFitModes[] = {OperationMode::Heating, OperationMode::Cooling};

std::ostringstream report_stream(std::string_view command, const RunConfig& config) {
  std::ostringstream out;
  out.precision(6);
  out << "# leaksense " << command << "\n# effective configuration\n";
  std::istringstream echo(describe(config));
  for (std::string line; std::getline(echo, line);) out << "#   " << line << '\n';
  return out;
}

std::vector<ModeFit> fit_file(const fs::path& telemetry, const FitReference& reference,
                              const RunConfig& config) {
  const auto records = parse_telemetry_csv(telemetry, config.unit);
  const auto samples = config.daily ? daily_aggregate(records) : record_samples(records);
  if (samples.empty()) {
    throw Error(ErrorCode::FittingData, telemetry.string() + ": no heating or cooling samples");
  }

  double initial_mass = 0.0;
  if (reference.initial_mass) {
    initial_mass = *reference.initial_mass;
  } else if (samples.front().mass_kg) {
    initial_mass = *samples.front().mass_kg;
  } else {
    throw Error(ErrorCode::FittingData,
                telemetry.string() + ": first sample has no mass; fitting needs fault-test data");
  }

  std::vector<ModeFit> fits;
  for (const OperationMode mode : kFitModes) {
    std::vector<DailySample> mode_samples;
    std::copy_if(samples.begin(), samples.end(), std::back_inserter(mode_samples),
                 [mode](const DailySample& s) { return s.mode == mode; });
    if (mode_samples.empty()) continue;

    ModeFit mf;
    mf.mode = mode;
    mf.initial_mass = initial_mass;
    const auto t0 = reference.initial_temp.find(mode);
    mf.initial_temp = t0 != reference.initial_temp.end() ? t0->second : mode_samples.front().temp_k;
    const auto points = build_log_ratios(mode_samples, mf.initial_mass, mf.initial_temp);
    mf.points = trim_points(points, config.trim_leading, config.trim_trailing);
    mf.fit = fit_scaling_exponent(mf.points, config.with_intercept);
    fits.push_back(std::move(mf));
  }
  return fits;
}

}  // namespace

SimulateResult cmd_simulate(const RunConfig& config, const fs::path& out_dir) {
  const SimParams params = make_sim_params(config.sim);
  const SimTrace trace = simulate_analytic(params);
  const auto records = export_fault_test(trace, config.sim_mode, config.cadence_s);

  SimulateResult result;
  result.exponent = control_exponent(params.c_m, params.c_p);
  result.telemetry_path = out_dir / "telemetry.csv";
  result.ground_truth_path = out_dir / "ground_truth.csv";
  result.records = records.size();

  std::ostringstream telemetry;
  write_telemetry_csv(telemetry, records, config.unit);
  write_file_atomic(result.telemetry_path, telemetry.str());
  std::ostringstream truth;
  write_ground_truth_csv(truth, trace);
  write_file_atomic(result.ground_truth_path, truth.str());

  RunConfig effective = config;
  effective.sim = params;
  auto out = report_stream("simulate", effective);
  out << "ground-truth exponent c = " << result.exponent << '\n'
      << "records = " << result.records << '\n'
      << "trace samples = " << trace.size() << '\n'
      << "final leak degree y = " << trace.leak_degree.back() << '\n'
      << "telemetry: " << result.telemetry_path.string() << '\n'
      << "ground truth: " << result.ground_truth_path.string() << '\n';
  result.report = out.str();
  return result;
}

FitResult cmd_fit(const fs::path& telemetry, const FitReference& reference,
                  const RunConfig& config, const std::optional<fs::path>& csv_out) {
  FitResult result;
  result.fits = fit_file(telemetry, reference, config);

  auto out = report_stream("fit", config);
  out << "file: " << telemetry.string() << '\n';
  out << "mode     c            intercept    se_c         se_intercept n      r2\n";
  for (const auto& mf : result.fits) {
    const auto& f = mf.fit;
    out << to_string(mf.mode) << "  " << f.c << "  " << f.intercept << "  " << f.se_c << "  "
        << f.se_intercept << "  " << f.n << "  " << f.r_squared << '\n';
  }
  result.report = out.str();

  if (csv_out) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "mode,c,intercept,se_c,se_intercept,n,residual_variance,r_squared,M0,T0\n";
    for (const auto& mf : result.fits) {
      const auto& f = mf.fit;
      csv << to_string(mf.mode) << ',' << f.c << ',' << f.intercept << ',' << f.se_c << ','
          << f.se_intercept << ',' << f.n << ',' << f.residual_variance << ',' << f.r_squared
          << ',' << mf.initial_mass << ',' << mf.initial_temp << '\n';
    }
    write_file_atomic(*csv_out, csv.str());
  }
  return result;
}

TTestResult cmd_ttest(const fs::path& telemetry_a, const FitReference& reference_a,
                      const fs::path& telemetry_b, const FitReference& reference_b,
                      const RunConfig& config) {
  const auto fits_a = fit_file(telemetry_a, reference_a, config);
  const auto fits_b = fit_file(telemetry_b, reference_b, config);

  TTestResult result;
  for (const auto& a : fits_a) {
    const auto b = std::find_if(fits_b.begin(), fits_b.end(),
                                [&](const ModeFit& f) { return f.mode == a.mode; });
    if (b == fits_b.end()) continue;
    ModeTTest t;
    t.mode = a.mode;
    t.fit_a = a.fit;
    t.fit_b = b->fit;
    t.test = test_slope_homogeneity(a.points, b->points, config.with_intercept);
    t.rejected = t.test.rejected(config.alpha);
    result.tests.push_back(t);
  }
  if (result.tests.empty()) {
    throw Error(ErrorCode::Configuration, "the two files share no operation mode");
  }

  auto out = report_stream("ttest", config);
  out << "A: " << telemetry_a.string() << "\nB: " << telemetry_b.string() << '\n';
  out << "mode     c_A          c_B          t value      dof    p value      verdict\n";
  for (const auto& t : result.tests) {
    out << to_string(t.mode) << "  " << t.fit_a.c << "  " << t.fit_b.c << "  " << t.test.t_value
        << "  " << t.test.dof << "  " << t.test.p_value << "  "
        << (t.rejected ? "parallelism rejected" : "parallelism not rejected") << '\n';
  }
  result.report = out.str();
  return result;
}

DiagnoseResult cmd_diagnose(const fs::path& telemetry, const RunConfig& config,
                            const std::optional<fs::path>& trace_out) {
  const auto records = parse_telemetry_csv(telemetry, config.unit);
  const auto samples = daily_aggregate(records);

  DiagnoseConfig dc;
  dc.window_days = config.window_days;
  dc.threshold = config.threshold;
  dc.initial_leak = config.initial_leak;
  dc.exponents = config.exponents;

  DiagnoseResult result;
  result.trace = diagnose(samples, dc);
  result.detection = detect(result.trace, config.threshold);

  if (trace_out) {
    std::ostringstream csv;
    write_leak_trace_csv(csv, result.trace);
    write_file_atomic(*trace_out, csv.str());
  }

  auto out = report_stream("diagnose", config);
  out << "file: " << telemetry.string() << '\n'
      << "days = " << result.trace.days.size() << '\n';
  if (!result.trace.days.empty()) {
    out << "final y_mono = " << result.trace.days.back().y_mono << '\n';
  }
  if (result.detection) {
    out << "leak detected on " << format_date(*result.detection) << '\n';
  } else {
    out << "no leak detected\n";
  }
  result.report = out.str();
  return result;
}

}  // namespace leaksense
