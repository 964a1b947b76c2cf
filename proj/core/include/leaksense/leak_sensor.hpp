#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "leaksense/telemetry.hpp"

namespace leaksense {

// Estimator state for one operation-mode episode.
struct ModeParams {
  OperationMode mode = OperationMode::Heating;
  double c = 0.0;               // scaling exponent trained for this mode
  double initial_temp_k = 0.0;  // T0 of the mode
  double y0 = 0.0;              // leak degree when the mode was first entered
};

using ModeExponents = std::map<OperationMode, double>;

// Remembers the parameters established at the first episode of each mode so
// that returning to a mode reuses its T0 and y0.
class ModeHistory {
 public:
  std::optional<ModeParams> find(OperationMode mode) const;
  void remember(const ModeParams& params);

 private:
  std::map<OperationMode, ModeParams> params_;
};

struct LeakDay {
  Date date{};
  OperationMode mode = OperationMode::Heating;
  double y_raw = 0.0;     // unclamped estimate
  double y_smooth = 0.0;  // trailing moving average of y_raw
  double y_mono = 0.0;    // running maximum of y_smooth clamped to [0, 1]
  bool detected = false;
};

struct LeakTrace {
  std::vector<LeakDay> days;

  std::optional<Date> detection_date() const;
};

struct DiagnoseConfig {
  std::size_t window_days = 7;
  double threshold = 0.5;
  double initial_leak = 0.0;  // y0 at the start of diagnosis
  ModeExponents exponents;
};

// Mean temperature of the first `window_days` samples, which must all share
// one mode. Throws Error(InsufficientData) or Error(ModeConsistency).
double compute_initial_temperature(std::span<const DailySample> samples,
                                   std::size_t window_days);

// Checks c != 0 (DegenerateExponent), T0 > 0 and 0 <= y0 < 1 (Domain).
void validate(const ModeParams& params);

// y = 1 - (1 - y0) * (T / T0)^(1 / c). Not clamped.
double estimate_leak(double temp_k, const ModeParams& params);

// Parameters for a mode entered with leak degree `prev_estimate` carried over
// from the previous mode. Negative estimates are clamped to 0; an estimate of
// 1 or more throws Error(Saturation).
ModeParams on_mode_switch(double prev_estimate, OperationMode new_mode,
                          double new_mode_t0, double new_mode_c);

// As above, but a mode already present in `history` resumes with its stored
// T0 and y0 instead.
ModeParams on_mode_switch(double prev_estimate, OperationMode new_mode,
                          double new_mode_t0, double new_mode_c,
                          const ModeHistory& history);

// Trailing mean over at most `window` values ending at each index.
std::vector<double> moving_average(std::span<const double> values,
                                   std::size_t window);

// Running maximum clamped to [0, 1].
std::vector<double> enforce_monotone(std::span<const double> values);

// First date with y_mono >= threshold. Throws Error(Domain) unless
// 0 < threshold < 1.
std::optional<Date> detect(const LeakTrace& trace, double threshold);

// Runs the full estimation over time-ordered daily samples: per-mode initial
// temperature from the first `window_days` samples of the mode's first
// episode, the leak estimate carried across mode switches, then smoothing,
// monotone enforcement and threshold detection. Idle samples are skipped.
LeakTrace diagnose(std::span<const DailySample> samples,
                   const DiagnoseConfig& config);

}  // namespace leaksense
