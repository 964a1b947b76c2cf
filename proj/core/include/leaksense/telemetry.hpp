#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace leaksense {

using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

enum class OperationMode { Heating, Cooling, Idle };

std::string_view to_string(OperationMode mode) noexcept;

// Case-insensitive; accepts "heating", "cooling", "idle".
std::optional<OperationMode> parse_mode(std::string_view text);

inline constexpr double kAbsoluteZeroCelsius = -273.15;

// One logged reading. Temperatures are absolute (kelvin), mass in kg.
struct TelemetryRecord {
  Timestamp timestamp{};
  OperationMode mode = OperationMode::Idle;
  double temp_discharge_k = 0.0;
  double temp_intake_1_k = 0.0;
  double temp_intake_2_k = 0.0;
  std::optional<double> mass_kg;  // laboratory (fault-test) data only

  friend bool operator==(const TelemetryRecord&, const TelemetryRecord&) = default;
};

// A per-day (or per-record, for fault-test fitting) observation in the
// mode-relevant temperature.
struct DailySample {
  Date date{};
  OperationMode mode = OperationMode::Heating;
  double temp_k = 0.0;
  std::optional<double> mass_kg;

  friend bool operator==(const DailySample&, const DailySample&) = default;
};

// Throws Error(RejectedInput) at or below absolute zero.
double celsius_to_kelvin(double t_celsius);
double kelvin_to_celsius(double t_kelvin);

// Heating reads the discharge pipe; cooling reads the mean of the two intake
// sensors. Idle has no mode-relevant temperature.
double mode_temperature(const TelemetryRecord& rec);

// Checks the record invariants (positive temperatures, positive mass).
void validate_record(const TelemetryRecord& rec);

// Buckets records into UTC calendar days. Each day with at least one non-idle
// record yields one sample in that day's dominant mode (most records; ties go
// to the previous day's dominant mode, then Heating). Records must be sorted.
std::vector<DailySample> daily_aggregate(std::span<const TelemetryRecord> records);

// One sample per non-idle record, without any daily averaging. Used for
// fault-test data where the record cadence is finer than a day.
std::vector<DailySample> record_samples(std::span<const TelemetryRecord> records);

}  // namespace leaksense
