#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leaksense/leak_sensor.hpp"
#include "leaksense/leak_sim.hpp"
#include "leaksense/telemetry.hpp"

namespace leaksense {

enum class TemperatureUnit { Kelvin, Celsius };

std::string_view to_string(TemperatureUnit unit) noexcept;
std::optional<TemperatureUnit> parse_unit(std::string_view text);

inline constexpr std::string_view kTelemetryHeader =
    "timestamp,mode,temp_discharge,temp_intake_1,temp_intake_2,mass";
inline constexpr std::string_view kGroundTruthHeader = "t_s,mass_kg,pressure_pa,temp_k,y";
inline constexpr std::string_view kLeakTraceHeader =
    "date,mode,y_raw,y_smooth,y_mono,detected";

// ISO-8601 UTC, "YYYY-MM-DDTHH:MM:SS" with optional trailing "Z". A bare date
// is accepted as midnight.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);
std::string format_date(Date date);

// Reads telemetry with the column set of kTelemetryHeader (any column order,
// extra columns ignored). Temperatures are converted to kelvin on ingestion.
// Errors carry the 1-based line number: Schema for missing columns or
// malformed fields, Range for temperatures at or below absolute zero and
// non-positive mass, Ordering for decreasing timestamps.
std::vector<TelemetryRecord> parse_telemetry_csv(std::istream& in,
                                                 TemperatureUnit unit,
                                                 std::string_view source = "<stream>");
std::vector<TelemetryRecord> parse_telemetry_csv(const std::filesystem::path& path,
                                                 TemperatureUnit unit);

void write_telemetry_csv(std::ostream& out, std::span<const TelemetryRecord> records,
                         TemperatureUnit unit);
void write_ground_truth_csv(std::ostream& out, const SimTrace& trace);
void write_leak_trace_csv(std::ostream& out, const LeakTrace& trace);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace leaksense
