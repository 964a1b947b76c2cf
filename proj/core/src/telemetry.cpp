#include "leaksense/telemetry.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

#include "leaksense/error.hpp"

namespace leaksense {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RejectedInput: return "rejected input";
    case ErrorCode::InapplicableMode: return "inapplicable mode";
    case ErrorCode::Ordering: return "ordering";
    case ErrorCode::DivisionByZero: return "division by zero";
    case ErrorCode::Configuration: return "configuration";
    case ErrorCode::FittingData: return "fitting data";
    case ErrorCode::InsufficientData: return "insufficient data";
    case ErrorCode::DegenerateDesign: return "degenerate design";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Saturation: return "saturation";
    case ErrorCode::Schema: return "schema";
    case ErrorCode::Range: return "range";
    case ErrorCode::ModeConsistency: return "mode consistency";
    case ErrorCode::DegenerateExponent: return "degenerate exponent";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

std::string_view to_string(OperationMode mode) noexcept {
  switch (mode) {
    case OperationMode::Heating: return "heating";
    case OperationMode::Cooling: return "cooling";
    case OperationMode::Idle: return "idle";
  }
  return "unknown";
}

std::optional<OperationMode> parse_mode(std::string_view text) {
  std::string lower;
  lower.reserve(text.size());
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (lower == "heating") return OperationMode::Heating;
  if (lower == "cooling") return OperationMode::Cooling;
  if (lower == "idle") return OperationMode::Idle;
  return std::nullopt;
}

double celsius_to_kelvin(double t_celsius) {
  if (!(t_celsius > kAbsoluteZeroCelsius)) {
    std::ostringstream msg;
    msg << "temperature " << t_celsius << " degC is at or below absolute zero";
    throw Error(ErrorCode::RejectedInput, msg.str());
  }
  return t_celsius - kAbsoluteZeroCelsius;
}

double kelvin_to_celsius(double t_kelvin) { return t_kelvin + kAbsoluteZeroCelsius; }

double mode_temperature(const TelemetryRecord& rec) {
  switch (rec.mode) {
    case OperationMode::Heating:
      return rec.temp_discharge_k;
    case OperationMode::Cooling:
      return 0.5 * (rec.temp_intake_1_k + rec.temp_intake_2_k);
    case OperationMode::Idle:
      break;
  }
  throw Error(ErrorCode::InapplicableMode, "idle records have no mode temperature");
}

void validate_record(const TelemetryRecord& rec) {
  for (double t : {rec.temp_discharge_k, rec.temp_intake_1_k, rec.temp_intake_2_k}) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw Error(ErrorCode::RejectedInput, "temperatures must be positive kelvin");
    }
  }
  if (rec.mass_kg && !(*rec.mass_kg > 0.0)) {
    throw Error(ErrorCode::RejectedInput, "mass must be positive");
  }
}

namespace {

Date day_of(Timestamp ts) { return std::chrono::floor<std::chrono::days>(ts); }

void require_sorted(std::span<const TelemetryRecord> records) {
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].timestamp < records[i - 1].timestamp) {
      std::ostringstream msg;
      msg << "records out of order at index " << i;
      throw Error(ErrorCode::Ordering, msg.str());
    }
  }
}

std::size_t mode_index(OperationMode mode) { return static_cast<std::size_t>(mode); }

}  // namespace

std::vector<DailySample> daily_aggregate(std::span<const TelemetryRecord> records) {
  require_sorted(records);

  std::vector<DailySample> out;
  std::optional<OperationMode> previous_dominant;

  std::size_t begin = 0;
  while (begin < records.size()) {
    const Date day = day_of(records[begin].timestamp);
    std::size_t end = begin;
    while (end < records.size() && day_of(records[end].timestamp) == day) ++end;
    const auto day_records = records.subspan(begin, end - begin);
    begin = end;

    std::array<std::size_t, 2> counts{};  // heating, cooling
    for (const auto& rec : day_records) {
      if (rec.mode != OperationMode::Idle) ++counts[mode_index(rec.mode)];
    }
    if (counts[0] == 0 && counts[1] == 0) continue;

    OperationMode dominant;
    if (counts[0] != counts[1]) {
      dominant = counts[0] > counts[1] ? OperationMode::Heating : OperationMode::Cooling;
    } else {
      dominant = previous_dominant.value_or(OperationMode::Heating);
    }
    previous_dominant = dominant;

    double temp_sum = 0.0;
    double mass_sum = 0.0;
    std::size_t n = 0;
    bool all_mass = true;
    for (const auto& rec : day_records) {
      if (rec.mode != dominant) continue;
      temp_sum += mode_temperature(rec);
      if (rec.mass_kg) {
        mass_sum += *rec.mass_kg;
      } else {
        all_mass = false;
      }
      ++n;
    }

    DailySample sample;
    sample.date = day;
    sample.mode = dominant;
    sample.temp_k = temp_sum / static_cast<double>(n);
    if (all_mass) sample.mass_kg = mass_sum / static_cast<double>(n);
    out.push_back(sample);
  }
  return out;
}

std::vector<DailySample> record_samples(std::span<const TelemetryRecord> records) {
  require_sorted(records);
  std::vector<DailySample> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    if (rec.mode == OperationMode::Idle) continue;
    out.push_back({day_of(rec.timestamp), rec.mode, mode_temperature(rec), rec.mass_kg});
  }
  return out;
}

}  // namespace leaksense
