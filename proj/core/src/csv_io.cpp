#include "leaksense/csv_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "leaksense/error.hpp"

namespace leaksense {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

[[noreturn]] void line_error(ErrorCode code, std::string_view source, std::size_t line,
                             const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw Error(code, msg.str());
}

std::string shortest(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

}  // namespace

std::string_view to_string(TemperatureUnit unit) noexcept {
  return unit == TemperatureUnit::Kelvin ? "kelvin" : "celsius";
}

std::optional<TemperatureUnit> parse_unit(std::string_view text) {
  std::string lower;
  for (char ch : trim(text)) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "kelvin" || lower == "k") return TemperatureUnit::Kelvin;
  if (lower == "celsius" || lower == "c") return TemperatureUnit::Celsius;
  return std::nullopt;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  text = trim(text);
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned mo = 0;
  unsigned d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), mo) ||
      !parse_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok()) return std::nullopt;
  auto rest = text.substr(10);
  int hh = 0;
  int mm = 0;
  int ss = 0;
  if (!rest.empty()) {
    if ((rest.front() != 'T' && rest.front() != ' ') || rest.size() < 9 || rest[3] != ':' ||
        rest[6] != ':') {
      return std::nullopt;
    }
    if (!parse_int(rest.substr(1, 2), hh) || !parse_int(rest.substr(4, 2), mm) ||
        !parse_int(rest.substr(7, 2), ss)) {
      return std::nullopt;
    }
    rest.remove_prefix(9);
    if (rest == "Z" || rest == "+00:00") rest = {};
    if (!rest.empty()) return std::nullopt;
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  }
  return sys_seconds{sys_days{ymd}} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_date(Date date) {
  const std::chrono::year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  const auto day = floor<days>(ts);
  const hh_mm_ss tod{ts - day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(tod.hours().count()),
                static_cast<int>(tod.minutes().count()), static_cast<int>(tod.seconds().count()));
  return format_date(day) + buf;
}

std::vector<TelemetryRecord> parse_telemetry_csv(std::istream& in, TemperatureUnit unit,
                                                 std::string_view source) {
  static constexpr std::array<std::string_view, 6> kColumns{
      "timestamp", "mode", "temp_discharge", "temp_intake_1", "temp_intake_2", "mass"};

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) line_error(ErrorCode::Schema, source, line_no, "missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split(line, ',');
  std::array<std::size_t, kColumns.size()> index{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    const auto it = std::find(header.begin(), header.end(), kColumns[c]);
    if (it == header.end()) {
      line_error(ErrorCode::Schema, source, line_no,
                 "missing column '" + std::string(kColumns[c]) + "'");
    }
    index[c] = static_cast<std::size_t>(it - header.begin());
  }

  const auto to_kelvin = [&](std::string_view field, std::size_t ln, std::string_view name) {
    const auto value = parse_double(field);
    if (!value) {
      line_error(ErrorCode::Schema, source, ln,
                 "malformed " + std::string(name) + " '" + std::string(field) + "'");
    }
    const double kelvin =
        unit == TemperatureUnit::Celsius ? *value - kAbsoluteZeroCelsius : *value;
    const bool below_zero =
        unit == TemperatureUnit::Celsius ? !(*value > kAbsoluteZeroCelsius) : !(kelvin > 0.0);
    if (below_zero || !std::isfinite(kelvin)) {
      line_error(ErrorCode::Range, source, ln,
                 std::string(name) + " " + std::string(field) + " is at or below absolute zero");
    }
    return kelvin;
  };

  std::vector<TelemetryRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() < header.size()) {
      line_error(ErrorCode::Schema, source, line_no, "row has fewer fields than the header");
    }

    TelemetryRecord rec;
    const auto ts = parse_timestamp(fields[index[0]]);
    if (!ts) {
      line_error(ErrorCode::Schema, source, line_no,
                 "malformed timestamp '" + std::string(fields[index[0]]) + "'");
    }
    rec.timestamp = *ts;
    const auto mode = parse_mode(fields[index[1]]);
    if (!mode) {
      line_error(ErrorCode::Schema, source, line_no,
                 "unknown mode '" + std::string(fields[index[1]]) + "'");
    }
    rec.mode = *mode;
    rec.temp_discharge_k = to_kelvin(fields[index[2]], line_no, kColumns[2]);
    rec.temp_intake_1_k = to_kelvin(fields[index[3]], line_no, kColumns[3]);
    rec.temp_intake_2_k = to_kelvin(fields[index[4]], line_no, kColumns[4]);
    if (const auto mass_field = fields[index[5]]; !mass_field.empty()) {
      const auto mass = parse_double(mass_field);
      if (!mass) {
        line_error(ErrorCode::Schema, source, line_no,
                   "malformed mass '" + std::string(mass_field) + "'");
      }
      if (!(*mass > 0.0)) line_error(ErrorCode::Range, source, line_no, "mass must be positive");
      rec.mass_kg = *mass;
    }
    if (!records.empty() && rec.timestamp < records.back().timestamp) {
      line_error(ErrorCode::Ordering, source, line_no, "timestamp earlier than previous row");
    }
    records.push_back(rec);
  }
  return records;
}

std::vector<TelemetryRecord> parse_telemetry_csv(const std::filesystem::path& path,
                                                 TemperatureUnit unit) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return parse_telemetry_csv(in, unit, path.string());
}

void write_telemetry_csv(std::ostream& out, std::span<const TelemetryRecord> records,
                         TemperatureUnit unit) {
  const auto temp = [unit](double kelvin) {
    return shortest(unit == TemperatureUnit::Celsius ? kelvin_to_celsius(kelvin) : kelvin);
  };
  out << kTelemetryHeader << '\n';
  for (const auto& r : records) {
    out << format_timestamp(r.timestamp) << ',' << to_string(r.mode) << ','
        << temp(r.temp_discharge_k) << ',' << temp(r.temp_intake_1_k) << ','
        << temp(r.temp_intake_2_k) << ',';
    if (r.mass_kg) out << shortest(*r.mass_kg);
    out << '\n';
  }
}

void write_ground_truth_csv(std::ostream& out, const SimTrace& trace) {
  out << kGroundTruthHeader << '\n';
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << shortest(trace.times[i]) << ',' << shortest(trace.mass[i]) << ','
        << shortest(trace.pressure[i]) << ',' << shortest(trace.temperature[i]) << ','
        << shortest(trace.leak_degree[i]) << '\n';
  }
}

void write_leak_trace_csv(std::ostream& out, const LeakTrace& trace) {
  out << kLeakTraceHeader << '\n';
  for (const auto& d : trace.days) {
    out << format_date(d.date) << ',' << to_string(d.mode) << ',' << shortest(d.y_raw) << ','
        << shortest(d.y_smooth) << ',' << shortest(d.y_mono) << ',' << (d.detected ? 1 : 0)
        << '\n';
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::Io, "cannot move " + tmp.string() + " to " + path.string());
  }
}

}  // namespace leaksense
