#include "leaksense/leak_sensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "leaksense/error.hpp"

namespace leaksense {

std::optional<ModeParams> ModeHistory::find(OperationMode mode) const {
  if (auto it = params_.find(mode); it != params_.end()) return it->second;
  return std::nullopt;
}

void ModeHistory::remember(const ModeParams& params) { params_[params.mode] = params; }

std::optional<Date> LeakTrace::detection_date() const {
  for (const auto& day : days) {
    if (day.detected) return day.date;
  }
  return std::nullopt;
}

double compute_initial_temperature(std::span<const DailySample> samples,
                                   std::size_t window_days) {
  if (window_days == 0) throw Error(ErrorCode::Domain, "window must be at least one day");
  if (samples.size() < window_days) {
    std::ostringstream msg;
    msg << "initial temperature needs " << window_days << " samples, got " << samples.size();
    throw Error(ErrorCode::InsufficientData, msg.str());
  }
  const auto head = samples.first(window_days);
  double sum = 0.0;
  for (const auto& s : head) {
    if (s.mode != head.front().mode) {
      throw Error(ErrorCode::ModeConsistency,
                  "initial-temperature window spans more than one operation mode");
    }
    sum += s.temp_k;
  }
  return sum / static_cast<double>(window_days);
}

void validate(const ModeParams& params) {
  if (params.c == 0.0 || !std::isfinite(params.c)) {
    throw Error(ErrorCode::DegenerateExponent, "scaling exponent must be non-zero");
  }
  if (!(params.initial_temp_k > 0.0)) {
    throw Error(ErrorCode::Domain, "initial temperature must be positive");
  }
  if (!(params.y0 >= 0.0 && params.y0 < 1.0)) {
    throw Error(ErrorCode::Domain, "initial leak degree must lie in [0, 1)");
  }
}

double estimate_leak(double temp_k, const ModeParams& params) {
  validate(params);
  if (!(temp_k > 0.0)) throw Error(ErrorCode::Domain, "temperature must be positive");
  return 1.0 - (1.0 - params.y0) * std::pow(temp_k / params.initial_temp_k, 1.0 / params.c);
}

ModeParams on_mode_switch(double prev_estimate, OperationMode new_mode, double new_mode_t0,
                          double new_mode_c) {
  if (!(prev_estimate < 1.0)) {
    throw Error(ErrorCode::Saturation, "leak degree reached total loss before the mode switch");
  }
  if (new_mode == OperationMode::Idle) {
    throw Error(ErrorCode::InapplicableMode, "cannot estimate leakage in idle mode");
  }
  ModeParams params{new_mode, new_mode_c, new_mode_t0, std::max(0.0, prev_estimate)};
  validate(params);
  return params;
}

ModeParams on_mode_switch(double prev_estimate, OperationMode new_mode, double new_mode_t0,
                          double new_mode_c, const ModeHistory& history) {
  if (auto stored = history.find(new_mode)) return *stored;
  return on_mode_switch(prev_estimate, new_mode, new_mode_t0, new_mode_c);
}

std::vector<double> moving_average(std::span<const double> values, std::size_t window) {
  if (window == 0) throw Error(ErrorCode::Domain, "moving-average window must be >= 1");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t first = i + 1 >= window ? i + 1 - window : 0;
    double sum = 0.0;
    for (std::size_t j = first; j <= i; ++j) sum += values[j];
    out[i] = sum / static_cast<double>(i - first + 1);
  }
  return out;
}

std::vector<double> enforce_monotone(std::span<const double> values) {
  std::vector<double> out(values.size());
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) {
    running = std::max(running, values[i]);
    out[i] = std::clamp(running, 0.0, 1.0);
  }
  return out;
}

namespace {

void require_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::Domain, "detection threshold must lie in (0, 1)");
  }
}

}  // namespace

std::optional<Date> detect(const LeakTrace& trace, double threshold) {
  require_threshold(threshold);
  for (const auto& day : trace.days) {
    if (day.y_mono >= threshold) return day.date;
  }
  return std::nullopt;
}

LeakTrace diagnose(std::span<const DailySample> samples, const DiagnoseConfig& config) {
  require_threshold(config.threshold);
  if (config.window_days == 0) {
    throw Error(ErrorCode::Configuration, "window_days must be at least 1");
  }
  if (!(config.initial_leak >= 0.0 && config.initial_leak < 1.0)) {
    throw Error(ErrorCode::Configuration, "initial leak degree must lie in [0, 1)");
  }

  std::vector<DailySample> active;
  active.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.mode == OperationMode::Idle) continue;
    if (!active.empty() && s.date < active.back().date) {
      throw Error(ErrorCode::Ordering, "daily samples must be in date order");
    }
    if (!config.exponents.contains(s.mode)) {
      std::ostringstream msg;
      msg << "no scaling exponent configured for " << to_string(s.mode) << " mode";
      throw Error(ErrorCode::Configuration, msg.str());
    }
    active.push_back(s);
  }

  LeakTrace trace;
  if (active.empty()) return trace;
  trace.days.reserve(active.size());

  ModeHistory history;
  double previous_estimate = config.initial_leak;
  std::size_t begin = 0;
  while (begin < active.size()) {
    const OperationMode mode = active[begin].mode;
    std::size_t end = begin;
    while (end < active.size() && active[end].mode == mode) ++end;
    const auto episode = std::span<const DailySample>(active).subspan(begin, end - begin);
    const double c = config.exponents.at(mode);

    ModeParams params;
    std::size_t warmup = 0;
    if (auto stored = history.find(mode)) {
      params = *stored;
    } else {
      // The very first episode must supply a full window; a later mode entered
      // for fewer days than the window uses whatever that episode has.
      if (begin == 0 && episode.size() < config.window_days) {
        std::ostringstream msg;
        msg << "the first " << config.window_days
            << " days must share one operation mode to establish T0";
        throw Error(ErrorCode::InsufficientData, msg.str());
      }
      warmup = std::min(config.window_days, episode.size());
      const double t0 = compute_initial_temperature(episode, warmup);
      params = on_mode_switch(previous_estimate, mode, t0, c);
      history.remember(params);
    }

    for (std::size_t i = 0; i < episode.size(); ++i) {
      LeakDay day;
      day.date = episode[i].date;
      day.mode = mode;
      day.y_raw = i < warmup ? params.y0 : estimate_leak(episode[i].temp_k, params);
      trace.days.push_back(day);
    }
    previous_estimate = trace.days.back().y_raw;
    begin = end;
  }

  std::vector<double> raw;
  raw.reserve(trace.days.size());
  for (const auto& d : trace.days) raw.push_back(d.y_raw);
  const auto smooth = moving_average(raw, config.window_days);
  const auto mono = enforce_monotone(smooth);
  for (std::size_t i = 0; i < trace.days.size(); ++i) {
    trace.days[i].y_smooth = smooth[i];
    trace.days[i].y_mono = mono[i];
    trace.days[i].detected = mono[i] >= config.threshold;
  }
  return trace;
}

}  // namespace leaksense
