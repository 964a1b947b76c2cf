#include "leaksense/leak_sim.hpp"

#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "leaksense/error.hpp"

namespace leaksense {

namespace {

constexpr double kConsistencyTolerance = 1e-9;
constexpr double kMaxRk4StepRate = 0.1;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::Configuration, what);
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << name << " must be positive and finite (got " << value << ")";
    config_error(msg.str());
  }
}

void require_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream msg;
    msg << name << " must lie in [0, 1] (got " << value << ")";
    config_error(msg.str());
  }
}

bool relatively_close(double a, double b) {
  return std::abs(a - b) <= kConsistencyTolerance * std::max(std::abs(a), std::abs(b));
}

std::size_t step_count(const SimParams& p) {
  const double steps = p.t_end / p.dt;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) {
    config_error("t_end must be an integer multiple of dt");
  }
  return static_cast<std::size_t>(rounded);
}

SimTrace empty_trace(const SimParams& p) {
  const std::size_t n = step_count(p) + 1;
  SimTrace trace;
  trace.times.resize(n);
  for (std::size_t i = 0; i < n; ++i) trace.times[i] = static_cast<double>(i) * p.dt;
  trace.mass.resize(n);
  trace.pressure.resize(n);
  trace.temperature.resize(n);
  trace.leak_degree.resize(n);
  trace.initial_mass = p.initial_mass;
  trace.initial_temp = p.initial_temp;
  return trace;
}

// Multiplicative lognormal noise on temperature, then ground-truth leak degree.
void finish_trace(const SimParams& p, SimTrace& trace) {
  if (p.noise_sigma > 0.0) {
    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> noise(0.0, p.noise_sigma);
    for (double& t : trace.temperature) t *= std::exp(noise(rng));
  }
  for (std::size_t i = 0; i < trace.size(); ++i) {
    trace.leak_degree[i] = 1.0 - trace.mass[i] / p.initial_mass;
  }
}

}  // namespace

Timestamp default_epoch() noexcept {
  using namespace std::chrono;
  return sys_seconds{sys_days{year{2015} / January / 1}};
}

void validate(const SimParams& p) {
  require_positive(p.hole_area, "S");
  require_positive(p.hole_volume, "V");
  require_positive(p.leak_velocity, "v_z");
  require_positive(p.initial_mass, "M0");
  require_positive(p.initial_temp, "T0");
  require_positive(p.initial_pressure, "p0");
  require_positive(p.initial_density, "rho0");
  require_positive(p.pipe_volume, "V0");
  require_positive(p.dt, "dt");
  require_positive(p.compressibility, "z_c");
  require_positive(p.gas_constant, "R");
  require_unit_interval(p.c_m, "c_M");
  require_unit_interval(p.c_p, "c_p");
  if (!(p.gamma > 1.0)) config_error("gamma must exceed 1");
  if (!(p.leak_start >= 0.0)) config_error("t0 must be non-negative");
  if (!(p.t_end >= p.leak_start)) config_error("t_end must not precede t0");
  if (!(p.noise_sigma >= 0.0)) config_error("noise_sigma must be non-negative");
  if (!relatively_close(p.initial_mass, p.initial_density * p.pipe_volume)) {
    config_error("inconsistent initial state: M0 != rho0 * V0");
  }
  const double eos_pressure =
      p.compressibility * p.initial_density * p.gas_constant * p.initial_temp;
  if (!relatively_close(p.initial_pressure, eos_pressure)) {
    config_error("inconsistent initial state: p0 != z_c * rho0 * R * T0");
  }
  step_count(p);
}

SimParams make_sim_params(SimParams p) {
  if (p.initial_density == 0.0 && p.pipe_volume > 0.0) {
    p.initial_density = p.initial_mass / p.pipe_volume;
  }
  if (p.initial_pressure == 0.0) {
    p.initial_pressure =
        p.compressibility * p.initial_density * p.gas_constant * p.initial_temp;
  }
  validate(p);
  return p;
}

double control_exponent(double c_m, double c_p) {
  if (c_m == 1.0) {
    throw Error(ErrorCode::DivisionByZero,
                "c_M = 1 fully compensates the leak; the scaling exponent is undefined");
  }
  if (!(c_m >= 0.0 && c_m < 1.0) || !(c_p >= 0.0 && c_p <= 1.0)) {
    throw Error(ErrorCode::Domain, "control parameters must satisfy 0 <= c_M < 1, 0 <= c_p <= 1");
  }
  return -(c_p - c_m) / (1.0 - c_m);
}

SimTrace simulate_analytic(const SimParams& p) {
  validate(p);
  SimTrace trace = empty_trace(p);
  const double k = p.decay_rate();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double elapsed = std::max(0.0, trace.times[i] - p.leak_start);
    trace.mass[i] = p.initial_mass * std::exp(-(1.0 - p.c_m) * k * elapsed);
    trace.pressure[i] = p.initial_pressure * std::exp(-(1.0 - p.c_p) * k * elapsed);
    trace.temperature[i] = p.initial_temp * std::exp((p.c_p - p.c_m) * k * elapsed);
  }
  finish_trace(p, trace);
  return trace;
}

SimTrace simulate_numeric(const SimParams& p) {
  validate(p);
  const double k = p.decay_rate();
  if ((1.0 - p.c_m) * k * p.dt >= kMaxRk4StepRate) {
    config_error("step too large for RK4: (1 - c_M) * k * dt must stay below 0.1");
  }

  // State: density, pressure, temperature.
  using State = std::array<double, 3>;
  const State rates{-(1.0 - p.c_m) * k, -(1.0 - p.c_p) * k, (p.c_p - p.c_m) * k};
  const auto rhs = [&rates](const State& s) {
    return State{rates[0] * s[0], rates[1] * s[1], rates[2] * s[2]};
  };
  const auto rk4 = [&rhs](const State& s, double h) {
    const auto axpy = [](const State& a, double f, const State& b) {
      return State{a[0] + f * b[0], a[1] + f * b[1], a[2] + f * b[2]};
    };
    const State k1 = rhs(s);
    const State k2 = rhs(axpy(s, 0.5 * h, k1));
    const State k3 = rhs(axpy(s, 0.5 * h, k2));
    const State k4 = rhs(axpy(s, h, k3));
    State out;
    for (std::size_t j = 0; j < 3; ++j) {
      out[j] = s[j] + h / 6.0 * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
    }
    return out;
  };

  SimTrace trace = empty_trace(p);
  State state{p.initial_density, p.initial_pressure, p.initial_temp};
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i > 0) {
      // The right-hand side vanishes before t0, so only the part of the step
      // after the leak starts is integrated.
      const double h = trace.times[i] - std::max(trace.times[i - 1], p.leak_start);
      if (h > 0.0) state = rk4(state, h);
    }
    trace.mass[i] = state[0] * p.pipe_volume;
    trace.pressure[i] = state[1];
    trace.temperature[i] = state[2];
  }
  finish_trace(p, trace);
  return trace;
}

std::vector<TelemetryRecord> export_fault_test(const SimTrace& trace, OperationMode mode,
                                               double cadence_s, Timestamp epoch) {
  if (mode == OperationMode::Idle) {
    throw Error(ErrorCode::InapplicableMode, "fault-test export needs heating or cooling");
  }
  if (!(cadence_s > 0.0)) throw Error(ErrorCode::Configuration, "cadence must be positive");
  if (trace.size() == 0) return {};

  const double start = trace.times.front();
  const double horizon = trace.times.back() - start;
  const double dt = trace.size() > 1 ? trace.times[1] - trace.times[0] : 1.0;

  std::vector<TelemetryRecord> out;
  for (std::size_t j = 0;; ++j) {
    const double offset = static_cast<double>(j) * cadence_s;
    if (offset > horizon * (1.0 + 1e-12)) break;
    // Latest trace sample at or before the cadence instant.
    auto idx = static_cast<std::size_t>(std::floor(offset / dt + 1e-9));
    idx = std::min(idx, trace.size() - 1);

    TelemetryRecord rec;
    rec.timestamp = epoch + std::chrono::seconds(std::llround(trace.times[idx]));
    rec.mode = mode;
    rec.temp_discharge_k = trace.initial_temp;
    rec.temp_intake_1_k = trace.initial_temp;
    rec.temp_intake_2_k = trace.initial_temp;
    if (mode == OperationMode::Heating) {
      rec.temp_discharge_k = trace.temperature[idx];
    } else {
      rec.temp_intake_1_k = trace.temperature[idx];
      rec.temp_intake_2_k = trace.temperature[idx];
    }
    rec.mass_kg = trace.mass[idx];
    out.push_back(rec);
  }
  return out;
}

}  // namespace leaksense
