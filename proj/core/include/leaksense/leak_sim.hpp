#pragma once

#include <cstdint>
#include <vector>

#include "leaksense/telemetry.hpp"

namespace leaksense {

// Physical and control parameters of a single leak scenario with constant
// leak velocity. All quantities in SI units, temperatures in kelvin.
//
// The control parameters model the refrigerant replenishment of the
// expansion valve (c_M) and the pressurisation of the compressor (c_p) as
// fractional compensation of the leak-driven decay:
//
//   d(rho)/dt = -(1 - c_M) * rho * k
//   dp/dt     = -(1 - c_p) * p   * k
//   dT/dt     =  (c_p - c_M) * T * k        with k = (S / V) * v_z
//
// The leak starts at t0; before that every state is held at its initial
// value. The simulated horizon is [0, t_end] sampled every dt.
struct SimParams {
  double hole_area = 1e-6;         // S, m^2
  double hole_volume = 1e-3;       // V, m^3
  double leak_velocity = 1e-4;     // v_z, m/s
  double c_m = 0.1;                // EEV control parameter, [0, 1]
  double c_p = 0.17866;            // CMP control parameter, [0, 1]
  double initial_mass = 18.0;      // M0, kg
  double initial_temp = 330.0;     // T0, K
  double initial_pressure = 0.0;   // p0, Pa; 0 means derive from the equation of state
  double initial_density = 0.0;    // rho0, kg/m^3; 0 means derive as M0 / V0
  double pipe_volume = 0.01;       // V0, m^3
  double gamma = 1.13;             // ratio of specific heats
  double compressibility = 0.9;    // z_c
  double gas_constant = 81.5;      // R, J/(kg K)
  double leak_start = 0.0;         // t0, s
  double t_end = 86400.0;          // s
  double dt = 60.0;                // s
  double noise_sigma = 0.0;        // std-dev of Gaussian noise on log(T/T0)
  std::uint64_t seed = 0;

  // S / V * v_z, the uncontrolled relative decay rate (1/s).
  double decay_rate() const noexcept {
    return hole_area / hole_volume * leak_velocity;
  }
  // Internal energy density at t0, p0 / (gamma - 1).
  double initial_energy_density() const noexcept {
    return initial_pressure / (gamma - 1.0);
  }
};

// Fills derived fields (rho0 = M0 / V0, p0 = z_c rho0 R T0) when left at zero
// and validates every invariant. Throws Error(Configuration) on violation,
// including an inconsistent p0 or rho0 that was supplied explicitly.
SimParams make_sim_params(SimParams params);

// Same checks as make_sim_params without filling anything in.
void validate(const SimParams& params);

struct SimTrace {
  std::vector<double> times;        // s
  std::vector<double> mass;         // kg
  std::vector<double> pressure;     // Pa
  std::vector<double> temperature;  // K, noise applied when configured
  std::vector<double> leak_degree;  // 1 - M / M0
  double initial_mass = 0.0;
  double initial_temp = 0.0;

  std::size_t size() const noexcept { return times.size(); }
};

// Ground-truth scaling exponent c = -(c_p - c_M) / (1 - c_M).
// Throws Error(DivisionByZero) when c_M == 1.
double control_exponent(double c_m, double c_p);

// Closed-form solution of the controlled leak dynamics.
SimTrace simulate_analytic(const SimParams& params);

// Fixed-step classical RK4 integration of the same dynamics. The step that
// straddles t0 is split so the switch-on of the leak lands on a node.
// Throws Error(Configuration) when (1 - c_M) * k * dt >= 0.1.
SimTrace simulate_numeric(const SimParams& params);

// 2015-01-01T00:00:00Z
Timestamp default_epoch() noexcept;

// Renders a trace as fault-test telemetry: one record every `cadence_s`
// seconds, starting at `epoch` for trace time 0. The simulated temperature is
// written to the mode-relevant sensor(s); off-mode sensors read T0.
std::vector<TelemetryRecord> export_fault_test(const SimTrace& trace,
                                               OperationMode mode,
                                               double cadence_s,
                                               Timestamp epoch = default_epoch());

}  // namespace leaksense
