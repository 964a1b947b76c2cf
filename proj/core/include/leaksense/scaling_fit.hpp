#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "leaksense/telemetry.hpp"

namespace leaksense {

// (log(M / M0), log(T / T0)) for one observation.
struct LogRatioPoint {
  double x = 0.0;
  double y = 0.0;
};

struct ScalingFit {
  double c = 0.0;  // slope: the scaling exponent
  double intercept = 0.0;
  double se_c = 0.0;
  double se_intercept = 0.0;
  std::size_t n = 0;
  double residual_variance = 0.0;
  double r_squared = 0.0;
  bool with_intercept = true;
};

struct SlopeTest {
  double t_value = 0.0;
  int dof = 0;
  double p_value = 1.0;

  bool rejected(double alpha) const noexcept { return p_value < alpha; }
};

inline constexpr double kDefaultSignificance = 0.05;

// Throws Error(FittingData) when any sample lacks a mass, Error(Domain) for
// non-positive references or values.
std::vector<LogRatioPoint> build_log_ratios(std::span<const DailySample> samples,
                                            double initial_mass,
                                            double initial_temp);

// Drops `leading` points from the front and `trailing` from the back. Used to
// exclude transient regimes from the regression.
std::vector<LogRatioPoint> trim_points(std::span<const LogRatioPoint> points,
                                       std::size_t leading,
                                       std::size_t trailing);

// Ordinary least squares of y on x. Without intercept the line is forced
// through the origin and the reported intercept is 0.
// Throws Error(InsufficientData) for n < 3 and Error(DegenerateDesign) when x
// has no spread.
ScalingFit fit_scaling_exponent(std::span<const LogRatioPoint> points,
                                bool with_intercept = true);

// Two-group test of equal slopes using the pooled residual variance.
// With intercepts (the default) the statistic has n_a + n_b - 4 degrees of
// freedom, which matches the interaction-term t test of an ANCOVA with
// separate intercepts. The through-origin variant uses n_a + n_b - 2.
SlopeTest test_slope_homogeneity(std::span<const LogRatioPoint> group_a,
                                 std::span<const LogRatioPoint> group_b,
                                 bool with_intercept = true);

}  // namespace leaksense
