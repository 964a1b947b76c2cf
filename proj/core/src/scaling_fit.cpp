#include "leaksense/scaling_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "leaksense/error.hpp"
#include "leaksense/student_t.hpp"

namespace leaksense {

namespace {

struct Regression {
  double slope = 0.0;
  double intercept = 0.0;
  double sxx = 0.0;  // centred (or raw, through origin) sum of squares of x
  double sse = 0.0;
  double syy = 0.0;
  double x_mean = 0.0;
  std::size_t n = 0;
  int dof = 0;
};

Regression regress(std::span<const LogRatioPoint> points, bool with_intercept) {
  const std::size_t n = points.size();
  if (n < 3) {
    std::ostringstream msg;
    msg << "scaling fit needs at least 3 points (got " << n << ")";
    throw Error(ErrorCode::InsufficientData, msg.str());
  }
  const bool constant_x = std::all_of(points.begin(), points.end(), [&](const auto& p) {
    return p.x == points.front().x;
  });
  if (constant_x) {
    throw Error(ErrorCode::DegenerateDesign,
                "no spread in log mass ratio; the data contain no mass change");
  }

  Regression r;
  r.n = n;
  const double count = static_cast<double>(n);
  if (with_intercept) {
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& p : points) {
      sx += p.x;
      sy += p.y;
    }
    const double x_mean = sx / count;
    const double y_mean = sy / count;
    double sxy = 0.0;
    for (const auto& p : points) {
      const double dx = p.x - x_mean;
      const double dy = p.y - y_mean;
      r.sxx += dx * dx;
      sxy += dx * dy;
      r.syy += dy * dy;
    }
    r.slope = sxy / r.sxx;
    r.intercept = y_mean - r.slope * x_mean;
    r.x_mean = x_mean;
    r.dof = static_cast<int>(n) - 2;
  } else {
    double sxy = 0.0;
    for (const auto& p : points) {
      r.sxx += p.x * p.x;
      sxy += p.x * p.y;
      r.syy += p.y * p.y;
    }
    r.slope = sxy / r.sxx;
    r.dof = static_cast<int>(n) - 1;
  }
  for (const auto& p : points) {
    const double e = p.y - r.intercept - r.slope * p.x;
    r.sse += e * e;
  }
  return r;
}

}  // namespace

std::vector<LogRatioPoint> build_log_ratios(std::span<const DailySample> samples,
                                            double initial_mass, double initial_temp) {
  if (!(initial_mass > 0.0) || !(initial_temp > 0.0)) {
    throw Error(ErrorCode::Domain, "reference mass and temperature must be positive");
  }
  std::vector<LogRatioPoint> points;
  points.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!s.mass_kg) {
      std::ostringstream msg;
      msg << "sample " << i << " has no measured mass; fitting needs fault-test data";
      throw Error(ErrorCode::FittingData, msg.str());
    }
    if (!(*s.mass_kg > 0.0) || !(s.temp_k > 0.0)) {
      throw Error(ErrorCode::Domain, "mass and temperature must be positive");
    }
    points.push_back({std::log(*s.mass_kg / initial_mass), std::log(s.temp_k / initial_temp)});
  }
  return points;
}

std::vector<LogRatioPoint> trim_points(std::span<const LogRatioPoint> points,
                                       std::size_t leading, std::size_t trailing) {
  if (leading + trailing >= points.size()) return {};
  return {points.begin() + static_cast<std::ptrdiff_t>(leading),
          points.end() - static_cast<std::ptrdiff_t>(trailing)};
}

ScalingFit fit_scaling_exponent(std::span<const LogRatioPoint> points, bool with_intercept) {
  const Regression r = regress(points, with_intercept);
  const double s2 = r.sse / r.dof;

  ScalingFit fit;
  fit.c = r.slope;
  fit.intercept = r.intercept;
  fit.n = r.n;
  fit.residual_variance = s2;
  fit.se_c = std::sqrt(s2 / r.sxx);
  fit.se_intercept =
      with_intercept ? std::sqrt(s2 * (1.0 / static_cast<double>(r.n) + r.x_mean * r.x_mean / r.sxx))
                     : 0.0;
  // Through the origin r^2 is the uncentred coefficient of determination.
  fit.r_squared = r.syy > 0.0 ? std::clamp(1.0 - r.sse / r.syy, 0.0, 1.0) : 1.0;
  fit.with_intercept = with_intercept;
  return fit;
}

SlopeTest test_slope_homogeneity(std::span<const LogRatioPoint> group_a,
                                 std::span<const LogRatioPoint> group_b,
                                 bool with_intercept) {
  Regression a;
  Regression b;
  try {
    a = regress(group_a, with_intercept);
    b = regress(group_b, with_intercept);
  } catch (const Error& e) {
    throw Error(ErrorCode::InsufficientData,
                std::string("slope homogeneity test: ") + e.what());
  }

  const int params = with_intercept ? 4 : 2;
  SlopeTest test;
  test.dof = static_cast<int>(a.n + b.n) - params;
  const double pooled = (a.sse + b.sse) / test.dof;
  const double se_diff = std::sqrt(pooled * (1.0 / a.sxx + 1.0 / b.sxx));
  const double diff = a.slope - b.slope;
  if (se_diff > 0.0) {
    test.t_value = diff / se_diff;
  } else if (diff == 0.0) {
    test.t_value = 0.0;
  } else {
    test.t_value = std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  test.p_value = student_t_two_sided_p(test.t_value, test.dof);
  return test;
}

}  // namespace leaksense
