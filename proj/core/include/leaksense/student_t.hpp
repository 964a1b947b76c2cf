#pragma once

namespace leaksense {

// Regularized incomplete beta function I_x(a, b) for a, b > 0, 0 <= x <= 1.
double incomplete_beta(double a, double b, double x);

// Student t cumulative distribution function.
double student_t_cdf(double t, double dof);

// Two-sided tail probability 2 * (1 - F(|t|; dof)).
// Throws Error(Domain) when dof < 1.
double student_t_two_sided_p(double t, double dof);

}  // namespace leaksense
