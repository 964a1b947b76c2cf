#include <gtest/gtest.h>

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "leaksense/student_t.hpp"
#include "support/errors.hpp"
#include "support/oracles.hpp"

using namespace leaksense;
using leaksense::testing::code_of;
using leaksense::testing::student_t_two_sided_p_by_quadrature;

TEST(StudentT, ZeroStatisticGivesOne) {
  for (double dof : {1.0, 2.0, 7.0, 100.0}) EXPECT_DOUBLE_EQ(student_t_two_sided_p(0.0, dof), 1.0);
}

TEST(StudentT, TailLimit) {
  EXPECT_EQ(student_t_two_sided_p(std::numeric_limits<double>::infinity(), 5), 0.0);
  EXPECT_LT(student_t_two_sided_p(1e6, 5), 1e-20);
  EXPECT_LT(student_t_two_sided_p(1e4, 1), 1e-4);
}

TEST(StudentT, ReferenceValue) {
  // Quadrature of the t density with 30-digit arithmetic: 0.07338803477074036...
  EXPECT_NEAR(student_t_two_sided_p(2.0, 10), 0.0733880347707404, 1e-12);
  // Cauchy closed form: 1 - (2 / pi) * atan(t).
  EXPECT_NEAR(student_t_two_sided_p(1.0, 1), 0.5, 1e-14);
}

TEST(StudentT, DomainError) {
  EXPECT_EQ(code_of([] { student_t_two_sided_p(1.0, 0.5); }), ErrorCode::Domain);
  EXPECT_EQ(code_of([] { student_t_two_sided_p(1.0, 0.0); }), ErrorCode::Domain);
}

TEST(StudentT, AgreesWithQuadratureOracle) {
  for (double t : {0.0, 0.1, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0}) {
    for (double dof : {1.0, 2.0, 3.0, 5.0, 10.0, 30.0, 100.0, 500.0}) {
      EXPECT_NEAR(student_t_two_sided_p(t, dof), student_t_two_sided_p_by_quadrature(t, dof),
                  1e-10)
          << "t=" << t << " dof=" << dof;
    }
  }
}

TEST(StudentT, AgreesWithBoostDistribution) {
  for (double t : {0.05, 0.7, 1.96, 2.5, 4.0, 8.0}) {
    for (double dof : {1.0, 4.0, 12.0, 60.0, 1000.0}) {
      const boost::math::students_t dist(dof);
      const double expected = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
      EXPECT_NEAR(student_t_two_sided_p(t, dof), expected, 1e-12) << t << " " << dof;
      EXPECT_NEAR(student_t_two_sided_p(-t, dof), expected, 1e-12);
    }
  }
}

TEST(StudentT, MonotoneInAbsoluteStatistic) {
  for (double dof : {1.0, 3.0, 25.0}) {
    double previous = 1.0;
    for (double t = 0.05; t < 20.0; t += 0.05) {
      const double p = student_t_two_sided_p(t, dof);
      ASSERT_LT(p, previous) << "t=" << t << " dof=" << dof;
      previous = p;
    }
  }
}

TEST(StudentT, CdfIsSymmetric) {
  for (double t : {0.3, 1.2, 4.0}) {
    EXPECT_NEAR(student_t_cdf(t, 6) + student_t_cdf(-t, 6), 1.0, 1e-14);
  }
  EXPECT_DOUBLE_EQ(student_t_cdf(0.0, 3), 0.5);
}

TEST(IncompleteBeta, KnownValues) {
  // I_x(1, 1) = x; I_x(a, 1) = x^a; I_x(1, b) = 1 - (1 - x)^b.
  EXPECT_NEAR(incomplete_beta(1.0, 1.0, 0.3), 0.3, 1e-14);
  EXPECT_NEAR(incomplete_beta(2.5, 1.0, 0.4), std::pow(0.4, 2.5), 1e-14);
  EXPECT_NEAR(incomplete_beta(1.0, 3.0, 0.8), 1.0 - std::pow(0.2, 3.0), 1e-14);
  EXPECT_EQ(incomplete_beta(2.0, 3.0, 0.0), 0.0);
  EXPECT_EQ(incomplete_beta(2.0, 3.0, 1.0), 1.0);
  EXPECT_EQ(code_of([] { incomplete_beta(-1.0, 1.0, 0.5); }), ErrorCode::Domain);
}
