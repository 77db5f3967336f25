#include "jsccplan/special_functions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

namespace {

using jsccplan::exp_integral_e1;
using jsccplan::exp_integral_e1_of_log;
using jsccplan::min_threshold;
using jsccplan::min_threshold_log;

TEST(ExpIntegralE1, FrozenReferenceValues) {
    // Quadrature-oracle values, frozen to full double precision.
    EXPECT_NEAR(exp_integral_e1(1.0), 0.21938393439552027, 0.21938393439552027 * 1e-12);
    EXPECT_NEAR(exp_integral_e1(10.0), 4.1569689296853243e-6, 4.1569689296853243e-6 * 1e-12);
    EXPECT_NEAR(exp_integral_e1(0.5), 0.55977359477616081, 0.55977359477616081 * 1e-12);
    EXPECT_NEAR(exp_integral_e1(1e-6), 13.238295893062491, 13.238295893062491 * 1e-12);
    EXPECT_NEAR(exp_integral_e1(50.0), 3.783264029550459e-24, 3.783264029550459e-24 * 1e-12);
}

TEST(ExpIntegralE1, RejectsNonPositiveArgument) {
    EXPECT_THROW(exp_integral_e1(0.0), std::domain_error);
    EXPECT_THROW(exp_integral_e1(-1.0), std::domain_error);
}

TEST(ExpIntegralE1, StrictlyDecreasing) {
    double prev = exp_integral_e1(1e-6);
    for (int i = 1; i <= 120; ++i) {
        const double g = std::exp(std::log(1e-6) + (std::log(50.0) - std::log(1e-6)) * i / 120);
        const double value = exp_integral_e1(g);
        EXPECT_LT(value, prev) << "g=" << g;
        prev = value;
    }
}

TEST(ExpIntegralE1, SandwichBound) {
    // e^{-g}/(g+1) < E1(g) < e^{-g}/g for every g > 0.
    for (int i = 0; i <= 120; ++i) {
        const double g = std::exp(std::log(1e-6) + (std::log(50.0) - std::log(1e-6)) * i / 120);
        const double value = exp_integral_e1(g);
        EXPECT_GT(value, std::exp(-g) / (g + 1.0)) << "g=" << g;
        EXPECT_LT(value, std::exp(-g) / g) << "g=" << g;
    }
}

TEST(ExpIntegralE1, LogArgumentFormAgreesOnNormalRange) {
    for (const double g : {1e-5, 0.1, 1.0, 7.0, 42.0}) {
        const double direct = exp_integral_e1(g);
        const double via_log = exp_integral_e1_of_log(std::log(g));
        EXPECT_NEAR(via_log, direct, direct * 1e-12) << "g=" << g;
    }
}

TEST(MinThreshold, RoundTripsThroughE1) {
    EXPECT_NEAR(min_threshold(exp_integral_e1(0.5)), 0.5, 0.5 * 1e-9);
    EXPECT_NEAR(min_threshold(exp_integral_e1(3.0)), 3.0, 3.0 * 1e-9);
    for (const double c : {13.0, 1.0, 0.2, 1e-3, 1e-10, 3.8e-24}) {
        const double d = min_threshold(c);
        EXPECT_NEAR(exp_integral_e1(d), c, c * 1e-8) << "c=" << c;
    }
}

TEST(MinThreshold, InvertsFrozenE1Value) {
    // Truncated-digit input, so the root sits ~1.2e-8 away from exactly 1.
    EXPECT_NEAR(min_threshold(0.21938393), 1.0, 1e-6);
}

TEST(MinThreshold, HugeCeilingStaysPositiveAndLogFormRoundTrips) {
    // E1(d) = 1e6 has d ~ exp(-1e6), far below double range: the plain form
    // clamps to the smallest normal double, the log form stays exact.
    const double clamped = min_threshold(1e6);
    EXPECT_GT(clamped, 0.0);
    EXPECT_LE(exp_integral_e1(clamped), 1e6);

    const double log_d = min_threshold_log(1e6);
    EXPECT_LT(log_d, -9e5);
    EXPECT_NEAR(exp_integral_e1_of_log(log_d), 1e6, 1e6 * 1e-8);
}

TEST(MinThreshold, RejectsNonPositiveCeiling) {
    EXPECT_THROW(min_threshold(0.0), std::domain_error);
    EXPECT_THROW(min_threshold(-2.0), std::domain_error);
}

}  // namespace
