#include "jsccplan/logistic_fit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "jsccplan/model.hpp"
#include "jsccplan/rng.hpp"

namespace {

using namespace jsccplan;

std::vector<SsimSample> sample_curve(const LogisticParams& p,
                                     const std::vector<double>& grid) {
    std::vector<SsimSample> samples;
    for (const double g : grid) samples.emplace_back(g, ssim_model(p, g));
    return samples;
}

TEST(FitLogistic, RecoversNoiselessParametersExactly) {
    const LogisticParams truth{0.55, 0.93, 0.25, -0.5};
    const auto samples = sample_curve(truth, {-10, -5, 0, 5, 10, 15, 20});
    const LogisticParams fit = fit_logistic(samples);
    EXPECT_NEAR(fit.a1, truth.a1, 1e-6);
    EXPECT_NEAR(fit.a2, truth.a2, 1e-6);
    EXPECT_NEAR(fit.c1, truth.c1, 1e-6);
    EXPECT_NEAR(fit.c2, truth.c2, 1e-6);
}

TEST(FitLogistic, RecoversDefaultTableShapes) {
    for (const LogisticParams truth :
         {LogisticParams{0.45, 0.97, 0.23, 0.9}, LogisticParams{0.32, 0.88, 0.20, 0.3}}) {
        const auto samples = sample_curve(truth, {-10, -5, 0, 5, 10, 15, 20});
        const LogisticParams fit = fit_logistic(samples);
        EXPECT_NEAR(fit.a1, truth.a1, 1e-6);
        EXPECT_NEAR(fit.a2, truth.a2, 1e-6);
        EXPECT_NEAR(fit.c1, truth.c1, 1e-6);
        EXPECT_NEAR(fit.c2, truth.c2, 1e-6);
    }
}

TEST(FitLogistic, ToleratesSmallNoise) {
    const LogisticParams truth{0.55, 0.93, 0.25, -0.5};
    std::vector<double> grid;
    for (double g = -12.0; g <= 18.0 + 1e-9; g += 0.5) grid.push_back(g);
    auto samples = sample_curve(truth, grid);

    SplitMix64 rng(42);
    for (auto& s : samples) {
        const double u1 = rng.next_unit();
        const double u2 = rng.next_unit();
        s.second += 0.002 * std::sqrt(-2.0 * std::log1p(-u1)) *
                    std::cos(2.0 * std::numbers::pi * u2);
    }
    const LogisticParams fit = fit_logistic(samples);
    // The asymptotes are pinned tightly by the flat tails of the grid; the
    // slope and offset carry most of the estimator variance at this noise
    // level, so a single realization gets a wider band.
    EXPECT_NEAR(fit.a1, truth.a1, 0.01 * truth.a1);
    EXPECT_NEAR(fit.a2, truth.a2, 0.01 * truth.a2);
    EXPECT_NEAR(fit.c1, truth.c1, 0.03 * truth.c1);
    EXPECT_NEAR(fit.c2, truth.c2, 0.03 * std::abs(truth.c2));
}

TEST(FitLogistic, RejectsTooFewSamples) {
    const LogisticParams truth{0.55, 0.93, 0.25, -0.5};
    EXPECT_THROW(fit_logistic(sample_curve(truth, {0, 10})), std::invalid_argument);
    EXPECT_THROW(fit_logistic(sample_curve(truth, {0, 2, 4, 6, 8})), std::invalid_argument);
}

TEST(FitLogistic, RejectsFlatSamples) {
    std::vector<SsimSample> flat;
    for (int i = 0; i < 8; ++i) flat.emplace_back(i, 0.8);
    EXPECT_THROW(fit_logistic(flat), std::invalid_argument);
}

TEST(FitLogistic, RejectsDecreasingCurve) {
    // A falling staircase cannot be represented with c1 > 0 and a2 > a1.
    std::vector<SsimSample> falling;
    for (int i = 0; i < 10; ++i) falling.emplace_back(3.0 * i, 0.95 - 0.05 * i);
    EXPECT_THROW(fit_logistic(falling), std::runtime_error);
}

}  // namespace
