#pragma once

#include <utility>
#include <vector>

#include "jsccplan/types.hpp"

namespace jsccplan {

/// One measured point: (snr_db, ssim).
using SsimSample = std::pair<double, double>;

/// Least-squares fit of the four-parameter logistic to (snr_db, ssim)
/// samples. For fixed (c1, c2) the model is linear in (a1, a2), so that
/// inner problem is solved exactly; (c1, c2) are found by a coarse grid
/// followed by Nelder-Mead refinement and a Gauss-Newton polish.
///
/// Preconditions (std::invalid_argument): at least 6 samples, and the
/// SSIM spread must be at least 0.05.
/// Fit failures (std::runtime_error): collapsed asymptotes (a2 <= a1) or
/// asymptotes escaping [0, 1].
LogisticParams fit_logistic(const std::vector<SsimSample>& samples);

}  // namespace jsccplan
