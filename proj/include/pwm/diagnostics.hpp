#pragma once

#include <vector>

namespace pwm {

// Potential scale reduction factor from >= 2 equal-length chains, in
// the between/within variance form R = sqrt((W + (1 + 1/m) B/n) / W).
// Identical chains give exactly 1; zero within-chain variance with
// separated chains gives +inf.
double gelman_rubin(const std::vector<std::vector<double>>& chains);

// Geweke convergence z-score: difference of the first- and last-window
// means over the pooled spectral-density-at-zero standard error
// (Bartlett-windowed autocovariances). A constant series scores 0.
double geweke_z(const std::vector<double>& series, double first_frac = 0.1,
                double last_frac = 0.5);

}  // namespace pwm
