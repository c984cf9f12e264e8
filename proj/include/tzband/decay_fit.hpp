#pragma once

#include <string>
#include <vector>

namespace tzband {

/// Least-squares fit of log10(value) against log10(k).
///
/// The rapid-decay proxy passes when the slope is at most `threshold` and the
/// refit on the upper half of the k-range is no flatter than the full fit.
/// Exact zeros are clamped to `zero_floor` before taking logs; a series of
/// exact zeros passes outright.
struct DecayFit {
    std::vector<int> ks;
    std::vector<double> values;
    double slope = 0.0;
    double intercept = 0.0;
    /// RMS residual of the full fit in log10 units.
    double residual = 0.0;
    double upper_slope = 0.0;
    double threshold = -3.0;
    bool all_zero = false;
    bool passed = false;

    std::string verdict() const;
};

inline constexpr double zero_floor = 1e-300;

/// Throws std::invalid_argument on fewer than 4 points, mismatched sizes,
/// non-positive k, or negative / non-finite values.
DecayFit fit_decay(const std::vector<int>& ks, const std::vector<double>& values, double threshold = -3.0);

/// Restrict to k >= k_min before fitting; falls back to the full series when
/// fewer than 4 points would remain.
DecayFit fit_decay_window(const std::vector<int>& ks, const std::vector<double>& values, int k_min,
                          double threshold = -3.0);

}  // namespace tzband
