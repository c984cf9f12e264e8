#include "tzband/decay_fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tzband {

namespace {

struct Line {
    double slope, intercept, rms;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i];
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0)) throw std::invalid_argument("fit_decay: need at least two distinct k");
    Line l{sxy / sxx, 0.0, 0.0};
    l.intercept = my - l.slope * mx;
    double ss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (l.intercept + l.slope * x[i]);
        ss += r * r;
    }
    l.rms = std::sqrt(ss / n);
    return l;
}

}  // namespace

std::string DecayFit::verdict() const {
    char buf[160];
    if (all_zero) return passed ? "pass (identically zero)" : "fail (identically zero)";
    std::snprintf(buf, sizeof buf, "%s (slope %.3f, upper-half slope %.3f, threshold %.1f)", passed ? "pass" : "fail",
                  slope, upper_slope, threshold);
    return buf;
}

DecayFit fit_decay(const std::vector<int>& ks, const std::vector<double>& values, double threshold) {
    if (ks.size() != values.size()) throw std::invalid_argument("fit_decay: size mismatch");
    if (ks.size() < 4) throw std::invalid_argument("fit_decay: need at least 4 k-values");
    DecayFit fit;
    fit.ks = ks;
    fit.values = values;
    fit.threshold = threshold;

    std::vector<double> x, y;
    bool any_nonzero = false;
    for (size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] <= 0) throw std::invalid_argument("fit_decay: k must be positive");
        if (!std::isfinite(values[i]) || values[i] < 0) throw std::invalid_argument("fit_decay: values must be finite and >= 0");
        any_nonzero = any_nonzero || values[i] > 0;
        x.push_back(std::log10(static_cast<double>(ks[i])));
        y.push_back(std::log10(std::max(values[i], zero_floor)));
    }
    if (!any_nonzero) {
        fit.all_zero = true;
        fit.slope = fit.upper_slope = 0.0;
        fit.intercept = std::log10(zero_floor);
        fit.passed = true;
        return fit;
    }

    const Line full = least_squares(x, y);
    fit.slope = full.slope;
    fit.intercept = full.intercept;
    fit.residual = full.rms;

    // upper half of the k-range (by sorted k), at least two points
    std::vector<size_t> order(ks.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return ks[a] < ks[b]; });
    const size_t start = order.size() / 2;
    std::vector<double> ux, uy;
    for (size_t i = start; i < order.size(); ++i) {
        ux.push_back(x[order[i]]);
        uy.push_back(y[order[i]]);
    }
    fit.upper_slope = least_squares(ux, uy).slope;
    fit.passed = fit.slope <= threshold && fit.upper_slope <= fit.slope;
    return fit;
}

DecayFit fit_decay_window(const std::vector<int>& ks, const std::vector<double>& values, int k_min, double threshold) {
    std::vector<int> kk;
    std::vector<double> vv;
    for (size_t i = 0; i < ks.size() && i < values.size(); ++i)
        if (ks[i] >= k_min) kk.push_back(ks[i]), vv.push_back(values[i]);
    if (kk.size() < 4) return fit_decay(ks, values, threshold);
    return fit_decay(kk, vv, threshold);
}

}  // namespace tzband
