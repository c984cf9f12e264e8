#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <random>
#include <stdexcept>

#include "tzband/decay_fit.hpp"

using namespace tzband;
using doctest::Approx;

namespace {
std::vector<double> series(const std::vector<int>& ks, double (*f)(double)) {
    std::vector<double> v;
    for (int k : ks) v.push_back(f(k));
    return v;
}
const std::vector<int> sweep{64, 128, 256, 512};
}  // namespace

TEST_CASE("power laws") {
    const auto fit = fit_decay(sweep, series(sweep, [](double k) { return 3.0 * std::pow(k, -5.0); }));
    CHECK(fit.slope == Approx(-5.0).epsilon(1e-12));
    CHECK(fit.intercept == Approx(std::log10(3.0)).epsilon(1e-12));
    CHECK(fit.residual <= 1e-12);
    CHECK(fit.upper_slope == Approx(-5.0).epsilon(1e-12));

    const auto slow = fit_decay(sweep, series(sweep, [](double k) { return 1.0 / (k * k); }));
    CHECK_FALSE(slow.passed);
    CHECK(slow.verdict().rfind("fail", 0) == 0);
}

TEST_CASE("super-polynomial series pass") {
    const auto fit = fit_decay(sweep, series(sweep, [](double k) { return std::exp(-std::sqrt(k)); }));
    CHECK(fit.passed);
    CHECK(fit.upper_slope < fit.slope);
    CHECK(fit_decay(sweep, series(sweep, [](double k) { return std::exp(-0.1 * k); })).passed);
}

TEST_CASE("input validation and zeros") {
    CHECK_THROWS_AS(fit_decay({64, 128, 256}, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(fit_decay(sweep, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(fit_decay(sweep, {1, -2, 3, 4}), std::invalid_argument);
    CHECK_THROWS_AS(fit_decay(sweep, {1, std::nan(""), 3, 4}), std::invalid_argument);
    CHECK_THROWS_AS(fit_decay({0, 128, 256, 512}, {1, 2, 3, 4}), std::invalid_argument);
    CHECK_THROWS_AS(fit_decay({64, 64, 64, 64}, {1, 2, 3, 4}), std::invalid_argument);

    const auto z = fit_decay(sweep, {0, 0, 0, 0});
    CHECK(z.all_zero);
    CHECK(z.passed);
    CHECK(std::isfinite(z.slope));

    const auto partial = fit_decay(sweep, {1e-20, 1e-60, 0, 0});
    CHECK(std::isfinite(partial.slope));
    CHECK(partial.slope < -3);
}

TEST_CASE("window selection") {
    const std::vector<int> ks{16, 32, 64, 128, 256, 512};
    std::vector<double> v{1.0, 1.0, 1e-10, 1e-20, 1e-40, 1e-80};
    const auto w = fit_decay_window(ks, v, 64);
    CHECK(w.ks.size() == 4);
    CHECK(w.ks.front() == 64);
    CHECK(fit_decay_window({16, 32, 64, 128}, {1, 2, 3, 4}, 64).ks.size() == 4);
}

TEST_CASE("verdicts are monotone under k-list extension") {
    // exp(-a k^b) with slope margin >= 0.5 on the base sweep keeps passing
    // when larger k are appended
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ub(0.3, 1.0), ua(0.01, 3.0);
    int tested = 0;
    for (int n = 0; n < 500; ++n) {
        const double a = ua(rng), b = ub(rng);
        auto f = [&](int k) { return std::exp(-a * std::pow(double(k), b)); };
        std::vector<int> ks = sweep;
        std::vector<double> v;
        for (int k : ks) v.push_back(f(k));
        if (!std::all_of(v.begin(), v.end(), [](double x) { return x > 1e-300; })) continue;
        const auto base = fit_decay(ks, v);
        if (!(base.passed && base.slope <= -3.5)) continue;
        ++tested;
        for (int extra : {1024, 2048}) {
            if (f(extra) <= 1e-300) break;
            ks.push_back(extra);
            v.push_back(f(extra));
            CHECK(fit_decay(ks, v).passed);
        }
    }
    CHECK(tested > 50);
}
