#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "tzband/quadrature.hpp"
#include "tzband/test_function.hpp"

using namespace tzband;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

const TestFunctionChi& fixture() {
    static const TestFunctionChi chi(0.5);
    return chi;
}

// adaptive oracle for psi_hat, independent of the Gauss-Legendre tables
double psi_hat_oracle(const TestFunctionChi& chi, double s) {
    const double h = chi.epsilon() / 2;
    return 2.0 * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                     [&](double t) { return chi.psi(t) * std::cos(s * t); }, 0.0, h, 15, 1e-14);
}
}  // namespace

TEST_CASE("psi and chi basics") {
    const auto& chi = fixture();
    CHECK(chi.chi(0.0) == Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(chi.chi(0.0) - 1.0) <= 1e-8);
    CHECK(chi.psi_l2() == Approx(1.0).epsilon(1e-12));
    CHECK(chi.psi(0.25) == 0.0);
    CHECK(chi.psi(-0.3) == 0.0);
    for (double t = -0.5 / 3; t <= 0.5 / 3; t += 0.01) CHECK(chi.psi(t) > 0.0);
    CHECK(chi.chi(0.5) == 0.0);
    CHECK(chi.chi(0.2) == Approx(chi.chi(-0.2)));
    CHECK(chi.chi(0.1) < chi.chi(0.0));
    CHECK_THROWS_AS(TestFunctionChi(0.0), std::invalid_argument);
    CHECK_THROWS_AS(TestFunctionChi(-1.0), std::invalid_argument);
}

TEST_CASE("chi_hat against an adaptive oracle") {
    const auto& chi = fixture();
    const double l1 = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double t) { return chi.psi(t); }, -0.25, 0.25, 15, 1e-14);
    CHECK(chi.psi_l1() == Approx(l1).epsilon(1e-12));
    CHECK(chi.chi_hat(0.0) == Approx(l1 * l1).epsilon(1e-12));

    for (double s : {0.5, 3.0, 17.2, 55.55, 140.0, 390.0}) {
        const double p = psi_hat_oracle(chi, s);
        CHECK(std::abs(chi.chi_hat(s) - p * p) <= 1e-12 * chi.chi_hat(0.0));
        CHECK(chi.chi_hat(-s) == chi.chi_hat(s));
    }
}

TEST_CASE("cached chi_hat agrees with direct evaluation") {
    const auto& chi = fixture();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> s(0.0, chi.s_max());
    for (int n = 0; n < 2000; ++n) {
        const double x = s(rng);
        CHECK(std::abs(chi.chi_hat(x) - chi.chi_hat_direct(x)) <= 1e-12 * chi.chi_hat(0.0));
    }
    CHECK(chi.min_cached_chi_hat() >= -1e-12);
}

TEST_CASE("tail envelope") {
    const auto& chi = fixture();
    const double sm = chi.s_max();
    CHECK(chi.tail_beta() > 0.0);
    double prev = chi.chi_hat(sm * 1.0001);
    for (double s = sm * 1.01; s < 4 * sm; s *= 1.1) {
        const double v = chi.chi_hat(s);
        CHECK(v >= 0.0);
        CHECK(v <= prev);
        prev = v;
    }
    CHECK(chi.chi_hat(sm * 1.0001) <= 1e-9 * chi.chi_hat(0.0));
}

TEST_CASE("delta bisection") {
    const auto& chi = fixture();
    REQUIRE(chi.delta_converged());
    CHECK(chi.delta_iterations() > 0);
    const double half = 0.5 * chi.psi_l1() * chi.psi_l1();
    CHECK(chi.delta() > 0.0);
    for (double l = 0.0; l < chi.delta(); l += chi.delta() / 50) CHECK(chi.chi_hat(l) >= half);
    CHECK(chi.chi_hat(chi.delta() * 1.001) < half);
}

TEST_CASE("G is the primitive of chi_hat") {
    const auto& chi = fixture();
    CHECK(chi.G(0.0) == Approx(pi * chi.chi(0.0)).epsilon(1e-12));
    CHECK(chi.G(1e4) == Approx(2 * pi).epsilon(1e-8));
    CHECK(std::abs(chi.G(-1e4)) <= 1e-8);
    CHECK(std::abs(chi.G(-chi.s_max() * 0.99)) <= 1e-9);
    // G(b) - G(a) against panel quadrature of the cached chi_hat
    for (auto [a, b] : {std::pair{-3.0, 2.0}, std::pair{0.0, 11.0}, std::pair{-40.0, -7.5}}) {
        const int panels = 400;
        std::vector<double> t, w;
        gauss_legendre(8, 0.0, 1.0, t, w);
        double acc = 0.0;
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p)
            for (size_t i = 0; i < t.size(); ++i) acc += h * w[i] * chi.chi_hat(a + h * (p + t[i]));
        CHECK(std::abs(chi.G(b) - chi.G(a) - acc) <= 1e-10);
    }
}
