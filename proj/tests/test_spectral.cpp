#include <doctest.h>

#include <cmath>
#include <random>

#include "tzband/spectral.hpp"

using namespace tzband;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

struct Fixture {
    SectionBasis basis;
    ToeplitzSpectrum spec;
    Fixture(int k, const SymbolFunction& f) : basis(ModelKahlerSurface::cp1(), k), spec(first_order_spectrum(f, basis)) {}
};

CirclePoint random_point(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> ang(-pi, pi);
    return CirclePoint::of({g(rng), g(rng)}, ang(rng));
}

const TestFunctionChi& chi() {
    static const TestFunctionChi c(0.5);
    return c;
}
}  // namespace

TEST_CASE("BandSpec hypothesis gates") {
    CHECK_NOTHROW(BandSpec::below(0.3).validate());
    CHECK_NOTHROW(BandSpec::band(0.2, 0.4).validate());
    CHECK_THROWS_AS(BandSpec::below(0.3, 0.5).validate(), std::invalid_argument);
    CHECK_THROWS_AS(BandSpec::below(0.3, -0.1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(BandSpec::below(0.3, 0.25, 0.2).validate(), std::invalid_argument);
    CHECK_THROWS_AS(BandSpec::below(0.3, 0.4, 0.15).validate(), std::invalid_argument);
    CHECK_THROWS_AS(BandSpec::below(0.3, 0.25, 1.0 / 6, 0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(BandSpec::band(0.4, 0.4).validate(), std::invalid_argument);
    CHECK(BandSpec::below(0.0).shrink(16) == Approx(0.15));
}

TEST_CASE("spectral_function examples") {
    Fixture fx(2, symbols::height());
    const auto o = CirclePoint::of(0.0);
    CHECK(spectral_function(fx.spec, fx.basis, 0.75, o, o).real() == Approx(3.0 / pi));
    CHECK(std::abs(spectral_function(fx.spec, fx.basis, 0.49, o, o)) == 0.0);

    std::mt19937_64 rng(2);
    Fixture dense(10, symbols::tilted_height());
    for (int n = 0; n < 20; ++n) {
        const auto x = random_point(rng), y = random_point(rng);
        const cplx full = spectral_function(dense.spec, dense.basis, 10.0 + 1e-9, x, y);
        CHECK(std::abs(full - szego_kernel(dense.basis, x, y).value) <= 1e-12 * kernel_sum_scale(dense.basis, x, y));
        CHECK(std::abs(spectral_function(dense.spec, dense.basis, -1e-9, x, y)) == 0.0);
    }
}

TEST_CASE("band kernels") {
    std::mt19937_64 rng(4);
    Fixture fx(16, symbols::tilted_height());
    for (int n = 0; n < 20; ++n) {
        const auto x = random_point(rng), y = random_point(rng);
        const CVector e1 = eigenfunctions_at(fx.spec, fx.basis, x), e2 = eigenfunctions_at(fx.spec, fx.basis, y);
        const double scale = e1.norm() * e2.norm();
        const cplx pi_k = szego_kernel(fx.basis, x, y).value;
        CHECK(std::abs(band_kernel(fx.spec, e1, e2, -1e300, 16.0) - pi_k) <= 1e-12 * scale);
        CHECK(std::abs(band_kernel(fx.spec, e1, e2, 20.0, 30.0)) == 0.0);
        const cplx a = band_kernel(fx.spec, e1, e2, 2.0, 7.0), b = band_kernel(fx.spec, e1, e2, 7.0, 11.0);
        CHECK(std::abs(a + b - band_kernel(fx.spec, e1, e2, 2.0, 11.0)) <= 1e-13 * scale);
        CHECK(std::abs(band_complement(fx.spec, e1, e2, 2.0, 11.0) - (pi_k - band_kernel(fx.spec, e1, e2, 2.0, 11.0))) <=
              1e-12 * scale);
        // Cauchy-Schwarz for increments
        const double d1 = band_kernel(fx.spec, e1, e1, 2.0, 7.0).real(), d2 = band_kernel(fx.spec, e2, e2, 2.0, 7.0).real();
        CHECK(std::norm(a) <= d1 * d2 * (1 + 1e-12) + 1e-300);
    }
    CHECK_THROWS_AS(band_kernel(fx.spec, fx.basis, 3.0, 3.0, CirclePoint::of(0.0), CirclePoint::of(0.0)),
                    std::invalid_argument);
}

TEST_CASE("equivariance and diagonal monotonicity") {
    std::mt19937_64 rng(6);
    Fixture fx(24, symbols::tilted_height());
    for (int n = 0; n < 20; ++n) {
        const auto x = random_point(rng), y = random_point(rng);
        const CirclePoint x0{x.base, 0.0}, y0{y.base, 0.0};
        const double lam = 24.0 * (n + 1) / 21.0;
        const cplx a = spectral_function(fx.spec, fx.basis, lam, x, y);
        const cplx b = std::polar(1.0, 24 * (x.theta - y.theta)) * spectral_function(fx.spec, fx.basis, lam, x0, y0);
        CHECK(std::abs(a - b) <= 1e-12 * kernel_sum_scale(fx.basis, x, y));

        const CVector e = eigenfunctions_at(fx.spec, fx.basis, x);
        double prev = 0.0;
        for (double L = -1.0; L <= 25.0; L += 0.5) {
            const cplx v = spectral_function(fx.spec, e, e, L);
            CHECK(std::abs(v.imag()) <= 1e-14 * e.squaredNorm());
            CHECK(v.real() >= prev - 1e-14);
            prev = v.real();
        }
        CHECK(prev == Approx(szego_kernel(fx.basis, x, x).value.real()));
    }
}

TEST_CASE("smoothed kernel") {
    Fixture fx(2, symbols::height());
    const auto x = CirclePoint::of({0.3, 0.1}), y = CirclePoint::of({-0.2, 0.5}, 0.4);
    const double xi = 0.25;
    const ChiHatFn one = [](double) { return 1.0; };
    const cplx s = smoothed_kernel(fx.spec, fx.basis, one, xi, 0.3, x, y);
    CHECK(std::abs(s - std::pow(2.0, -xi) * szego_kernel(fx.basis, x, y).value) <= 1e-14);

    const double far = smoothed_kernel(fx.spec, fx.basis, chi(), xi, -10.0, x, x).real();
    CHECK(far >= 0.0);
    CHECK(far <= std::pow(2.0, -xi) * chi().chi_hat(std::pow(2.0, -xi) * 20.5) * szego_kernel(fx.basis, x, x).value.real() * (1 + 1e-12));

    Fixture d(12, symbols::tilted_height());
    for (double lam : {-0.5, 0.1, 0.5, 0.77, 1.3}) {
        const cplx v = smoothed_kernel(d.spec, d.basis, chi(), xi, lam, x, x);
        CHECK(v.real() >= 0.0);
        CHECK(std::abs(v.imag()) <= 1e-14);
    }

    SectionBasis b(ModelKahlerSurface::cp1(), 4);
    const auto zero = eigendecompose(build_toeplitz(symbols::height(), b, QuadratureGrid::for_level(4)));
    CHECK_THROWS_AS(smoothed_kernel(zero, b, chi(), xi, 0.3, x, x), std::invalid_argument);
}

TEST_CASE("increment bound by the smoothed kernel") {
    // T(kc + k^xi d', x, x) - T(kc, x, x) <= (2 k^xi / |psi|_L1^2) S(c; x, x) for 0 <= d' <= delta
    const double xi = 0.25;
    for (int k : {16, 64}) {
        Fixture fx(k, symbols::tilted_height());
        const double kxi = std::pow(double(k), xi);
        std::mt19937_64 rng(k);
        for (int n = 0; n < 20; ++n) {
            const auto x = random_point(rng);
            const CVector e = eigenfunctions_at(fx.spec, fx.basis, x);
            const double c = -0.1 + 1.2 * n / 19.0;
            for (double frac : {0.0, 0.3, 1.0}) {
                const double dp = frac * chi().delta();
                const double inc = (spectral_function(fx.spec, e, e, k * c + kxi * dp) - spectral_function(fx.spec, e, e, k * c)).real();
                const double rhs = 2.0 * kxi / (chi().psi_l1() * chi().psi_l1()) *
                                   smoothed_kernel(fx.spec, e, e, [](double s) { return chi().chi_hat(s); }, xi, c).real();
                CHECK(inc <= rhs * (1 + 1e-12) + 1e-300);
            }
        }
    }
}

TEST_CASE("gamma_k") {
    Fixture fx(32, symbols::height());
    const ChiHatFn ch = [](double s) { return chi().chi_hat(s); };
    const auto x = CirclePoint::of(0.0);
    CHECK_THROWS_AS(gamma_k(fx.spec, fx.basis, ch, 0.25, x, {}), std::invalid_argument);
    CHECK(eta_grid_outside_window(0.0, 1.0, -0.5, 0.5, 0.01).empty());
    CHECK_THROWS_AS(eta_grid_outside_window(0.0, 1.0, -0.5, 0.5, 0.0), std::invalid_argument);

    const double h = 0.3 * std::pow(32.0, -0.25);
    const double g1 = gamma_k(fx.spec, fx.basis, ch, 0.25, x, eta_grid_outside_window(0.0, h, -2.0, 3.0, 1.0 / 32));
    const double g2 = gamma_k(fx.spec, fx.basis, ch, 0.25, x, eta_grid_outside_window(0.0, 2 * h, -2.0, 3.0, 1.0 / 32));
    CHECK(g1 > 0.0);
    CHECK(g2 <= g1);

    // f = 1: a single eigenvalue k, so gamma_k is one chi_hat tail value
    Fixture one(32, symbols::constant(1.0));
    const auto grid = eta_grid_outside_window(1.0, h, -1.0, 3.0, 1.0 / 32);
    const double g = gamma_k(one.spec, one.basis, ch, 0.25, x, grid);
    double oracle = 0.0;
    for (double eta : grid) oracle = std::max(oracle, std::pow(32.0, -0.25) * chi().chi_hat(std::pow(32.0, -0.25) * 32 * (eta - 1.0)));
    CHECK(g == Approx(oracle * 33.0 / pi).epsilon(1e-12));
}

TEST_CASE("G_k identity examples") {
    const double xi = 0.25;
    Fixture fx(8, symbols::height());
    const auto x1 = CirclePoint::of(0.0);
    const auto x2 = heisenberg_point(ModelKahlerSurface::cp1(), ChartPoint::origin(), 0.0, TangentVector::of(1.0), 8);

    const auto below = gk_identity_check(fx.spec, fx.basis, chi(), xi, -100.0, x1, x2);
    CHECK(std::abs(below.two_pi_T) == 0.0);
    CHECK(std::abs(below.lhs) <= 1e-8);

    const auto above = gk_identity_check(fx.spec, fx.basis, chi(), xi, 100.0, x1, x2);
    const cplx pi_k = szego_kernel(fx.basis, x1, x2).value;
    CHECK(std::abs(above.lhs - 2 * pi * pi_k) <= 1e-8 * std::abs(pi_k));

    const auto mid = gk_identity_check(fx.spec, fx.basis, chi(), xi, 0.45, x1, x2);
    CHECK(mid.gap <= 1e-6);
    CHECK(mid.refinement_gap <= 1e-8);
    CHECK(std::abs(mid.lhs) <= mid.scale * (1 + 1e-12));
}
