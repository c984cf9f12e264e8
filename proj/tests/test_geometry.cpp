#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <random>
#include <sstream>

#include "tzband/geometry.hpp"
#include "tzband/quadrature.hpp"

using namespace tzband;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

TangentVector random_vector(std::mt19937_64& rng, int d, double scale = 2.0) {
    std::normal_distribution<double> g(0.0, scale);
    TangentVector t{CVector(d)};
    for (int i = 0; i < d; ++i) t.w(i) = {g(rng), g(rng)};
    return t;
}
}  // namespace

TEST_CASE("psi2 examples") {
    const auto w = TangentVector::of({1.0, cplx{0.5, -2.0}});
    CHECK(std::abs(psi2(w, w)) == Approx(0.0));

    const auto zero = TangentVector{CVector::Zero(2)};
    const cplx a = psi2(w, zero);
    CHECK(a.real() == Approx(-0.5 * w.w.squaredNorm()));
    CHECK(a.imag() == Approx(0.0));

    const cplx b = psi2(TangentVector::of(1.0), TangentVector::of(cplx{0.0, 1.0}));
    CHECK(b.real() == Approx(-1.0));
    CHECK(b.imag() == Approx(-1.0));

    CHECK_THROWS_AS(psi2(TangentVector::of(1.0), zero), std::invalid_argument);
}

TEST_CASE("psi2 properties on random pairs") {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 200; ++n) {
        const int d = 1 + n % 3;
        const auto w = random_vector(rng, d), v = random_vector(rng, d);
        const cplx a = psi2(w, v);
        // both printed forms of the definition
        CHECK(std::abs(a - psi2_polar_form(w, v)) <= 1e-12 * (1.0 + std::abs(a)));
        // Hermitian symmetry
        CHECK(std::abs(a - std::conj(psi2(v, w))) <= 1e-12 * (1.0 + std::abs(a)));
        // Re psi2 = -|w - v|^2 / 2 <= 0
        CHECK(a.real() <= 0.0);
        CHECK(a.real() == Approx(-0.5 * (w.w - v.w).squaredNorm()));
    }
}

TEST_CASE("rescaled_point examples") {
    const auto model = ModelKahlerSurface::cp1();
    const auto m = ChartPoint::origin();
    CHECK(std::abs(rescaled_point(model, m, TangentVector::of(0.0), 7).z(0)) == 0.0);
    CHECK(std::abs(rescaled_point(model, m, TangentVector::of(1.0), 100).z(0) - 0.1) < 1e-15);
    CHECK(std::abs(rescaled_point(model, m, TangentVector::of({cplx{2.0, 1.0}}), 4).z(0) - cplx{1.0, 0.5}) < 1e-15);
    CHECK_THROWS_AS(rescaled_point(model, m, TangentVector::of(1.0), 0), std::invalid_argument);

    const auto fock = ModelKahlerSurface::fock_plane(2);
    const auto p = rescaled_point(fock, ChartPoint{CVector::Constant(2, cplx{1.0, 0.0})},
                                  TangentVector::of({cplx{2.0, 0.0}, cplx{0.0, 4.0}}), 16);
    CHECK(std::abs(p.z(0) - cplx{1.5, 0.0}) < 1e-15);
    CHECK(std::abs(p.z(1) - cplx{1.0, 1.0}) < 1e-15);
}

TEST_CASE("rescaled_point at m != 0 is a Fubini-Study isometry") {
    // FS distance from m to the rescaled point must equal the model distance
    // from 0 to w/sqrt(k): chordal form |z1 - z2| / sqrt((1+|z1|^2)(1+|z2|^2)).
    const auto model = ModelKahlerSurface::cp1();
    auto chordal = [](cplx a, cplx b) { return std::abs(a - b) / std::sqrt((1 + std::norm(a)) * (1 + std::norm(b))); };
    for (cplx m0 : {cplx{1.0, 0.0}, cplx{-0.3, 2.0}}) {
        for (cplx w0 : {cplx{1.0, 0.0}, cplx{0.0, -2.0}, cplx{1.5, 1.5}}) {
            const int k = 9;
            const cplx p = rescaled_point(model, ChartPoint::of(m0), TangentVector::of(w0), k).z(0);
            CHECK(chordal(p, m0) == Approx(chordal(w0 / 3.0, 0.0)).epsilon(1e-13));
        }
    }
}

TEST_CASE("circle action") {
    const auto x = CirclePoint::of({0.3, 0.1}, 0.1);
    CHECK(circle_act(x, 0.2).theta == Approx(0.3));
    CHECK(circle_act(x, 0.0).theta == Approx(0.1));
    CHECK(circle_act(x, 2 * pi).theta == Approx(0.1));
    CHECK(circle_act(x, 0.2).base.z(0) == x.base.z(0));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(-10.0, 10.0);
    for (int n = 0; n < 100; ++n) {
        const double a = ang(rng), b = ang(rng);
        const double lhs = circle_act(circle_act(x, a), b).theta;
        const double rhs = circle_act(x, a + b).theta;
        CHECK(std::abs(std::remainder(lhs - rhs, 2 * pi)) < 1e-12);
        CHECK(lhs > -pi);
        CHECK(lhs <= pi);
    }
}

TEST_CASE("integrate_M against independent oracles") {
    const auto grid = QuadratureGrid::for_level(16);

    // adaptive oracle on the FS volume form in polar coordinates
    boost::math::quadrature::exp_sinh<double> es;
    const double vol_oracle = es.integrate([](double r) { return 2 * pi * r / std::pow(1 + r * r, 2); });
    CHECK(integrate_M([](cplx) { return 1.0; }, grid) == Approx(vol_oracle).epsilon(1e-12));
    CHECK(vol_oracle == Approx(pi).epsilon(1e-12));

    const double beta_oracle = es.integrate([](double t) { return pi / std::pow(1 + t, 3); });
    CHECK(integrate_M([](cplx z) { return 1.0 / (1.0 + std::norm(z)); }, grid) == Approx(beta_oracle).epsilon(1e-12));
    CHECK(integrate_M([](cplx z) { return std::norm(z) / (1.0 + std::norm(z)); }, grid) == Approx(pi / 2).epsilon(1e-12));

    const cplx zc = integrate_M([](cplx z) { return z / (1.0 + std::norm(z)); }, grid);
    CHECK(std::abs(zc) < 1e-14);

    CHECK_THROWS_AS(integrate_M([](cplx) { return std::nan(""); }, grid), std::domain_error);
}

TEST_CASE("integrate_M is exact on section monomials") {
    // integrand |z|^{2j} / (1+|z|^2)^k against dV_M; oracle pi Gamma(j+1)Gamma(k-j+1)/Gamma(k+2)
    for (int k : {0, 1, 5, 16, 40}) {
        const auto grid = QuadratureGrid::for_level(k);
        for (int j = 0; j <= k; ++j) {
            const double got = integrate_M(
                [&](cplx z) { const double t = std::norm(z); return std::pow(t, j) / std::pow(1.0 + t, k); }, grid);
            const double oracle = pi * std::exp(std::lgamma(j + 1.0) + std::lgamma(k - j + 1.0) - std::lgamma(k + 2.0));
            CHECK(std::abs(got - oracle) <= 1e-12 * oracle);
        }
    }
}

TEST_CASE("normalization ledger self-test") {
    CHECK_NOTHROW(verify_normalization(ModelKahlerSurface::cp1()));
    CHECK_NOTHROW(verify_normalization(ModelKahlerSurface::fock_plane(2)));
    CHECK(ModelKahlerSurface::cp1().volume() == Approx(pi));
    CHECK_THROWS_AS(ModelKahlerSurface::fock_plane(1).volume(), std::domain_error);
    CHECK(ModelKahlerSurface::cp1().ledger().fiber_factor == Approx(1.0 / (2 * pi)));
}

TEST_CASE("grid csv dump") {
    QuadratureGrid grid(3, 5);
    std::ostringstream os;
    grid.write_csv(os);
    int lines = 0;
    for (char c : os.str()) lines += c == '\n';
    CHECK(lines == 1 + 3 + 5);
    CHECK(grid.angular_weight() == Approx(2 * pi / 5));
}
