#include "tzband/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tzband/quadrature.hpp"

namespace tzband {

namespace {

constexpr double pi = std::numbers::pi;

void require_decomposed(const ToeplitzSpectrum& spec, const CVector& e1, const CVector& e2) {
    if (!spec.decomposed()) throw std::logic_error("spectral kernel: spectrum not decomposed");
    if (e1.size() != spec.eigenvalues.size() || e2.size() != spec.eigenvalues.size())
        throw std::invalid_argument("spectral kernel: eigenfunction vector size mismatch");
}

void require_first_order(const ToeplitzSpectrum& spec) {
    if (spec.order != OperatorOrder::first)
        throw std::invalid_argument("smoothed kernel: thresholds scale with k, use a first-order spectrum");
}

}  // namespace

BandSpec BandSpec::below(double lambda, double xi, double varpi, double c) {
    return {Kind::below, lambda, lambda, xi, varpi, c};
}

BandSpec BandSpec::band(double lambda1, double lambda2, double xi, double varpi, double c) {
    return {Kind::band, lambda1, lambda2, xi, varpi, c};
}

void BandSpec::validate() const {
    if (!(xi >= 0.0 && xi < 0.5)) throw std::invalid_argument("band: need 0 <= xi < 1/2");
    if (!(varpi >= 0.0 && varpi <= 1.0 / 6.0 + 1e-15)) throw std::invalid_argument("band: need 0 <= varpi <= 1/6");
    if (!(varpi < 0.5 - xi)) throw std::invalid_argument("band: need varpi < 1/2 - xi");
    if (!(c > 0.0)) throw std::invalid_argument("band: need c > 0");
    if (kind == Kind::band && !(lambda1 < lambda2)) throw std::invalid_argument("band: need lambda1 < lambda2");
}

double BandSpec::shrink(int k) const { return c * std::pow(static_cast<double>(k), -xi); }

cplx spectral_function(const ToeplitzSpectrum& spec, const CVector& e1, const CVector& e2, double Lambda) {
    require_decomposed(spec, e1, e2);
    cplx s{};
    for (Eigen::Index j = 0; j < spec.eigenvalues.size() && spec.eigenvalues(j) <= Lambda; ++j)
        s += e1(j) * std::conj(e2(j));
    return s;
}

cplx spectral_function(const ToeplitzSpectrum& spec, const SectionBasis& basis, double Lambda,
                       const CirclePoint& x1, const CirclePoint& x2) {
    return spectral_function(spec, eigenfunctions_at(spec, basis, x1), eigenfunctions_at(spec, basis, x2), Lambda);
}

cplx band_kernel(const ToeplitzSpectrum& spec, const CVector& e1, const CVector& e2, double Lambda1, double Lambda2) {
    if (!(Lambda1 < Lambda2)) throw std::invalid_argument("band_kernel: need Lambda1 < Lambda2");
    return spectral_function(spec, e1, e2, Lambda2) - spectral_function(spec, e1, e2, Lambda1);
}

cplx band_kernel(const ToeplitzSpectrum& spec, const SectionBasis& basis, double Lambda1, double Lambda2,
                 const CirclePoint& x1, const CirclePoint& x2) {
    return band_kernel(spec, eigenfunctions_at(spec, basis, x1), eigenfunctions_at(spec, basis, x2), Lambda1, Lambda2);
}

cplx band_complement(const ToeplitzSpectrum& spec, const CVector& e1, const CVector& e2, double Lambda1, double Lambda2) {
    if (!(Lambda1 < Lambda2)) throw std::invalid_argument("band_complement: need Lambda1 < Lambda2");
    require_decomposed(spec, e1, e2);
    cplx s{};
    for (Eigen::Index j = 0; j < spec.eigenvalues.size(); ++j) {
        const double l = spec.eigenvalues(j);
        if (l <= Lambda1 || l > Lambda2) s += e1(j) * std::conj(e2(j));
    }
    return s;
}

cplx smoothed_kernel(const ToeplitzSpectrum& spec, const CVector& e1, const CVector& e2, const ChiHatFn& chi_hat,
                     double xi, double lambda) {
    require_decomposed(spec, e1, e2);
    require_first_order(spec);
    const double k = spec.k;
    const double scale = std::pow(k, -xi);
    cplx s{};
    for (Eigen::Index j = 0; j < spec.eigenvalues.size(); ++j)
        s += chi_hat(scale * (lambda * k - spec.eigenvalues(j))) * e1(j) * std::conj(e2(j));
    return scale * s;
}

cplx smoothed_kernel(const ToeplitzSpectrum& spec, const SectionBasis& basis, const ChiHatFn& chi_hat, double xi,
                     double lambda, const CirclePoint& x1, const CirclePoint& x2) {
    return smoothed_kernel(spec, eigenfunctions_at(spec, basis, x1), eigenfunctions_at(spec, basis, x2), chi_hat, xi,
                           lambda);
}

cplx smoothed_kernel(const ToeplitzSpectrum& spec, const SectionBasis& basis, const TestFunctionChi& chi, double xi,
                     double lambda, const CirclePoint& x1, const CirclePoint& x2) {
    return smoothed_kernel(spec, basis, [&chi](double s) { return chi.chi_hat(s); }, xi, lambda, x1, x2);
}

std::vector<double> eta_grid_outside_window(double center, double halfwidth, double lo, double hi, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("eta grid: step must be positive");
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((hi - lo) / step));
    for (long i = 0; i <= n; ++i) {
        const double eta = lo + i * step;
        if (std::abs(eta - center) >= halfwidth) out.push_back(eta);
    }
    return out;
}

double gamma_k(const ToeplitzSpectrum& spec, const SectionBasis& basis, const ChiHatFn& chi_hat, double xi,
               const CirclePoint& x, const std::vector<double>& eta_grid) {
    if (eta_grid.empty()) throw std::invalid_argument("gamma_k: empty threshold grid");
    require_first_order(spec);
    const CVector e = eigenfunctions_at(spec, basis, x);
    const Eigen::VectorXd w = e.cwiseAbs2();
    const double k = spec.k;
    const double scale = std::pow(k, -xi);
    double best = 0.0;
    for (double eta : eta_grid) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < w.size(); ++j) s += chi_hat(scale * (eta * k - spec.eigenvalues(j))) * w(j);
        best = std::max(best, scale * s);
    }
    return best;
}

namespace {

cplx b_integral(const ToeplitzSpectrum& spec, const Eigen::VectorXcd& p, const TestFunctionChi& chi, double xi,
                double b_lo, double b_hi, double panel) {
    const double k = spec.k;
    const double scale = std::pow(k, -xi);
    const int panels = std::max(1, static_cast<int>(std::ceil((b_hi - b_lo) / panel)));
    const double width = (b_hi - b_lo) / panels;
    std::vector<double> t, w;
    gauss_legendre(8, 0.0, 1.0, t, w);
    cplx total{};
    for (int q = 0; q < panels; ++q) {
        const double a = b_lo + q * width;
        cplx panel_sum{};
        for (size_t i = 0; i < t.size(); ++i) {
            const double b = a + width * t[i];
            cplx s{};
            for (Eigen::Index j = 0; j < p.size(); ++j) s += chi.chi_hat(scale * (b * k - spec.eigenvalues(j))) * p(j);
            panel_sum += w[i] * s;
        }
        total += width * panel_sum;
    }
    return k * scale * total;
}

}  // namespace

GkIdentity gk_identity_check(const ToeplitzSpectrum& spec, const SectionBasis& basis, const TestFunctionChi& chi,
                             double xi, double lambda, const CirclePoint& x1, const CirclePoint& x2,
                             const GkOptions& opts) {
    require_first_order(spec);
    const CVector e1 = eigenfunctions_at(spec, basis, x1);
    const CVector e2 = eigenfunctions_at(spec, basis, x2);
    const Eigen::VectorXcd p = e1.cwiseProduct(e2.conjugate());
    const double k = spec.k;
    const double kxi = std::pow(k, xi);

    GkIdentity out;
    out.scale = 2.0 * pi * (e1.cwiseAbs().cwiseProduct(e2.cwiseAbs())).sum();
    for (Eigen::Index j = 0; j < p.size(); ++j) {
        out.lhs += chi.G((lambda * k - spec.eigenvalues(j)) / kxi) * p(j);
        if (spec.eigenvalues(j) <= lambda * k) out.two_pi_T += 2.0 * pi * p(j);
    }

    const double step = std::pow(k, xi - 1.0);
    const double lowest = spec.eigenvalues.minCoeff() / k;
    out.b_lo = std::min(lambda, lowest) - chi.s_max() * step;
    const cplx coarse = b_integral(spec, p, chi, xi, out.b_lo, lambda, opts.panel_fraction * step);
    out.rhs = b_integral(spec, p, chi, xi, out.b_lo, lambda, 0.5 * opts.panel_fraction * step);

    const double denom = std::max(out.scale, 1e-300);
    out.refinement_gap = std::abs(out.rhs - coarse) / denom;
    if (out.refinement_gap > opts.refinement_tol)
        throw std::runtime_error("gk_identity_check: b-grid under-resolved (refinement gap " +
                                 std::to_string(out.refinement_gap) + ")");
    out.gap = std::abs(out.lhs - out.rhs) / denom;
    out.lhs_minus_2pi_T = std::abs(out.lhs - out.two_pi_T);
    return out;
}

}  // namespace tzband
