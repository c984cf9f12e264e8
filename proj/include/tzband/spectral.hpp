#pragma once

#include <functional>
#include <vector>

#include "tzband/geometry.hpp"
#include "tzband/sections.hpp"
#include "tzband/test_function.hpp"
#include "tzband/toeplitz.hpp"

namespace tzband {

/// Energy window in per-k units; thresholds are multiplied by k at evaluation.
struct BandSpec {
    enum class Kind { below, band };

    Kind kind = Kind::below;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    /// Shrink law e_k = c k^{-xi}.
    double xi = 0.25;
    double varpi = 1.0 / 6.0;
    double c = 0.3;

    static BandSpec below(double lambda, double xi = 0.25, double varpi = 1.0 / 6.0, double c = 0.3);
    static BandSpec band(double lambda1, double lambda2, double xi = 0.25, double varpi = 1.0 / 6.0, double c = 0.3);

    /// Throws std::invalid_argument unless 0 <= xi < 1/2, 0 <= varpi <= 1/6,
    /// varpi < 1/2 - xi, c > 0, and lambda1 < lambda2 for bands.
    void validate() const;
    double shrink(int k) const;
};

/// Fourier weight used by the smoothed kernel; `TestFunctionChi::chi_hat`
/// in production, replaceable in tests.
using ChiHatFn = std::function<double(double)>;

/// Level-k spectral function: sum over lambda_kj <= Lambda of e_kj(x1) conj(e_kj(x2)).
cplx spectral_function(const ToeplitzSpectrum& spec, const SectionBasis& basis, double Lambda,
                       const CirclePoint& x1, const CirclePoint& x2);
/// Same, with eigenfunction values e1 = e(x1), e2 = e(x2) precomputed.
cplx spectral_function(const ToeplitzSpectrum& spec, const CVector& e1, const CVector& e2, double Lambda);

/// Projector kernel onto eigenvalues in (Lambda1, Lambda2].
cplx band_kernel(const ToeplitzSpectrum& spec, const SectionBasis& basis, double Lambda1, double Lambda2,
                 const CirclePoint& x1, const CirclePoint& x2);
cplx band_kernel(const ToeplitzSpectrum& spec, const CVector& e1, const CVector& e2, double Lambda1, double Lambda2);

/// Sum over eigenvalues outside (Lambda1, Lambda2]; equals Pi_k - band_kernel,
/// summed directly so small values keep their relative accuracy.
cplx band_complement(const ToeplitzSpectrum& spec, const CVector& e1, const CVector& e2, double Lambda1, double Lambda2);

/// k^{-xi} sum_j chi_hat(k^{-xi}(lambda k - lambda_kj)) e_kj(x1) conj(e_kj(x2)).
/// Requires a first-order spectrum.
cplx smoothed_kernel(const ToeplitzSpectrum& spec, const SectionBasis& basis, const ChiHatFn& chi_hat, double xi,
                     double lambda, const CirclePoint& x1, const CirclePoint& x2);
cplx smoothed_kernel(const ToeplitzSpectrum& spec, const SectionBasis& basis, const TestFunctionChi& chi, double xi,
                     double lambda, const CirclePoint& x1, const CirclePoint& x2);
cplx smoothed_kernel(const ToeplitzSpectrum& spec, const CVector& e1, const CVector& e2, const ChiHatFn& chi_hat,
                     double xi, double lambda);

/// Thresholds in [lo, hi] at the given step, excluding |eta - center| < halfwidth.
std::vector<double> eta_grid_outside_window(double center, double halfwidth, double lo, double hi, double step);

/// max over eta_grid of |smoothed_kernel(eta; x, x)|; a lower bound for the
/// supremum over the unbounded rays. Throws std::invalid_argument on an empty grid.
double gamma_k(const ToeplitzSpectrum& spec, const SectionBasis& basis, const ChiHatFn& chi_hat, double xi,
               const CirclePoint& x, const std::vector<double>& eta_grid);

struct GkIdentity {
    /// sum_j G_k(k lambda - lambda_kj) e_kj(x1) conj(e_kj(x2)), G from the time domain
    cplx lhs;
    /// k int_{b_lo}^{lambda} smoothed_kernel(b) db by b-quadrature of chi_hat
    cplx rhs;
    /// |lhs - rhs| / scale
    double gap = 0.0;
    cplx two_pi_T;
    double lhs_minus_2pi_T = 0.0;
    /// 2 pi sum_j |e_kj(x1)| |e_kj(x2)|, an upper bound for |lhs|
    double scale = 0.0;
    /// relative change of rhs between step h and h/2
    double refinement_gap = 0.0;
    double b_lo = 0.0;
};

struct GkOptions {
    /// panel width as a fraction of k^{xi-1}; 8 GL nodes per panel
    double panel_fraction = 1.0;
    /// throw if halving the panels moves rhs by more than this (relative to scale)
    double refinement_tol = 1e-8;
};

/// Both computations of int G_k(k lambda - eta) d mu(eta). The b-integral is
/// truncated where the chi_hat tail beyond the cache extent starts.
GkIdentity gk_identity_check(const ToeplitzSpectrum& spec, const SectionBasis& basis, const TestFunctionChi& chi,
                             double xi, double lambda, const CirclePoint& x1, const CirclePoint& x2,
                             const GkOptions& opts = {});

}  // namespace tzband
