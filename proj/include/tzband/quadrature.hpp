#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "tzband/geometry.hpp"

namespace tzband {

/// Product rule for integrals over CP1 against dV_M.
///
/// With t = |z|^2 and u = t / (1 + t) the Fubini-Study volume becomes
/// dV_M = (1/2) du dphi on [0, 1] x [0, 2 pi). Radial nodes are Gauss-Legendre
/// in u, angular nodes are the uniform trapezoid rule. A section product
/// s_j conj(s_i) at level k is a degree-k polynomial in u times exp(i(j-i)phi),
/// so the rule is exact once n_rad >= k/2 + 1 and n_ang > 2k.
class QuadratureGrid {
public:
    QuadratureGrid(int n_rad, int n_ang);

    /// Default sizes for level k: n_rad = k + 16, n_ang = 2k + 4.
    static QuadratureGrid for_level(int k);

    int n_rad() const { return static_cast<int>(u_.size()); }
    int n_ang() const { return static_cast<int>(phi_.size()); }

    const std::vector<double>& u() const { return u_; }
    /// Radial weights, including the factor 1/2 of dV_M.
    const std::vector<double>& radial_weights() const { return wu_; }
    const std::vector<double>& phi() const { return phi_; }
    /// Uniform angular weight 2 pi / n_ang.
    double angular_weight() const { return wphi_; }

    /// |z| at radial node i.
    double radius(int i) const { return std::sqrt(u_[i] / (1.0 - u_[i])); }
    cplx point(int i, int a) const { return std::polar(radius(i), phi_[a]); }

    /// Columns: kind, index, node, weight.
    void write_csv(std::ostream& os) const;

private:
    std::vector<double> u_, wu_, phi_;
    double wphi_;
};

/// Quadrature of f over CP1 against dV_M. f is called with the affine
/// coordinate z and may return double or std::complex<double>.
template <class F>
auto integrate_M(F&& f, const QuadratureGrid& grid) {
    using R = std::decay_t<decltype(f(cplx{}))>;
    R total{};
    for (int i = 0; i < grid.n_rad(); ++i) {
        R ring{};
        for (int a = 0; a < grid.n_ang(); ++a) {
            const R val = f(grid.point(i, a));
            if constexpr (std::is_same_v<R, double>) {
                if (!std::isfinite(val)) throw std::domain_error("integrate_M: non-finite integrand sample");
            } else {
                if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
                    throw std::domain_error("integrate_M: non-finite integrand sample");
            }
            ring += val;
        }
        total += ring * (grid.radial_weights()[i] * grid.angular_weight());
    }
    return total;
}

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace tzband
