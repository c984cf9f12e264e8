#pragma once

#include <iosfwd>
#include <vector>

#include "tzband/geometry.hpp"
#include "tzband/quadrature.hpp"

namespace tzband {

enum class KernelMethod { closed_form, basis_sum };

/// Equivariant Szego kernel value Pi_k(x1, x2).
struct KernelValue {
    cplx value;
    int k;
    CirclePoint x1, x2;
};

/// Orthonormal basis of H(X)_k.
///
/// On CP1 the basis is s_j(z) = c_j z^j (1 + |z|^2)^{-k/2} e^{i k theta},
/// j = 0..k, with c_j^2 = (k + 1)/pi * binom(k, j). The constructor checks the
/// analytic norms against radial quadrature and throws std::logic_error on
/// disagreement above 1e-10. FockPlane bases are infinite dimensional; only
/// the closed-form kernel is available for them.
class SectionBasis {
public:
    SectionBasis(const ModelKahlerSurface& model, int k);

    int level() const { return k_; }
    const ModelKahlerSurface& model() const { return model_; }
    /// dim H(X)_k (k + 1 on CP1).
    int dim() const;

    double log_norm_constant(int j) const { return log_c_.at(j); }

    /// Unitarized lift of s_j at x.
    cplx eval(int j, const CirclePoint& x) const;
    /// All basis values at x, in index order.
    CVector eval_all(const CirclePoint& x) const;

private:
    void require_finite() const;

    ModelKahlerSurface model_;
    int k_;
    std::vector<double> log_c_;
};

cplx basis_eval(const SectionBasis& basis, int j, const CirclePoint& x);

/// sum_j |s_j(x1)| |s_j(x2)|: the scale on which a basis sum for Pi_k(x1, x2)
/// is accurate. Near-antipodal pairs cancel, so pointwise relative error is
/// not a meaningful target there.
double kernel_sum_scale(const SectionBasis& basis, const CirclePoint& x1, const CirclePoint& x2);

KernelValue szego_kernel(const SectionBasis& basis, const CirclePoint& x1, const CirclePoint& x2,
                         KernelMethod method = KernelMethod::closed_form);

/// max |<s_i, s_j> - delta_ij| under the grid.
double gram_check(const SectionBasis& basis, const QuadratureGrid& grid);

/// Rows (k, z1_re, z1_im, theta1, z2_re, z2_im, theta2, re, im).
void write_kernel_csv(std::ostream& os, const std::vector<KernelValue>& values);

}  // namespace tzband
