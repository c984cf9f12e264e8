#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "tzband/geometry.hpp"
#include "tzband/quadrature.hpp"
#include "tzband/sections.hpp"

namespace tzband {

/// Smooth real function on M, evaluated in the affine chart.
struct SymbolFunction {
    std::string id;
    std::function<double(cplx)> f;
    std::optional<double> min, max;
    /// f(z) depends on |z| only; Toeplitz matrices are then exactly diagonal.
    bool rotation_invariant = false;

    double operator()(cplx z) const { return f(z); }
};

namespace symbols {
SymbolFunction constant(double c);
/// |z|^2 / (1 + |z|^2), the height on CP1 (range [0, 1]).
SymbolFunction height();
/// 1/2 + Re z / (1 + |z|^2): the height rotated by a quarter turn about the
/// x-axis of the sphere. Same spectrum as `height`, dense Toeplitz matrix.
SymbolFunction tilted_height();
/// Re z / (1 + |z|^2); couples only neighbouring basis indices.
SymbolFunction first_harmonic();
/// f + c, the symbol of D o T_f + c D.
SymbolFunction shifted(SymbolFunction f, double c);

SymbolFunction by_name(const std::string& name, double param = 0.0);
}  // namespace symbols

enum class OperatorOrder { zero, first };

/// Matrix of T_f^(k) (or its first-order lift) in the monomial basis, with
/// eigen-data once `eigendecompose` has run.
struct ToeplitzSpectrum {
    int k = 0;
    OperatorOrder order = OperatorOrder::zero;
    Eigen::MatrixXcd matrix;
    /// Ascending eigenvalues; empty until decomposed.
    Eigen::VectorXd eigenvalues;
    /// Columns are the eigenvectors e_kj in the monomial basis.
    Eigen::MatrixXcd eigenvectors;
    double residual = 0.0;
    std::string symbol_id;

    bool decomposed() const { return eigenvalues.size() > 0; }
    int size() const { return static_cast<int>(matrix.rows()); }
};

/// Matrix entries M[i][j] = int_M f s_j conj(s_i) dV_M.
ToeplitzSpectrum build_toeplitz(const SymbolFunction& f, const SectionBasis& basis, const QuadratureGrid& grid);

/// D o T_f: on H(X)_k the generator D acts as k id, so the lift scales by k.
ToeplitzSpectrum lift_first_order(const ToeplitzSpectrum& t);

/// Full Hermitian decomposition. Ties keep the solver's ascending order;
/// callers must only rely on spectral projectors.
ToeplitzSpectrum eigendecompose(ToeplitzSpectrum t);

/// All eigenfunctions e_kj(x), j in ascending-eigenvalue order.
CVector eigenfunctions_at(const ToeplitzSpectrum& t, const SectionBasis& basis, const CirclePoint& x);

cplx eigenfunction_eval(const ToeplitzSpectrum& t, const SectionBasis& basis, int j, const CirclePoint& x);

/// Convenience: build, lift to first order, decompose.
ToeplitzSpectrum first_order_spectrum(const SymbolFunction& f, const SectionBasis& basis);

/// Rows (k, j, lambda_kj).
void write_eigenvalues_csv(std::ostream& os, const ToeplitzSpectrum& t, bool header = true);

/// Binary cache of the eigen-data keyed by (model, symbol id, k).
void save_spectrum(const std::string& path, const ToeplitzSpectrum& t, ModelId model);
std::optional<ToeplitzSpectrum> load_spectrum(const std::string& path, ModelId model, const std::string& symbol_id, int k);

}  // namespace tzband
