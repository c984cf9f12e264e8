#pragma once

#include <complex>
#include <initializer_list>
#include <numbers>
#include <string>

#include <Eigen/Dense>

namespace tzband {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;

enum class ModelId { CP1, FockPlane };

std::string to_string(ModelId id);
ModelId model_from_string(const std::string& name);

/// Frozen normalization conventions. Every k-power in the library depends on
/// these, so they are checked at startup by `verify_normalization`.
struct NormalizationLedger {
    /// Theta = curvature_factor * i * omega
    double curvature_factor = -2.0;
    /// dV_M = omega^d / volume_factorial
    double volume_factorial = 1.0;
    /// dmu_X = fiber_factor * alpha ^ pi^* dV_M
    double fiber_factor = 1.0 / (2.0 * std::numbers::pi);
};

/// Model polarized Kaehler manifold (M, omega, A, h) with a global chart.
///
/// CP1 carries the Fubini-Study form normalized so that vol(M) = pi and the
/// hyperplane bundle with h = (1 + |z|^2)^{-1} on the affine frame. FockPlane
/// is flat C^d with h = exp(-|z|^2); it has no compact volume and serves as
/// the Heisenberg reference model.
class ModelKahlerSurface {
public:
    static ModelKahlerSurface cp1();
    static ModelKahlerSurface fock_plane(int dim);

    ModelId id() const { return id_; }
    int dim() const { return dim_; }
    const NormalizationLedger& ledger() const { return ledger_; }

    /// Total volume; throws std::domain_error for FockPlane.
    double volume() const;

    /// Kaehler potential phi with h = exp(-phi) on the chart frame.
    double kahler_potential(const CVector& z) const;

    /// Density of dV_M against Lebesgue measure on the chart.
    double volume_density(const CVector& z) const;

private:
    ModelKahlerSurface(ModelId id, int dim);

    ModelId id_;
    int dim_;
    NormalizationLedger ledger_;
};

struct ChartPoint {
    CVector z;

    static ChartPoint origin(int dim = 1) { return {CVector::Zero(dim)}; }
    static ChartPoint of(cplx z0) { return {CVector::Constant(1, z0)}; }
    int dim() const { return static_cast<int>(z.size()); }
};

/// Point of the unit circle bundle X in the unitarized frame: (base, fiber angle).
struct CirclePoint {
    ChartPoint base;
    double theta = 0.0;

    static CirclePoint of(cplx z0, double theta0 = 0.0) { return {ChartPoint::of(z0), theta0}; }
};

/// Tangent vector in the unitary identification C^d = T_m M.
struct TangentVector {
    CVector w;

    static TangentVector of(cplx w0) { return {CVector::Constant(1, w0)}; }
    static TangentVector of(std::initializer_list<cplx> ws);
    int dim() const { return static_cast<int>(w.size()); }
    double norm() const { return w.norm(); }
};

/// Reduce an angle to (-pi, pi].
double wrap_angle(double a);

/// psi_2(w, v) = H(w, v) - (|w|^2 + |v|^2)/2 with H(w, v) = sum w_i conj(v_i).
cplx psi2(const TangentVector& w, const TangentVector& v);

/// Same quantity in the form i Im H(w, v) - |w - v|^2 / 2.
cplx psi2_polar_form(const TangentVector& w, const TangentVector& v);

/// Chart point m + w/sqrt(k) in coordinates preferred at m.
///
/// On CP1 the affine chart is preferred at 0; for m != 0 the point is moved
/// by the SU(2) isometry taking 0 to m.
ChartPoint rescaled_point(const ModelKahlerSurface& model, const ChartPoint& m,
                          const TangentVector& w, int k);

/// Heisenberg point x + (theta, w/sqrt(k)) centred at x = (m, 0).
///
/// Includes the fiber-angle correction induced by the SU(2) lift so that
/// equivariant kernels at m agree with their values at the origin.
CirclePoint heisenberg_point(const ModelKahlerSurface& model, const ChartPoint& m,
                             double theta, const TangentVector& w, int k);

/// Circle action r_vartheta on X.
CirclePoint circle_act(const CirclePoint& x, double vartheta);

/// Startup self-test of the normalization ledger against the model geometry.
/// Throws std::logic_error on violation.
void verify_normalization(const ModelKahlerSurface& model);

}  // namespace tzband
