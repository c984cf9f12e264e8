#include "tzband/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "tzband/quadrature.hpp"

namespace tzband {

namespace {

constexpr double pi = std::numbers::pi;

void require_same_dim(const TangentVector& w, const TangentVector& v) {
    if (w.dim() != v.dim()) throw std::invalid_argument("psi2: dimension mismatch");
}

// SU(2) isometry of the Fubini-Study metric with g(0) = m.
cplx moebius(cplx m, cplx z) { return (z + m) / (1.0 - std::conj(m) * z); }

}  // namespace

std::string to_string(ModelId id) { return id == ModelId::CP1 ? "CP1" : "FockPlane"; }

ModelId model_from_string(const std::string& name) {
    if (name == "CP1") return ModelId::CP1;
    if (name == "FockPlane") return ModelId::FockPlane;
    throw std::invalid_argument("unknown model '" + name + "'");
}

ModelKahlerSurface::ModelKahlerSurface(ModelId id, int dim) : id_(id), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("model dimension must be positive");
    double fact = 1.0;
    for (int i = 2; i <= dim; ++i) fact *= i;
    ledger_.volume_factorial = fact;
}

ModelKahlerSurface ModelKahlerSurface::cp1() { return {ModelId::CP1, 1}; }

ModelKahlerSurface ModelKahlerSurface::fock_plane(int dim) { return {ModelId::FockPlane, dim}; }

double ModelKahlerSurface::volume() const {
    if (id_ == ModelId::FockPlane) throw std::domain_error("FockPlane has infinite volume");
    // (pi^d / d!) * deg(A)^d with deg = 1
    return std::pow(pi, dim_) / ledger_.volume_factorial;
}

double ModelKahlerSurface::kahler_potential(const CVector& z) const {
    const double r2 = z.squaredNorm();
    return id_ == ModelId::CP1 ? std::log1p(r2) : r2;
}

double ModelKahlerSurface::volume_density(const CVector& z) const {
    if (id_ == ModelId::FockPlane) return 1.0;
    const double q = 1.0 + z.squaredNorm();
    return 1.0 / (q * q);
}

TangentVector TangentVector::of(std::initializer_list<cplx> ws) {
    TangentVector t{CVector(static_cast<Eigen::Index>(ws.size()))};
    Eigen::Index i = 0;
    for (auto w : ws) t.w(i++) = w;
    return t;
}

double wrap_angle(double a) {
    double r = std::remainder(a, 2.0 * pi);
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

cplx psi2(const TangentVector& w, const TangentVector& v) {
    require_same_dim(w, v);
    // Eigen's dot conjugates the first argument: v.dot(w) = sum conj(v_i) w_i
    const cplx h = v.w.dot(w.w);
    return h - 0.5 * (w.w.squaredNorm() + v.w.squaredNorm());
}

cplx psi2_polar_form(const TangentVector& w, const TangentVector& v) {
    require_same_dim(w, v);
    const cplx h = v.w.dot(w.w);
    return {-0.5 * (w.w - v.w).squaredNorm(), h.imag()};
}

ChartPoint rescaled_point(const ModelKahlerSurface& model, const ChartPoint& m,
                          const TangentVector& w, int k) {
    if (k < 1) throw std::invalid_argument("rescaled_point: level must be >= 1");
    if (m.dim() != w.dim() || m.dim() != model.dim())
        throw std::invalid_argument("rescaled_point: dimension mismatch");
    const double s = 1.0 / std::sqrt(static_cast<double>(k));
    if (model.id() == ModelId::FockPlane) return {m.z + s * w.w};
    const cplx m0 = m.z(0);
    if (m0 == cplx{}) return ChartPoint::of(s * w.w(0));
    return ChartPoint::of(moebius(m0, s * w.w(0)));
}

CirclePoint heisenberg_point(const ModelKahlerSurface& model, const ChartPoint& m,
                             double theta, const TangentVector& w, int k) {
    ChartPoint base = rescaled_point(model, m, w, k);
    if (model.id() == ModelId::CP1 && m.z(0) != cplx{}) {
        const cplx u = w.w(0) / std::sqrt(static_cast<double>(k));
        theta += std::arg(1.0 - std::conj(m.z(0)) * u);
    }
    return {std::move(base), wrap_angle(theta)};
}

CirclePoint circle_act(const CirclePoint& x, double vartheta) {
    return {x.base, wrap_angle(x.theta + vartheta)};
}

void verify_normalization(const ModelKahlerSurface& model) {
    const auto& L = model.ledger();
    if (L.curvature_factor != -2.0) throw std::logic_error("normalization: curvature must be -2 i omega");
    if (std::abs(L.fiber_factor * 2.0 * pi - 1.0) > 1e-15)
        throw std::logic_error("normalization: fiber measure must be alpha/(2 pi)");

    // Theta = -2i omega  <=>  d d^c of the potential equals the volume density:
    // (1/4) Laplacian(phi) = density (per complex dimension, d = 1 on CP1).
    if (model.dim() == 1) {
        const double h = 1e-3;
        for (cplx z0 : {cplx{0.0, 0.0}, cplx{0.3, -0.7}, cplx{1.5, 2.0}}) {
            auto phi = [&](cplx z) { return model.kahler_potential(CVector::Constant(1, z)); };
            const double lap = (phi(z0 + h) + phi(z0 - h) + phi(z0 + cplx{0, h}) + phi(z0 - cplx{0, h}) -
                                4.0 * phi(z0)) / (h * h);
            const double density = model.volume_density(CVector::Constant(1, z0));
            if (std::abs(0.25 * lap - density) > 1e-5 * density)
                throw std::logic_error("normalization: curvature does not match the volume form");
        }
    }

    if (model.id() == ModelId::CP1) {
        const double vol = integrate_M([](cplx) { return 1.0; }, QuadratureGrid(24, 8));
        if (std::abs(vol - model.volume()) > 1e-12 * model.volume())
            throw std::logic_error("normalization: quadrature volume differs from pi^d/d!");
    }
}

}  // namespace tzband
