#include "tzband/sections.hpp"

#include <cmath>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <random>
#include <stdexcept>

namespace tzband {

namespace {

constexpr double pi = std::numbers::pi;

cplx cp1_closed_form(int k, const CirclePoint& x1, const CirclePoint& x2) {
    const cplx z1 = x1.base.z(0), z2 = x2.base.z(0);
    const cplx q = 1.0 + z1 * std::conj(z2);
    if (q == cplx{}) return {};
    const double log_mod = -0.5 * k * (std::log1p(std::norm(z1)) + std::log1p(std::norm(z2)));
    const cplx expo = static_cast<double>(k) * std::log(q) + log_mod;
    const double prefactor = (k + 1) / pi;
    return prefactor * std::exp(expo + cplx{0.0, k * (x1.theta - x2.theta)});
}

cplx fock_closed_form(int k, int d, const CirclePoint& x1, const CirclePoint& x2) {
    const CVector& z1 = x1.base.z;
    const CVector& z2 = x2.base.z;
    const cplx h = z2.dot(z1);
    const cplx expo = static_cast<double>(k) * (h - 0.5 * (z1.squaredNorm() + z2.squaredNorm()));
    return std::pow(k / pi, d) * std::exp(expo + cplx{0.0, k * (x1.theta - x2.theta)});
}

cplx basis_sum(const SectionBasis& basis, const CirclePoint& x1, const CirclePoint& x2) {
    const CVector a = basis.eval_all(x1);
    const CVector b = basis.eval_all(x2);
    return b.dot(a);
}

// The CP1 closed form is derived, not quoted; it is only trusted after it
// reproduces the basis sum at a handful of levels.
void validate_cp1_closed_form() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        const auto model = ModelKahlerSurface::cp1();
        std::mt19937_64 rng(20240611);
        std::uniform_real_distribution<double> coord(-2.0, 2.0), ang(-pi, pi);
        for (int k : {2, 8, 32}) {
            SectionBasis basis(model, k);
            for (int n = 0; n < 16; ++n) {
                const CirclePoint x1 = CirclePoint::of({coord(rng), coord(rng)}, ang(rng));
                const CirclePoint x2 = CirclePoint::of({coord(rng), coord(rng)}, ang(rng));
                const cplx a = cp1_closed_form(k, x1, x2);
                const cplx b = basis_sum(basis, x1, x2);
                if (std::abs(a - b) > 1e-10 * kernel_sum_scale(basis, x1, x2))
                    throw std::logic_error("closed-form Szego kernel disagrees with the basis sum");
            }
        }
    });
}

}  // namespace

SectionBasis::SectionBasis(const ModelKahlerSurface& model, int k) : model_(model), k_(k) {
    if (k < 0) throw std::invalid_argument("SectionBasis: negative level");
    if (model.id() == ModelId::FockPlane) return;

    log_c_.resize(k + 1);
    const double base = std::log(k + 1.0) - std::log(pi) + std::lgamma(k + 1.0);
    for (int j = 0; j <= k; ++j)
        log_c_[j] = 0.5 * (base - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0));

    // |s_j|^2 = c_j^2 u^j (1-u)^(k-j) on the radial variable; GL with k/2 + 8
    // nodes integrates it exactly.
    std::vector<double> u, w;
    gauss_legendre(k / 2 + 8, 0.0, 1.0, u, w);
    for (int j = 0; j <= k; ++j) {
        double norm2 = 0.0;
        for (size_t i = 0; i < u.size(); ++i) {
            const double lg = 2.0 * log_c_[j] + j * std::log(u[i]) + (k - j) * std::log1p(-u[i]);
            norm2 += w[i] * std::exp(lg);
        }
        norm2 *= pi;  // (1/2) du * 2 pi dphi
        if (std::abs(norm2 - 1.0) > 1e-10)
            throw std::logic_error("SectionBasis: analytic normalization disagrees with quadrature");
    }
}

int SectionBasis::dim() const {
    require_finite();
    return k_ + 1;
}

void SectionBasis::require_finite() const {
    if (model_.id() == ModelId::FockPlane)
        throw std::domain_error("FockPlane sections have no finite basis");
}

cplx SectionBasis::eval(int j, const CirclePoint& x) const {
    require_finite();
    if (j < 0 || j > k_) throw std::out_of_range("basis index out of range");
    const cplx z = x.base.z(0);
    const double fiber = k_ * x.theta;
    if (z == cplx{}) return j == 0 ? std::polar(std::exp(log_c_[0]), fiber) : cplx{};
    const double lg = log_c_[j] + j * std::log(std::abs(z)) - 0.5 * k_ * std::log1p(std::norm(z));
    return std::polar(std::exp(lg), j * std::arg(z) + fiber);
}

CVector SectionBasis::eval_all(const CirclePoint& x) const {
    require_finite();
    CVector out(k_ + 1);
    const cplx z = x.base.z(0);
    const double fiber = k_ * x.theta;
    if (z == cplx{}) {
        out.setZero();
        out(0) = std::polar(std::exp(log_c_[0]), fiber);
        return out;
    }
    const double log_r = std::log(std::abs(z));
    const double log_frame = -0.5 * k_ * std::log1p(std::norm(z));
    const double arg = std::arg(z);
    for (int j = 0; j <= k_; ++j) out(j) = std::polar(std::exp(log_c_[j] + j * log_r + log_frame), j * arg + fiber);
    return out;
}

cplx basis_eval(const SectionBasis& basis, int j, const CirclePoint& x) { return basis.eval(j, x); }

double kernel_sum_scale(const SectionBasis& basis, const CirclePoint& x1, const CirclePoint& x2) {
    return basis.eval_all(x1).cwiseAbs().dot(basis.eval_all(x2).cwiseAbs());
}

KernelValue szego_kernel(const SectionBasis& basis, const CirclePoint& x1, const CirclePoint& x2,
                         KernelMethod method) {
    const int k = basis.level();
    const auto& model = basis.model();
    if (x1.base.dim() != model.dim() || x2.base.dim() != model.dim())
        throw std::invalid_argument("szego_kernel: point dimension does not match the model");
    if (model.id() == ModelId::FockPlane) {
        if (method != KernelMethod::closed_form)
            throw std::domain_error("szego_kernel: basis_sum unavailable for FockPlane");
        return {fock_closed_form(k, model.dim(), x1, x2), k, x1, x2};
    }
    if (method == KernelMethod::basis_sum) return {basis_sum(basis, x1, x2), k, x1, x2};
    validate_cp1_closed_form();
    return {cp1_closed_form(k, x1, x2), k, x1, x2};
}

double gram_check(const SectionBasis& basis, const QuadratureGrid& grid) {
    const int k = basis.level();
    const int n = basis.dim();

    // s_j conj(s_i) separates into R_j R_i (radial) times exp(i(j - i) phi).
    Eigen::MatrixXd radial(grid.n_rad(), n);
    for (int r = 0; r < grid.n_rad(); ++r) {
        const double u = grid.u()[r];
        for (int j = 0; j < n; ++j)
            radial(r, j) = std::exp(basis.log_norm_constant(j) + 0.5 * j * std::log(u) + 0.5 * (k - j) * std::log1p(-u));
    }
    std::vector<cplx> angular(2 * k + 1);
    for (int m = -k; m <= k; ++m) {
        cplx s{};
        for (double phi : grid.phi()) s += std::polar(1.0, m * phi);
        angular[m + k] = s * grid.angular_weight();
    }
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(grid.radial_weights().data(), grid.n_rad());
    const Eigen::MatrixXd rad_gram = radial.transpose() * w.asDiagonal() * radial;

    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx g = rad_gram(i, j) * angular[j - i + k];
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

void write_kernel_csv(std::ostream& os, const std::vector<KernelValue>& values) {
    os << "k,z1_re,z1_im,theta1,z2_re,z2_im,theta2,re,im\n" << std::setprecision(17);
    for (const auto& v : values) {
        const cplx z1 = v.x1.base.z(0), z2 = v.x2.base.z(0);
        os << v.k << ',' << z1.real() << ',' << z1.imag() << ',' << v.x1.theta << ',' << z2.real() << ','
           << z2.imag() << ',' << v.x2.theta << ',' << v.value.real() << ',' << v.value.imag() << '\n';
    }
}

}  // namespace tzband
