#include "tzband/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace tzband {

namespace {

constexpr double pi = std::numbers::pi;

// |s_j| on radial node u: c_j u^{j/2} (1 - u)^{(k - j)/2}.
Eigen::MatrixXd radial_profiles(const SectionBasis& basis, const QuadratureGrid& grid) {
    const int k = basis.level();
    Eigen::MatrixXd R(grid.n_rad(), k + 1);
    for (int r = 0; r < grid.n_rad(); ++r) {
        const double lu = std::log(grid.u()[r]);
        const double lv = std::log1p(-grid.u()[r]);
        for (int j = 0; j <= k; ++j) R(r, j) = std::exp(basis.log_norm_constant(j) + 0.5 * j * lu + 0.5 * (k - j) * lv);
    }
    return R;
}

double checked_sample(const SymbolFunction& f, cplx z) {
    const double v = f(z);
    if (!std::isfinite(v)) throw std::domain_error("build_toeplitz: non-finite symbol sample for '" + f.id + "'");
    return v;
}

}  // namespace

namespace symbols {

SymbolFunction constant(double c) {
    return {"constant", [c](cplx) { return c; }, c, c, true};
}

SymbolFunction height() {
    return {"height", [](cplx z) { const double t = std::norm(z); return t / (1.0 + t); }, 0.0, 1.0, true};
}

SymbolFunction tilted_height() {
    return {"tilted_height", [](cplx z) { return 0.5 + z.real() / (1.0 + std::norm(z)); }, 0.0, 1.0, false};
}

SymbolFunction first_harmonic() {
    return {"first_harmonic", [](cplx z) { return z.real() / (1.0 + std::norm(z)); }, -0.5, 0.5, false};
}

SymbolFunction shifted(SymbolFunction f, double c) {
    SymbolFunction g = f;
    g.id = f.id + "+" + std::to_string(c);
    g.f = [inner = std::move(f.f), c](cplx z) { return inner(z) + c; };
    if (g.min) *g.min += c;
    if (g.max) *g.max += c;
    return g;
}

SymbolFunction by_name(const std::string& name, double param) {
    if (name == "constant") return constant(param);
    if (name == "height") return height();
    if (name == "tilted_height") return tilted_height();
    if (name == "first_harmonic") return first_harmonic();
    throw std::invalid_argument("unknown symbol '" + name + "'");
}

}  // namespace symbols

ToeplitzSpectrum build_toeplitz(const SymbolFunction& f, const SectionBasis& basis, const QuadratureGrid& grid) {
    const int k = basis.level();
    const int n = k + 1;
    const Eigen::MatrixXd R = radial_profiles(basis, grid);
    const auto& wr = grid.radial_weights();

    ToeplitzSpectrum t;
    t.k = k;
    t.symbol_id = f.id;
    t.matrix = Eigen::MatrixXcd::Zero(n, n);

    if (f.rotation_invariant) {
        // The angular sum of exp(i(j - i) phi) vanishes exactly for i != j.
        for (int r = 0; r < grid.n_rad(); ++r) {
            const double fr = checked_sample(f, grid.radius(r)) * wr[r] * 2.0 * pi;
            for (int j = 0; j < n; ++j) t.matrix(j, j) += fr * R(r, j) * R(r, j);
        }
        return t;
    }

    // Angular Fourier coefficients F_r(m) = sum_a w_phi f(r, phi_a) e^{i m phi_a}, m = 0..k.
    const int na = grid.n_ang();
    std::vector<cplx> roots(na);
    for (int a = 0; a < na; ++a) roots[a] = std::polar(1.0, 2.0 * pi * a / na);
    Eigen::MatrixXcd F(grid.n_rad(), n);
    std::vector<double> samples(na);
    for (int r = 0; r < grid.n_rad(); ++r) {
        for (int a = 0; a < na; ++a) samples[a] = checked_sample(f, grid.point(r, a));
        for (int m = 0; m < n; ++m) {
            cplx s{};
            for (int a = 0; a < na; ++a) s += samples[a] * roots[(static_cast<long>(m) * a) % na];
            F(r, m) = s * grid.angular_weight();
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            cplx s{};
            for (int r = 0; r < grid.n_rad(); ++r) s += wr[r] * R(r, i) * R(r, j) * F(r, j - i);
            t.matrix(i, j) = s;
            t.matrix(j, i) = std::conj(s);
        }
    for (int i = 0; i < n; ++i) t.matrix(i, i) = t.matrix(i, i).real();
    return t;
}

ToeplitzSpectrum lift_first_order(const ToeplitzSpectrum& t) {
    if (t.order != OperatorOrder::zero) throw std::invalid_argument("lift_first_order: input already first order");
    ToeplitzSpectrum out = t;
    const double k = t.k;
    out.order = OperatorOrder::first;
    out.matrix *= k;
    out.eigenvalues *= k;
    out.residual *= k;
    return out;
}

ToeplitzSpectrum eigendecompose(ToeplitzSpectrum t) {
    const int n = t.size();
    if (n == 0) throw std::invalid_argument("eigendecompose: empty matrix");
    const double scale = std::max(t.matrix.cwiseAbs().maxCoeff(), 1e-300);
    if ((t.matrix - t.matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-14 * scale)
        throw std::invalid_argument("eigendecompose: matrix is not Hermitian");

    const bool diagonal = (t.matrix - Eigen::MatrixXcd(t.matrix.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
    if (diagonal) {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return t.matrix(a, a).real() < t.matrix(b, b).real(); });
        t.eigenvalues.resize(n);
        t.eigenvectors = Eigen::MatrixXcd::Zero(n, n);
        for (int j = 0; j < n; ++j) {
            t.eigenvalues(j) = t.matrix(idx[j], idx[j]).real();
            t.eigenvectors(idx[j], j) = 1.0;
        }
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(t.matrix);
        if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecompose: eigensolver did not converge");
        t.eigenvalues = solver.eigenvalues();
        t.eigenvectors = solver.eigenvectors();
    }

    double res = 0.0;
    for (int j = 0; j < n; ++j)
        res = std::max(res, (t.matrix * t.eigenvectors.col(j) - t.eigenvalues(j) * t.eigenvectors.col(j)).norm());
    t.residual = res;
    if (res > 1e-10 * scale) throw std::runtime_error("eigendecompose: residual " + std::to_string(res) + " too large");
    return t;
}

CVector eigenfunctions_at(const ToeplitzSpectrum& t, const SectionBasis& basis, const CirclePoint& x) {
    if (!t.decomposed()) throw std::logic_error("eigenfunctions_at: spectrum not decomposed");
    if (basis.level() != t.k) throw std::invalid_argument("eigenfunctions_at: basis level mismatch");
    return t.eigenvectors.transpose() * basis.eval_all(x);
}

cplx eigenfunction_eval(const ToeplitzSpectrum& t, const SectionBasis& basis, int j, const CirclePoint& x) {
    if (j < 0 || j >= t.size()) throw std::out_of_range("eigenfunction index out of range");
    if (!t.decomposed()) throw std::logic_error("eigenfunction_eval: spectrum not decomposed");
    return t.eigenvectors.col(j).transpose() * basis.eval_all(x);
}

ToeplitzSpectrum first_order_spectrum(const SymbolFunction& f, const SectionBasis& basis) {
    return lift_first_order(eigendecompose(build_toeplitz(f, basis, QuadratureGrid::for_level(basis.level()))));
}

void write_eigenvalues_csv(std::ostream& os, const ToeplitzSpectrum& t, bool header) {
    if (header) os << "k,j,lambda\n";
    os << std::setprecision(17);
    for (int j = 0; j < t.eigenvalues.size(); ++j) os << t.k << ',' << j << ',' << t.eigenvalues(j) << '\n';
}

namespace {
constexpr char kMagic[8] = {'T', 'Z', 'B', 'S', 'P', 'E', 'C', '1'};
constexpr std::int32_t kCacheVersion = 1;
}  // namespace

void save_spectrum(const std::string& path, const ToeplitzSpectrum& t, ModelId model) {
    if (!t.decomposed()) throw std::logic_error("save_spectrum: spectrum not decomposed");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_spectrum: cannot open " + path);
    const std::int32_t m = static_cast<std::int32_t>(model), k = t.k, n = t.size(),
                       order = static_cast<std::int32_t>(t.order);
    const std::int32_t id_len = static_cast<std::int32_t>(t.symbol_id.size());
    out.write(kMagic, sizeof kMagic);
    for (std::int32_t v : {kCacheVersion, m, k, n, order, id_len}) out.write(reinterpret_cast<const char*>(&v), sizeof v);
    out.write(t.symbol_id.data(), id_len);
    out.write(reinterpret_cast<const char*>(&t.residual), sizeof t.residual);
    out.write(reinterpret_cast<const char*>(t.eigenvalues.data()), sizeof(double) * n);
    out.write(reinterpret_cast<const char*>(t.eigenvectors.data()), sizeof(cplx) * n * n);
    out.write(reinterpret_cast<const char*>(t.matrix.data()), sizeof(cplx) * n * n);
    if (!out) throw std::runtime_error("save_spectrum: write failed");
}

std::optional<ToeplitzSpectrum> load_spectrum(const std::string& path, ModelId model, const std::string& symbol_id, int k) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || !std::equal(magic, magic + 8, kMagic)) return std::nullopt;
    std::int32_t hdr[6];
    in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
    if (!in || hdr[0] != kCacheVersion || hdr[1] != static_cast<std::int32_t>(model) || hdr[2] != k) return std::nullopt;
    const int n = hdr[3];
    std::string id(static_cast<size_t>(hdr[5]), '\0');
    in.read(id.data(), hdr[5]);
    if (!in || id != symbol_id || n != k + 1) return std::nullopt;
    ToeplitzSpectrum t;
    t.k = k;
    t.order = static_cast<OperatorOrder>(hdr[4]);
    t.symbol_id = id;
    t.eigenvalues.resize(n);
    t.eigenvectors.resize(n, n);
    t.matrix.resize(n, n);
    in.read(reinterpret_cast<char*>(&t.residual), sizeof t.residual);
    in.read(reinterpret_cast<char*>(t.eigenvalues.data()), sizeof(double) * n);
    in.read(reinterpret_cast<char*>(t.eigenvectors.data()), sizeof(cplx) * n * n);
    in.read(reinterpret_cast<char*>(t.matrix.data()), sizeof(cplx) * n * n);
    if (!in) return std::nullopt;
    return t;
}

}  // namespace tzband
