#include "tzband/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <ostream>

namespace tzband {

namespace {

struct Rule {
    std::vector<double> x, w;
};

// Reference rule on [-1, 1], ascending nodes; cached per n.
const Rule& reference_rule(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Rule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) {
        auto r = std::make_unique<Rule>();
        const auto zeros = boost::math::legendre_p_zeros<double>(n);  // nonnegative half
        for (auto it = zeros.rbegin(); it != zeros.rend(); ++it)
            if (*it != 0.0) r->x.push_back(-*it);
        for (double z : zeros) r->x.push_back(z);
        for (double x : r->x) {
            const double dp = boost::math::legendre_p_prime(n, x);
            r->w.push_back(2.0 / ((1.0 - x * x) * dp * dp));
        }
        slot = std::move(r);
    }
    return *slot;
}

}  // namespace

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    const Rule& r = reference_rule(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = mid + half * r.x[i];
        weights[i] = half * r.w[i];
    }
}

QuadratureGrid::QuadratureGrid(int n_rad, int n_ang) {
    if (n_rad < 1 || n_ang < 1) throw std::invalid_argument("QuadratureGrid: node counts must be positive");
    gauss_legendre(n_rad, 0.0, 1.0, u_, wu_);
    for (auto& w : wu_) w *= 0.5;
    phi_.resize(n_ang);
    wphi_ = 2.0 * std::numbers::pi / n_ang;
    for (int a = 0; a < n_ang; ++a) phi_[a] = a * wphi_;
}

QuadratureGrid QuadratureGrid::for_level(int k) {
    if (k < 0) throw std::invalid_argument("QuadratureGrid: negative level");
    return {k + 16, 2 * k + 4};
}

void QuadratureGrid::write_csv(std::ostream& os) const {
    os << "kind,index,node,weight\n";
    for (int i = 0; i < n_rad(); ++i) os << "radial," << i << ',' << u_[i] << ',' << wu_[i] << '\n';
    for (int a = 0; a < n_ang(); ++a) os << "angular," << a << ',' << phi_[a] << ',' << wphi_ << '\n';
}

}  // namespace tzband
