// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tzband/config.hpp"
#include "tzband/experiments.hpp"

using namespace tzband;

namespace {

struct Check {
    int id;
    std::string title;
    std::function<std::vector<ExperimentResult>()> run;
};

ExperimentConfig regular_point() {
    ExperimentConfig c;
    c.m = CVector::Constant(1, cplx{1.0, 0.0});
    c.w = CVector::Constant(1, cplx{1.0, 0.0});
    c.v = CVector::Constant(1, cplx{0.0, 1.0});
    return c;
}

}  // namespace

int main() {
    std::vector<Check> checks{
        {1, "exact zero-order eigenvalue bounds, height, k = 2..512",
         [] {
             ExperimentConfig c;
             c.k_list.clear();
             for (int k = 2; k <= 512; ++k) c.k_list.push_back(k);
             return std::vector{run_spectrum(c)};
         }},
        {2, "Weyl law, height, lambda = 1/2 and 2",
         [] {
             ExperimentConfig c;
             c.weyl_lambdas = {0.5, 2.0};
             return std::vector{run_weyl_law(c)};
         }},
        {3, "scaling limit at m = 0, |w|, |v| <= 2, k = 64..512, 5 x 5 theta grid",
         [] {
             ExperimentConfig c;
             c.k_list = {64, 128, 256, 512};
             return std::vector{run_scaling_limit(c)};
         }},
        {4, "low-band rapid decay at m = 1, w = 1, v = i (fixed margin and shrinking threshold)",
         [] { return std::vector{run_low_band_decay(regular_point())}; }},
        {5, "band agreement at m = 1, w = 1, v = i (fixed upper threshold and shrinking band)",
         [] { return std::vector{run_band_agreement(regular_point())}; }},
        {6, "smoothed-kernel decay gamma_k(0.3), height at z = 0 and f = 1",
         [] {
             ExperimentConfig h;
             ExperimentConfig one;
             one.symbol = "constant";
             one.symbol_param = 1.0;
             return std::vector{run_smoothed_decay(h), run_smoothed_decay(one)};
         }},
        {7, "G_k identity, k = 8, 16, 32, five lambda samples",
         [] {
             auto c = regular_point();
             c.g_k_list = {8, 16, 32};
             c.g_lambdas = {-0.5, 0.0, 0.5, 1.0, 1.5};
             return std::vector{run_g_identity(c)};
         }},
        {8, "structural suite, k = 2, 8, 32",
         [] {
             ExperimentConfig c;
             c.k_list = {2, 8, 32};
             ExperimentConfig d = c;
             d.symbol = "tilted_height";
             return std::vector{run_basis_check(c), run_basis_check(d)};
         }},
    };

    int failed = 0;
    for (const auto& chk : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::string detail;
        try {
            for (const auto& r : chk.run()) {
                for (const auto& c : r.criteria) {
                    ok = ok && c.passed;
                    detail += "\n    " + std::string(c.passed ? "ok   " : "FAIL ") + c.id + " [" + r.name + "] " + c.detail;
                }
                for (const auto& n : r.notes) detail += "\n    note: " + n;
            }
        } catch (const std::exception& e) {
            ok = false;
            detail += std::string("\n    error: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d: %s  %s  (%.1f s)%s\n", chk.id, ok ? "PASS" : "FAIL", chk.title.c_str(), secs,
                    detail.c_str());
        std::fflush(stdout);
        failed += !ok;
    }
    std::printf("acceptance: %zu criteria, %d failed\n", checks.size(), failed);
    return failed == 0 ? 0 : 1;
}
