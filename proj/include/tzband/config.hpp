#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tzband/geometry.hpp"
#include "tzband/spectral.hpp"
#include "tzband/toeplitz.hpp"

namespace tzband {

struct Tolerances {
    /// rapid-decay proxy: fitted log-log slope threshold, fit window k >= fit_k_min
    double slope_threshold = -3.0;
    int fit_k_min = 64;
    double eigen_slack = 1e-10;
    double eigen_oracle = 1e-8;
    /// Weyl: |(pi/k)^d dim - vol| <= weyl_const / k
    double weyl_const = 4.0;
    /// scaling limit: error <= scaling_const * k^{-1/2}
    double scaling_const = 2.0;
    int scaling_k_min = 64;
    double g_gap = 1e-5;
    /// |lhs - 2 pi T| <= g_two_pi * k
    double g_two_pi = 1e-4;
    double structural = 1e-10;
    double phase = 1e-12;
};

/// Declarative experiment description, loaded from JSON.
///
/// Schema (all keys optional):
///   model: "CP1" | "FockPlane", dim: int
///   symbol: {id, param, shift}          D o T_f + shift D
///   k_list: [int]
///   m, w, v: complex or [complex]       complex = number | [re, im]
///   band: {xi, varpi, c}
///   margin: double
///   chi: {epsilon}
///   gamma_C: double
///   weyl_lambdas, g_lambdas: [double]
///   scaling: {radii: [double], angles: int, theta_grid: int}
///   theta_samples: int, seed: int, threads: int
///   output_dir: string                  overridden by TZBAND_OUTPUT_DIR
///   tolerances: {field: value}
struct ExperimentConfig {
    ModelId model = ModelId::CP1;
    int dim = 1;
    std::string symbol = "height";
    double symbol_param = 0.0;
    double symbol_shift = 0.0;
    std::vector<int> k_list{16, 32, 64, 128, 256, 512};
    CVector m = CVector::Zero(1);
    CVector w = CVector::Constant(1, cplx{1.0, 0.0});
    CVector v = CVector::Constant(1, cplx{0.0, 1.0});
    BandSpec band = BandSpec::below(0.0);
    double margin = 0.2;
    double epsilon = 0.5;
    double gamma_C = 0.3;
    std::vector<double> weyl_lambdas{0.5, 2.0};
    std::vector<double> g_lambdas{-0.5, 0.0, 0.5, 1.0, 1.5};
    std::vector<int> g_k_list{8, 16, 32};
    std::vector<double> scaling_radii{0.0, 1.0, 2.0};
    int scaling_angles = 8;
    int scaling_theta_grid = 5;
    int theta_samples = 5;
    std::uint64_t seed = 20240607;
    int threads = 0;
    std::string output_dir = "tzband_out";
    Tolerances tol;

    ModelKahlerSurface make_model() const;
    SymbolFunction make_symbol() const;
    /// Reduced symbol at the base point m.
    double varsigma_at_m() const;

    /// Hypothesis gates: 0 <= xi < 1/2, varpi <= 1/6, varpi < 1/2 - xi, c > 0,
    /// offsets within k^varpi for every k in k_list, positive k, dimensions.
    /// Throws std::invalid_argument.
    void validate() const;
    /// Offset gate for one level: |w| <= k^varpi.
    void check_offset(const CVector& off, int k) const;
};

ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg);

/// Parse "16,32,64".
std::vector<int> parse_k_list(const std::string& text);

/// cfg.output_dir unless TZBAND_OUTPUT_DIR is set.
std::string resolve_output_dir(const ExperimentConfig& cfg);

}  // namespace tzband
