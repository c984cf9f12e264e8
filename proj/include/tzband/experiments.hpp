#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tzband/config.hpp"
#include "tzband/decay_fit.hpp"

namespace tzband {

/// Numeric table written as one CSV file.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// A column of a table plotted against k, with its decay fit when it has one.
struct Series {
    std::string label;
    std::string table;
    std::string column;
    std::optional<DecayFit> fit;
    /// optional bound column drawn alongside
    std::string bound_column;
};

/// One pass/fail line. Ids start with the acceptance criterion number
/// ("4.fixed", "7.gap").
struct Criterion {
    std::string id;
    std::string title;
    bool passed = false;
    std::string detail;
};

struct ExperimentResult {
    std::string name;
    std::vector<Table> tables;
    std::vector<Series> series;
    std::vector<Criterion> criteria;
    std::vector<std::string> notes;

    bool passed() const;
    const Table& table(const std::string& name) const;
};

/// Run fn(k) for every k on a pool of worker threads; results come back in
/// k-list order. The first exception in k-list order is rethrown.
template <class F>
auto sweep_levels(const std::vector<int>& ks, int threads, F&& fn) {
    using R = decltype(fn(0));
    std::vector<std::optional<R>> slots(ks.size());
    std::vector<std::exception_ptr> errors(ks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < ks.size();) {
            try {
                slots[i].emplace(fn(ks[i]));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    size_t n = threads > 0 ? static_cast<size_t>(threads) : std::max(1u, std::thread::hardware_concurrency());
    n = std::max<size_t>(1, std::min(n, ks.size()));
    std::vector<std::thread> pool;
    for (size_t t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(ks.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

/// Gram orthonormality, closed form vs basis sum, equivariance phases,
/// Cauchy-Schwarz for band increments, projector invariance under permuted
/// eigensolver input.
ExperimentResult run_basis_check(const ExperimentConfig& cfg);
/// Zero-order eigenvalue bounds, the analytic oracle when known, exact lift.
ExperimentResult run_spectrum(const ExperimentConfig& cfg);
ExperimentResult run_weyl_law(const ExperimentConfig& cfg);
ExperimentResult run_scaling_limit(const ExperimentConfig& cfg);
ExperimentResult run_low_band_decay(const ExperimentConfig& cfg);
ExperimentResult run_band_agreement(const ExperimentConfig& cfg);
ExperimentResult run_smoothed_decay(const ExperimentConfig& cfg);
ExperimentResult run_g_identity(const ExperimentConfig& cfg);

/// Subcommand name to runner; "all" is handled by `run_all`.
ExperimentResult run_by_name(const std::string& name, const ExperimentConfig& cfg);
std::vector<ExperimentResult> run_all(const ExperimentConfig& cfg);
const std::vector<std::string>& experiment_names();

}  // namespace tzband
