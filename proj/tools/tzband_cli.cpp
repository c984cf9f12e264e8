// tzband: sweep k, run the asymptotics experiments, write CSV, plot scripts
// and a pass/fail summary.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "tzband/config.hpp"
#include "tzband/experiments.hpp"
#include "tzband/report.hpp"

int main(int argc, char** argv) {
    using namespace tzband;

    CLI::App app{"Equivariant Toeplitz spectral projectors on model Kaehler manifolds"};
    app.require_subcommand(1, 1);

    std::string config_path, k_list, out_dir, symbol;
    long long seed = -1;
    int threads = -1;
    bool dump_config = false;
    app.add_option("-c,--config", config_path, "JSON experiment config");
    app.add_option("--k-list", k_list, "comma-separated levels, e.g. 16,32,64");
    app.add_option("-o,--out", out_dir, "output directory (TZBAND_OUTPUT_DIR overrides the config, --out overrides both)");
    app.add_option("--symbol", symbol, "symbol id: height, tilted_height, first_harmonic, constant");
    app.add_option("--seed", seed, "seed for sampled points");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    app.add_flag("--dump-config", dump_config, "print the effective config and exit");

    std::vector<std::string> names = experiment_names();
    names.push_back("all");
    for (const auto& n : names) app.add_subcommand(n, "run " + n)->fallthrough();

    CLI11_PARSE(app, argc, argv);
    const std::string which = app.get_subcommands().front()->get_name();

    try {
        verify_normalization(ModelKahlerSurface::cp1());
        ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
        if (!k_list.empty()) {
            cfg.k_list = parse_k_list(k_list);
            if (which == "g-identity") cfg.g_k_list = cfg.k_list;
        }
        if (!symbol.empty()) cfg.symbol = symbol;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        if (threads >= 0) cfg.threads = threads;
        cfg.validate();
        const std::string out = out_dir.empty() ? resolve_output_dir(cfg) : out_dir;
        if (dump_config) {
            std::cout << config_to_json(cfg) << "\n";
            return 0;
        }

        std::vector<ExperimentResult> results;
        if (which == "all") results = run_all(cfg);
        else results.push_back(run_by_name(which, cfg));
        const int code = emit_report(results, out);
        std::cout << summary_text(results) << "report written to " << out << "\n";
        return code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "tzband: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "tzband: " << e.what() << "\n";
        return 3;
    }
}
