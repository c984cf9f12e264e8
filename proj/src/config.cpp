#include "tzband/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tzband {

using nlohmann::json;

namespace {

cplx complex_from(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("config: complex value must be a number or [re, im], got " + j.dump());
}

// complex, or list of complex for d > 1
CVector vector_from(const json& j) {
    if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())) return CVector::Constant(1, complex_from(j));
    if (!j.is_array() || j.empty()) throw std::invalid_argument("config: expected a complex vector, got " + j.dump());
    CVector out(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) out(static_cast<Eigen::Index>(i)) = complex_from(j[i]);
    return out;
}

json vector_to(const CVector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
    return a;
}

template <class T>
void take(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ModelKahlerSurface ExperimentConfig::make_model() const {
    return model == ModelId::CP1 ? ModelKahlerSurface::cp1() : ModelKahlerSurface::fock_plane(dim);
}

SymbolFunction ExperimentConfig::make_symbol() const {
    auto f = symbols::by_name(symbol, symbol_param);
    return symbol_shift != 0.0 ? symbols::shifted(std::move(f), symbol_shift) : f;
}

double ExperimentConfig::varsigma_at_m() const { return make_symbol()(m(0)); }

void ExperimentConfig::check_offset(const CVector& off, int k) const {
    const double bound = std::pow(static_cast<double>(k), band.varpi);
    if (off.norm() > bound * (1.0 + 1e-12))
        throw std::invalid_argument("config: offset norm " + std::to_string(off.norm()) + " exceeds k^varpi = " +
                                    std::to_string(bound) + " at k = " + std::to_string(k));
}

void ExperimentConfig::validate() const {
    band.validate();
    if (model == ModelId::CP1 && dim != 1) throw std::invalid_argument("config: CP1 has dim 1");
    if (dim < 1) throw std::invalid_argument("config: dim must be >= 1");
    if (m.size() != dim || w.size() != dim || v.size() != dim)
        throw std::invalid_argument("config: m, w, v must have the model dimension");
    if (k_list.empty()) throw std::invalid_argument("config: empty k_list");
    for (int k : k_list) {
        if (k < 1) throw std::invalid_argument("config: k must be >= 1");
        check_offset(w, k);
        check_offset(v, k);
    }
    for (int k : g_k_list)
        if (k < 1) throw std::invalid_argument("config: k must be >= 1");
    if (!(epsilon > 0)) throw std::invalid_argument("config: chi epsilon must be positive");
    if (!(margin > 0)) throw std::invalid_argument("config: margin must be positive");
    if (!(gamma_C > 0)) throw std::invalid_argument("config: gamma_C must be positive");
    if (theta_samples < 1 || scaling_angles < 1 || scaling_theta_grid < 1)
        throw std::invalid_argument("config: sample counts must be positive");
    if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
    make_symbol();
}

ExperimentConfig config_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    ExperimentConfig c;
    if (j.contains("model")) c.model = model_from_string(j.at("model").get<std::string>());
    take(j, "dim", c.dim);
    if (j.contains("symbol")) {
        const json& s = j.at("symbol");
        if (s.is_string()) {
            c.symbol = s.get<std::string>();
        } else {
            take(s, "id", c.symbol);
            take(s, "param", c.symbol_param);
            take(s, "shift", c.symbol_shift);
        }
    }
    take(j, "k_list", c.k_list);
    take(j, "g_k_list", c.g_k_list);
    if (j.contains("m")) c.m = vector_from(j.at("m"));
    else c.m = CVector::Zero(c.dim);
    if (j.contains("w")) c.w = vector_from(j.at("w"));
    if (j.contains("v")) c.v = vector_from(j.at("v"));
    if (j.contains("band")) {
        const json& b = j.at("band");
        take(b, "xi", c.band.xi);
        take(b, "varpi", c.band.varpi);
        take(b, "c", c.band.c);
    }
    take(j, "margin", c.margin);
    if (j.contains("chi")) take(j.at("chi"), "epsilon", c.epsilon);
    take(j, "gamma_C", c.gamma_C);
    take(j, "weyl_lambdas", c.weyl_lambdas);
    take(j, "g_lambdas", c.g_lambdas);
    if (j.contains("scaling")) {
        const json& s = j.at("scaling");
        take(s, "radii", c.scaling_radii);
        take(s, "angles", c.scaling_angles);
        take(s, "theta_grid", c.scaling_theta_grid);
    }
    take(j, "theta_samples", c.theta_samples);
    take(j, "seed", c.seed);
    take(j, "threads", c.threads);
    take(j, "output_dir", c.output_dir);
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        take(t, "slope_threshold", c.tol.slope_threshold);
        take(t, "fit_k_min", c.tol.fit_k_min);
        take(t, "eigen_slack", c.tol.eigen_slack);
        take(t, "eigen_oracle", c.tol.eigen_oracle);
        take(t, "weyl_const", c.tol.weyl_const);
        take(t, "scaling_const", c.tol.scaling_const);
        take(t, "scaling_k_min", c.tol.scaling_k_min);
        take(t, "g_gap", c.tol.g_gap);
        take(t, "g_two_pi", c.tol.g_two_pi);
        take(t, "structural", c.tol.structural);
        take(t, "phase", c.tol.phase);
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
    json j;
    j["model"] = to_string(c.model);
    j["dim"] = c.dim;
    j["symbol"] = {{"id", c.symbol}, {"param", c.symbol_param}, {"shift", c.symbol_shift}};
    j["k_list"] = c.k_list;
    j["g_k_list"] = c.g_k_list;
    j["m"] = vector_to(c.m);
    j["w"] = vector_to(c.w);
    j["v"] = vector_to(c.v);
    j["band"] = {{"xi", c.band.xi}, {"varpi", c.band.varpi}, {"c", c.band.c}};
    j["margin"] = c.margin;
    j["chi"] = {{"epsilon", c.epsilon}};
    j["gamma_C"] = c.gamma_C;
    j["weyl_lambdas"] = c.weyl_lambdas;
    j["g_lambdas"] = c.g_lambdas;
    j["scaling"] = {{"radii", c.scaling_radii}, {"angles", c.scaling_angles}, {"theta_grid", c.scaling_theta_grid}};
    j["theta_samples"] = c.theta_samples;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["output_dir"] = c.output_dir;
    j["tolerances"] = {{"slope_threshold", c.tol.slope_threshold}, {"fit_k_min", c.tol.fit_k_min},
                       {"eigen_slack", c.tol.eigen_slack},       {"eigen_oracle", c.tol.eigen_oracle},
                       {"weyl_const", c.tol.weyl_const},         {"scaling_const", c.tol.scaling_const},
                       {"scaling_k_min", c.tol.scaling_k_min},   {"g_gap", c.tol.g_gap},
                       {"g_two_pi", c.tol.g_two_pi},             {"structural", c.tol.structural},
                       {"phase", c.tol.phase}};
    return j.dump(2);
}

std::vector<int> parse_k_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t pos = 0;
        const int k = std::stoi(item, &pos);
        if (pos != item.size() || k < 1) throw std::invalid_argument("k-list: bad entry '" + item + "'");
        out.push_back(k);
    }
    if (out.empty()) throw std::invalid_argument("k-list: empty");
    return out;
}

std::string resolve_output_dir(const ExperimentConfig& cfg) {
    if (const char* env = std::getenv("TZBAND_OUTPUT_DIR"); env && *env) return env;
    return cfg.output_dir;
}

}  // namespace tzband
