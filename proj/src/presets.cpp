#include "uhs/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace uhs {

namespace {

template <class T>
T get(const Json& doc, const char* key, const T& fallback) {
    if (!doc.contains(key)) return fallback;
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigurationError(std::string("config key '") + key + "' has the wrong type");
    }
}

void reject_unknown(const Json& doc, const std::set<std::string>& allowed, const std::string& where) {
    if (!doc.is_object()) throw ConfigurationError(where + " must be an object");
    for (const auto& item : doc.items())
        if (!allowed.count(item.key())) throw ConfigurationError("unknown config key '" + item.key() + "' in " + where);
}

RealVector unit(RealVector v, const char* what) {
    const double len = norm(v);
    if (!(len > 0.0)) throw ConfigurationError(std::string(what) + " must be a nonzero vector");
    for (auto& x : v) x /= len;
    return v;
}

RealVector first_axis(int dim) {
    RealVector v(static_cast<std::size_t>(dim), 0.0);
    v[0] = 1.0;
    return v;
}

AngularPolynomial polynomial_from(const Json& params) {
    AngularPolynomial P;
    if (!params.contains("terms")) return P;
    for (const auto& t : params.at("terms")) {
        AngularMonomial m;
        m.coefficient = get<double>(t, "coefficient", 1.0);
        m.zeta_powers = get<std::vector<int>>(t, "zeta", {});
        m.sigma_powers = get<std::vector<int>>(t, "sigma", {});
        P.terms.push_back(std::move(m));
    }
    return P;
}

Amplitude read_custom_file(const RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot read amplitude file '" + path + "'");
    RealVector r;
    std::vector<Complex> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double rr = 0, re = 0, im = 0;
        if (!(row >> rr >> re)) throw ConfigurationError("malformed line in '" + path + "': " + line);
        row >> im;
        r.push_back(rr);
        values.emplace_back(re, im);
    }
    return tabulated_radial(cfg.d, cfg.n, cfg.epsilon, std::move(r), std::move(values));
}

}  // namespace

void validate_config(const RunConfig& cfg) {
    if (cfg.d < 1 || cfg.d > 3 || cfg.n < 1 || cfg.n > 3)
        throw DimensionError("dimensions must satisfy 1 <= d, n <= 3 (got d=" + std::to_string(cfg.d) +
                             ", n=" + std::to_string(cfg.n) + ")");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 0.5)) throw ConfigurationError("epsilon must lie in (0, 1/2]");
    if (cfg.preset != "gamma_exp" && cfg.preset != "angular_bump" && cfg.preset != "custom_file")
        throw ConfigurationError("unknown preset '" + cfg.preset + "'");
    auto increasing = [](const RealVector& v, const char* what) {
        if (v.empty()) throw ConfigurationError(std::string(what) + " must not be empty");
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] > v[i - 1])) throw ConfigurationError(std::string(what) + " must be strictly increasing");
        if (!(v.front() > 0.0)) throw ConfigurationError(std::string(what) + " must be positive");
    };
    increasing(cfg.s_ladder, "s_ladder");
    increasing(cfg.stationary_s, "stationary_s");
    increasing(cfg.r_values, "r_values");
    increasing(cfg.compat_r, "compat_r");
    for (double h : cfg.h_ladder)
        if (!(h > 0.0)) throw ConfigurationError("h_ladder entries must be positive");
    if (!(cfg.quadrature.radial_tol > 0.0)) throw ConfigurationError("radial_tol must be positive");
    if (cfg.quadrature.sphere_resolution < 0) throw ConfigurationError("sphere_resolution must be >= 0");
    if (!(cfg.r > 0.0)) throw ConfigurationError("r must be positive");
    if (!cfg.theta.empty() && static_cast<int>(cfg.theta.size()) != cfg.d)
        throw ConfigurationError("theta must have d components");
    if (!cfg.omega.empty() && static_cast<int>(cfg.omega.size()) != cfg.n)
        throw ConfigurationError("omega must have n components");
    for (const auto& [x, y] : cfg.points)
        if (static_cast<int>(x.size()) != cfg.d || static_cast<int>(y.size()) != cfg.n)
            throw ConfigurationError("points must be [x (d components), y (n components)]");
    if (cfg.output.format != "csv" && cfg.output.format != "json")
        throw ConfigurationError("output.format must be csv or json");
    const std::set<std::string> targets{"u", "f", "sphere_rule", "radial_rule"};
    if (!targets.count(cfg.eval_target)) throw ConfigurationError("eval target must be u, f, sphere_rule or radial_rule");
}

RunConfig parse_config(const Json& doc) {
    reject_unknown(doc,
                   {"d", "n", "epsilon", "preset", "preset_params", "quadrature", "s_ladder", "p_values", "r_values",
                    "compat_r", "h_ladder", "points", "theta", "omega", "r", "stationary_s", "lemma", "eval_target",
                    "output"},
                   "config");
    RunConfig cfg;
    cfg.source = doc;
    cfg.d = get<int>(doc, "d", cfg.d);
    cfg.n = get<int>(doc, "n", cfg.n);
    cfg.epsilon = get<double>(doc, "epsilon", cfg.epsilon);
    cfg.preset = get<std::string>(doc, "preset", cfg.preset);
    if (doc.contains("preset_params")) {
        cfg.preset_params = doc.at("preset_params");
        reject_unknown(cfg.preset_params, {"terms", "tail", "theta0", "omega0", "width", "power", "file"},
                       "preset_params");
    }
    if (doc.contains("quadrature")) {
        const auto& q = doc.at("quadrature");
        reject_unknown(q, {"radial_tol", "sphere_resolution", "s_scale"}, "quadrature");
        cfg.quadrature.radial_tol = get<double>(q, "radial_tol", cfg.quadrature.radial_tol);
        cfg.quadrature.sphere_resolution = get<int>(q, "sphere_resolution", cfg.quadrature.sphere_resolution);
        cfg.quadrature.s_scale = get<double>(q, "s_scale", cfg.quadrature.s_scale);
    }
    cfg.s_ladder = get<RealVector>(doc, "s_ladder", cfg.s_ladder);
    cfg.p_values = get<RealVector>(doc, "p_values", cfg.p_values);
    cfg.r_values = get<RealVector>(doc, "r_values", cfg.r_values);
    cfg.compat_r = get<RealVector>(doc, "compat_r", cfg.compat_r);
    cfg.h_ladder = get<RealVector>(doc, "h_ladder", cfg.h_ladder);
    cfg.points = get<std::vector<std::pair<RealVector, RealVector>>>(doc, "points", cfg.points);
    cfg.theta = get<RealVector>(doc, "theta", cfg.theta);
    cfg.omega = get<RealVector>(doc, "omega", cfg.omega);
    cfg.r = get<double>(doc, "r", cfg.r);
    cfg.stationary_s = get<RealVector>(doc, "stationary_s", cfg.stationary_s);
    if (doc.contains("lemma")) {
        const auto& l = doc.at("lemma");
        reject_unknown(l, {"profile", "a", "epsilon", "k_max", "ell_max"}, "lemma");
        cfg.lemma.profile = get<std::string>(l, "profile", cfg.lemma.profile);
        cfg.lemma.a = get<double>(l, "a", cfg.lemma.a);
        cfg.lemma.epsilon = get<double>(l, "epsilon", cfg.lemma.epsilon);
        cfg.lemma.k_max = get<int>(l, "k_max", cfg.lemma.k_max);
        cfg.lemma.ell_max = get<int>(l, "ell_max", cfg.lemma.ell_max);
    }
    cfg.eval_target = get<std::string>(doc, "eval_target", cfg.eval_target);
    if (doc.contains("output")) {
        const auto& o = doc.at("output");
        reject_unknown(o, {"path", "format"}, "output");
        cfg.output.path = get<std::string>(o, "path", cfg.output.path);
        cfg.output.format = get<std::string>(o, "format", cfg.output.format);
    }
    validate_config(cfg);
    return cfg;
}

Json config_echo(const RunConfig& cfg) {
    Json points = Json::array();
    for (const auto& [x, y] : cfg.points) points.push_back(Json::array({x, y}));
    return Json{{"d", cfg.d},
                {"n", cfg.n},
                {"epsilon", cfg.epsilon},
                {"preset", cfg.preset},
                {"preset_params", cfg.preset_params},
                {"quadrature",
                 {{"radial_tol", cfg.quadrature.radial_tol},
                  {"sphere_resolution", cfg.quadrature.sphere_resolution},
                  {"s_scale", cfg.quadrature.s_scale}}},
                {"s_ladder", cfg.s_ladder},
                {"p_values", cfg.p_values},
                {"r_values", cfg.r_values},
                {"compat_r", cfg.compat_r},
                {"h_ladder", cfg.h_ladder},
                {"points", points},
                {"theta", config_theta(cfg)},
                {"omega", config_omega(cfg)},
                {"r", cfg.r},
                {"stationary_s", cfg.stationary_s},
                {"lemma",
                 {{"profile", cfg.lemma.profile},
                  {"a", cfg.lemma.a},
                  {"epsilon", cfg.lemma.epsilon},
                  {"k_max", cfg.lemma.k_max},
                  {"ell_max", cfg.lemma.ell_max}}},
                {"eval_target", cfg.eval_target},
                {"output", {{"path", cfg.output.path}, {"format", cfg.output.format}}}};
}

Amplitude build_amplitude(const RunConfig& cfg) {
    validate_config(cfg);
    const auto& params = cfg.preset_params;
    if (cfg.preset == "gamma_exp") {
        const bool tail = get<bool>(params, "tail", true);
        return tail ? gamma_exp(cfg.d, cfg.n, cfg.epsilon, polynomial_from(params))
                    : gamma_without_tail(cfg.d, cfg.n, cfg.epsilon, polynomial_from(params));
    }
    if (cfg.preset == "angular_bump") {
        const RealVector theta0 = unit(get<RealVector>(params, "theta0", first_axis(cfg.d)), "theta0");
        const RealVector omega0 = unit(get<RealVector>(params, "omega0", first_axis(cfg.n)), "omega0");
        return angular_bump(cfg.d, cfg.n, cfg.epsilon, theta0, omega0, get<double>(params, "width", 0.5),
                            get<int>(params, "power", 6));
    }
    const std::string file = get<std::string>(params, "file", "");
    if (file.empty()) throw ConfigurationError("custom_file preset needs preset_params.file");
    return read_custom_file(cfg, file);
}

ScatteringData reference_scattering(const Amplitude& A) {
    if (A.separable() && A.gamma_radial) return closed_form_scattering(A);
    return scattering_from_amplitude(A);
}

RealVector config_theta(const RunConfig& cfg) {
    return cfg.theta.empty() ? first_axis(cfg.d) : unit(cfg.theta, "theta");
}

RealVector config_omega(const RunConfig& cfg) {
    return cfg.omega.empty() ? first_axis(cfg.n) : unit(cfg.omega, "omega");
}

}  // namespace uhs
