// uhs: command-line driver for the ultrahyperbolic scattering library.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "uhs/commands.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::optional<int> d;
    std::optional<int> n;
    std::optional<double> epsilon;
    std::optional<std::string> preset;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

uhs::Json load_document(const Overrides& o) {
    uhs::Json doc = uhs::Json::object();
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw uhs::ConfigurationError("cannot open config file '" + o.config_path + "'");
        try {
            doc = uhs::Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw uhs::ConfigurationError(std::string("malformed config file: ") + e.what());
        }
        if (!doc.is_object()) throw uhs::ConfigurationError("config file must hold a JSON object");
    }
    if (o.d) doc["d"] = *o.d;
    if (o.n) doc["n"] = *o.n;
    if (o.epsilon) doc["epsilon"] = *o.epsilon;
    if (o.preset) doc["preset"] = *o.preset;
    if (o.out) doc["output"]["path"] = *o.out;
    if (o.format) doc["output"]["format"] = *o.format;
    return doc;
}

int run(const std::string& command, const Overrides& o) {
    uhs::RunConfig cfg;
    try {
        cfg = uhs::parse_config(load_document(o));
    } catch (const uhs::Error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
    const std::string base = cfg.output.path.empty() ? command : cfg.output.path;
    try {
        const auto result = uhs::run_command(command, cfg);
        const auto report = result.report(cfg);
        if (cfg.output.format == "csv") result.table.write(base + ".csv");
        uhs::write_text(base + ".json", report.dump(2) + "\n");
        std::cout << report.dump(2) << "\n";
        return result.pass ? 0 : 1;
    } catch (const uhs::ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const uhs::DimensionError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const uhs::Error& e) {
        const uhs::Json report{{"command", command}, {"config_echo", uhs::config_echo(cfg)},
                               {"results", {{"error", e.what()}}}, {"pass", false}};
        std::cout << report.dump(2) << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scattering data and solutions of the ultrahyperbolic equation"};
    app.require_subcommand(1);
    Overrides overrides;
    const std::map<std::string, std::string> help{
        {"validate", "check amplitude, scattering-data and compatibility conditions"},
        {"roundtrip", "A -> f -> A and f -> A -> f error tables"},
        {"residual", "finite-difference PDE residuals and convergence order"},
        {"asymptotics", "scaled solution along rays against the scattering data"},
        {"stationary", "inner sphere integral against its critical-point asymptotics"},
        {"lemmas", "decay and regularity envelopes of inverse Fourier transforms"},
        {"eval", "evaluate u, f, or dump quadrature rules"}};
    for (const auto& name : uhs::command_names()) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("-c,--config", overrides.config_path, "JSON configuration file");
        sub->add_option("--d", overrides.d, "dimension of x");
        sub->add_option("--n", overrides.n, "dimension of y");
        sub->add_option("--epsilon", overrides.epsilon, "decay exponent in (0, 1/2]");
        sub->add_option("--preset", overrides.preset, "gamma_exp | angular_bump | custom_file");
        sub->add_option("--out", overrides.out, "output path without extension");
        sub->add_option("--format", overrides.format, "csv | json");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    for (const auto* sub : app.get_subcommands()) return run(sub->get_name(), overrides);
    return 2;
}
