#pragma once

// Run configuration shared by the command-line driver and the Python module:
// a JSON document naming the dimensions, the amplitude preset and the
// parameters of each command.

#include <string>
#include <utility>
#include <vector>

#include "uhs/reports.hpp"
#include "uhs/scattering.hpp"

namespace uhs {

struct QuadratureConfig {
    double radial_tol = 1e-12;
    /// 0 = automatic.
    int sphere_resolution = 0;
    double s_scale = 0.0;
};

struct LemmaConfig {
    std::string profile = "power_decay";
    double a = 0.25;
    double epsilon = 0.5;
    int k_max = 2;
    int ell_max = 6;
};

struct OutputConfig {
    std::string path;
    std::string format = "csv";
};

struct RunConfig {
    int d = 1;
    int n = 1;
    double epsilon = 0.5;
    std::string preset = "gamma_exp";
    Json preset_params = Json::object();
    QuadratureConfig quadrature;
    RealVector s_ladder{8, 16, 32, 64, 128, 256, 512};
    RealVector p_values{0.0, 1.0};
    RealVector r_values{0.1, 1.0, 10.0};
    RealVector compat_r{0.25, 1.0, 4.0};
    RealVector h_ladder{0.04, 0.02, 0.01};
    /// Residual and eval points as (x, y); empty picks 3 fixed interior points.
    std::vector<std::pair<RealVector, RealVector>> points;
    RealVector theta;
    RealVector omega;
    double r = 1.0;
    RealVector stationary_s{16, 32, 64, 128, 256};
    LemmaConfig lemma;
    std::string eval_target = "u";
    OutputConfig output;
    /// The document as given, for echoing into reports.
    Json source = Json::object();
};

/// Parses and validates a configuration document. Unknown keys, wrong types
/// and out-of-range values raise ConfigurationError (DimensionError for d, n).
RunConfig parse_config(const Json& doc);

/// Re-validates after command-line overrides.
void validate_config(const RunConfig& cfg);

/// The configuration as JSON, including defaults.
Json config_echo(const RunConfig& cfg);

/// gamma_exp (preset_params: terms [{coefficient, zeta, sigma}], tail),
/// angular_bump (theta0, omega0, width, power) or custom_file (file: CSV
/// with columns r, re, im).
Amplitude build_amplitude(const RunConfig& cfg);

/// Closed-form data when the amplitude allows it, numerical otherwise.
ScatteringData reference_scattering(const Amplitude& A);

/// theta and omega of the configuration, defaulting to the first basis vector.
RealVector config_theta(const RunConfig& cfg);
RealVector config_omega(const RunConfig& cfg);

}  // namespace uhs
