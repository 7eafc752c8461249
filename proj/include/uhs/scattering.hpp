#pragma once

// Amplitudes A(zeta, sigma, r) on S^{d-1} x S^{n-1} x R_+, scattering data
// f(theta, omega, p), the transform pair between them, and sampled checks
// of the regularity and compatibility conditions both sides must satisfy.

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uhs/common.hpp"
#include "uhs/geometry.hpp"
#include "uhs/transforms.hpp"

namespace uhs {

using AngularFunction = std::function<Complex(std::span<const double>, std::span<const double>)>;
using AmplitudeFunction = std::function<Complex(std::span<const double>, std::span<const double>, double)>;

struct Amplitude {
    int d = 1;
    int n = 1;
    double epsilon = 0.5;
    /// Certified polynomial tail exponent l_0 (the presets decay like e^{-r}).
    int tail_order = 8;
    /// Largest |alpha| with trusted angular derivatives.
    int angular_max_order = 2;
    AmplitudeFunction eval;
    /// Optional factorization A = angular(zeta, sigma) * radial(r).
    AngularFunction angular;
    std::function<Complex(double)> radial;
    /// True when radial(r) == r^{N/2-2+eps} e^{-r}, which admits closed-form scattering data.
    bool gamma_radial = false;
    std::string description;

    int N() const { return d + n; }
    /// N/2 - 2 + epsilon, the small-r exponent of the amplitude.
    double small_r_exponent() const { return 0.5 * N() - 2.0 + epsilon; }
    bool separable() const { return static_cast<bool>(angular) && static_cast<bool>(radial); }
    Complex operator()(std::span<const double> zeta, std::span<const double> sigma, double r) const {
        return eval(zeta, sigma, r);
    }
};

struct ScatteringData {
    int d = 1;
    int n = 1;
    double epsilon = 0.5;
    std::function<Complex(std::span<const double>, std::span<const double>, double)> eval;
    std::function<ProfileFunction(std::span<const double>, std::span<const double>)> profile_of;
    std::string description;

    int N() const { return d + n; }
    Complex operator()(std::span<const double> theta, std::span<const double> omega, double p) const {
        return eval(theta, omega, p);
    }
};

/// c = (2 pi)^{-N/2-1}.
double scattering_constant(int N);
/// e^{i pi (n-d)/4}, the phase on the r > 0 branch.
Complex positive_branch_phase(int d, int n);

// ---- presets ---------------------------------------------------------------

struct AngularMonomial {
    double coefficient = 1.0;
    std::vector<int> zeta_powers;
    std::vector<int> sigma_powers;
};

/// Polynomial in the Cartesian coordinates of (zeta, sigma); empty means P == 1.
struct AngularPolynomial {
    std::vector<AngularMonomial> terms;
    Complex operator()(std::span<const double> zeta, std::span<const double> sigma) const;
};

/// A = P(zeta, sigma) r^{N/2-2+eps} e^{-r}.
Amplitude gamma_exp(int d, int n, double epsilon, AngularPolynomial P = {});

/// Smooth cosine-power cap on the sphere: cos^power(pi * angle / (2 * width))
/// inside the cap, 0 outside.
double angular_cap(std::span<const double> direction, std::span<const double> center, double width,
                   int power = 6);

/// A = cap(zeta; theta0) cap(sigma; omega0) r^{N/2-2+eps} e^{-r}.
Amplitude angular_bump(int d, int n, double epsilon, RealVector theta0, RealVector omega0,
                       double width = 0.5, int power = 6);

/// A = P(zeta, sigma) r^{N/2-2+eps} without tail decay (fails tail checks).
Amplitude gamma_without_tail(int d, int n, double epsilon, AngularPolynomial P = {});

/// alpha * A1 + beta * A2 (same d, n, epsilon).
Amplitude linear_combination(Complex alpha, const Amplitude& a1, Complex beta, const Amplitude& a2);

/// Angular-constant amplitude from radial samples (r_i, A_i); the regular
/// part A / r^{N/2-2+eps} is interpolated linearly in r and set to zero
/// beyond the last sample.
Amplitude tabulated_radial(int d, int n, double epsilon, RealVector r, std::vector<Complex> values);

// ---- the transform pair ----------------------------------------------------

/// A continued to r < 0 by A(zeta, sigma, -r) = A(-zeta, -sigma, r).
Complex extend_amplitude(const Amplitude& A, std::span<const double> zeta, std::span<const double> sigma,
                         double r);

/// f(theta, omega, p) from the amplitude using the given radial rule, which
/// must resolve the oscillation e^{-i r p} (rule.s_scale >= |p| / 2).
Complex amplitude_to_scattering(const Amplitude& A, std::span<const double> theta,
                                std::span<const double> omega, double p, const RadialRule& rule);

/// d^k f / dp^k with the same rule (differentiation under the integral).
Complex amplitude_to_scattering_derivative(const Amplitude& A, std::span<const double> theta,
                                           std::span<const double> omega, double p, int k,
                                           const RadialRule& rule);

struct NumericalScatteringOptions {
    double tol = 1e-12;
    /// Largest |p| served from cached rules; beyond it nodes are streamed.
    double cached_p_max = 8192.0;
};

/// Scattering data computed on demand from the amplitude; picks a rule
/// resolving each requested p. Thread safe.
ScatteringData scattering_from_amplitude(const Amplitude& A, NumericalScatteringOptions opts = {});

/// Closed-form scattering data of a separable amplitude with gamma radial
/// part: c Gamma(eps) [e^{i pi (n-d)/4} P(theta, omega) (1+ip)^{-eps}
///                    + e^{i pi (d-n)/4} P(-theta, -omega) (1-ip)^{-eps}].
/// `negative_branch_sign` = -1 flips the r < 0 branch (a compatibility
/// counterexample).
ScatteringData closed_form_scattering(const Amplitude& A, double negative_branch_sign = 1.0);

/// A(zeta, sigma, r) = fcheck(zeta, sigma, r) c^{-1} e^{i pi (d-n)/4} r^{N/2-1}, r > 0.
Complex scattering_to_amplitude(const ScatteringData& f, std::span<const double> zeta,
                                std::span<const double> sigma, double r, const TransformOptions& opts = {});

/// Amplitude view of scattering data (each evaluation is a numerical inverse transform).
Amplitude amplitude_from_scattering(const ScatteringData& f, const TransformOptions& opts = {});

// ---- checks ----------------------------------------------------------------

struct DirectionPair {
    RealVector theta;
    RealVector omega;
};

/// Every (theta_i, omega_j) over the nodes of two sphere rules.
std::vector<DirectionPair> all_node_pairs(const SphereRule& sphere_d, const SphereRule& sphere_n);

struct CompatibilityReport {
    double max_deviation = 0.0;
    double max_magnitude = 0.0;
    double tolerance = 0.0;
    DirectionPair worst_pair;
    double worst_r = 0.0;
    std::size_t pairs_checked = 0;
    bool pass = false;
};

/// max |fcheck(-theta,-omega,r) - fcheck(theta,omega,-r) (-i sgn r)^{d-n}|
/// over r and -r for r in r_grid, over the given pairs.
CompatibilityReport check_compatibility(const ScatteringData& f, std::span<const double> r_grid,
                                        std::span<const DirectionPair> pairs, double tolerance = 1e-6,
                                        const TransformOptions& opts = {});

/// One fitted envelope: sup of |derivative| / claimed bound over the grid,
/// plus the log-log trend of that ratio at each end of the grid.
struct EnvelopeEntry {
    std::string check;
    int k = 0;
    int ell = 0;
    int alpha = 0;
    double constant = 0.0;
    double left_slope = 0.0;
    double right_slope = 0.0;
    bool pass = false;
};

struct RegularityReport {
    std::string subject;
    std::vector<EnvelopeEntry> entries;
    std::vector<std::string> notes;
    bool pass = false;
};

/// Slack on the end-of-grid growth slopes used to call an envelope finite.
inline constexpr double kEnvelopeSlopeSlack = 0.05;

/// Envelopes of d^k f / dp^k against (1+|p|)^{-k-eps} for 1 <= k <= K on a
/// dense grid over +-[1, 1e3], plus decay of |f| at least like |p|^{-eps}
/// between +-[1e3, 5e3] and +-[2e5, 1e6].
RegularityReport check_scattering_conditions(const ScatteringData& f, int K,
                                             std::span<const DirectionPair> pairs);

/// Same test for a single profile (the ProfileFunction honesty check).
RegularityReport check_profile_conditions(const ProfileFunction& f, int K);

struct AmplitudeCheckOptions {
    int k_max = 2;
    int ell_max = 8;
    int sphere_resolution = 8;
    double r_min = 1e-4;
    double tol = 1e-10;
    int points_per_decade = 12;
};

/// Envelopes of d^k_r d^alpha A against r^{N/2-k-2+eps} (1+r)^{-l} over a
/// log grid and all sphere nodes, |alpha| <= min(2, angular_max_order).
RegularityReport check_amplitude_conditions(const Amplitude& A, const AmplitudeCheckOptions& opts = {});

}  // namespace uhs
