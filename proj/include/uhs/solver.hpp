#pragma once

// Solutions u(x, y) of (Delta_y - Delta_x) u = 0 as superpositions of plane
// waves e^{i r (<x,zeta> - <y,sigma>)} weighted by an amplitude, plus the
// finite-difference residual and large-s slices along rays.

#include <optional>
#include <vector>

#include "uhs/scattering.hpp"

namespace uhs {

struct SolverOptions {
    double radial_tol = 1e-12;
    /// Sphere resolution; 0 picks one resolving e^{i r <x,zeta>} up to the radius.
    int sphere_resolution = 0;
};

struct SolutionField {
    Amplitude A;
    SphereRule sphere_d;
    SphereRule sphere_n;
    RadialRule radial;
    /// Largest |x| and |y| the rules resolve.
    double radius = 0.0;
    /// w_zeta w_sigma P(zeta, sigma), row-major in (zeta, sigma); filled for separable A.
    std::vector<Complex> angular_table;

    int d() const { return A.d; }
    int n() const { return A.n; }
    int N() const { return A.N(); }
};

/// Builds rules for evaluations with max(|x|, |y|) <= radius.
SolutionField make_solution_field(const Amplitude& A, double radius, const SolverOptions& opts = {});

/// Sphere resolution make_solution_field picks for a radius.
int auto_sphere_resolution(double radius, double radial_tol);

/// (2 pi)^{-N} sum over radial nodes of sum over sphere nodes of
/// w e^{i r (<x,zeta> - <y,sigma>)} A(zeta, sigma, r).
Complex evaluate(const SolutionField& u, std::span<const double> x, std::span<const double> y);

/// Central-difference (Delta_y - Delta_x) u at (x, y) with step h.
Complex pde_residual(const SolutionField& u, std::span<const double> x, std::span<const double> y, double h);

struct AsymptoticSlice {
    RealVector theta;
    RealVector omega;
    double p = 0.0;
    RealVector s_values;
    /// s^{N/2-1} u(s theta, (s+p) omega).
    std::vector<Complex> scaled_values;
};

AsymptoticSlice asymptotic_slice(const SolutionField& u, std::span<const double> theta,
                                 std::span<const double> omega, double p, std::span<const double> s_values);

struct ExtractionResult {
    Complex f_est{};
    /// Least-squares slope of log|scaled(s) - f_star| against log s.
    double rate = 0.0;
    /// All errors below 1e-13: rate is -infinity.
    bool degenerate = false;
    RealVector errors;
    AsymptoticSlice slice;
};

/// Without f_ref the largest-s value serves as f_star and is left out of the fit.
ExtractionResult extract_scattering(const SolutionField& u, std::span<const double> theta,
                                    std::span<const double> omega, double p, std::span<const double> s_values,
                                    std::optional<Complex> f_ref = std::nullopt);

struct ResidualPoint {
    double h = 0.0;
    Complex residual{};
};

struct ResidualStudy {
    RealVector x;
    RealVector y;
    Complex u{};
    std::vector<ResidualPoint> ladder;
    /// Mean log2 ratio of successive residuals above the rounding floor.
    double order = 0.0;
    /// Number of ladder steps used for the order.
    int steps_used = 0;
};

/// Residuals along an h-ladder (decreasing h) and the fitted convergence order.
ResidualStudy residual_study(const SolutionField& u, std::span<const double> x, std::span<const double> y,
                             std::span<const double> h_ladder);

}  // namespace uhs
