#pragma once

// The inner sphere-product integral
//   \int\int e^{i r s (<theta,zeta> - <omega,sigma>)} e^{-i r p <omega,sigma>} A(zeta, sigma, r)
// by direct quadrature, against its four-critical-point asymptotics.

#include <array>
#include <vector>

#include "uhs/scattering.hpp"

namespace uhs {

struct CriticalPoint {
    RealVector zeta;
    RealVector sigma;
    /// Value of <theta,zeta> - <omega,sigma> at the point: 0, 0, -2, +2.
    double phase_value = 0.0;
};

struct CriticalPointSet {
    std::array<CriticalPoint, 4> points;
    /// e^{i pi (n-d)/4} at (theta, omega) and e^{i pi (d-n)/4} at (-theta, -omega).
    Complex phase_forward{};
    Complex phase_backward{};
    int signature_forward = 0;
    int signature_backward = 0;
};

CriticalPointSet critical_points(std::span<const double> theta, std::span<const double> omega);

/// Smallest sphere resolution accepted by inner_integral for a given r s.
int min_inner_resolution(double r, double s);

Complex inner_integral(const Amplitude& A, std::span<const double> theta, std::span<const double> omega, double p,
                       double r, double s, int resolution);

/// (2 pi/(r s))^{N/2-1} [e^{i pi(n-d)/4} e^{-irp} A(theta,omega,r) + e^{i pi(d-n)/4} e^{irp} A(-theta,-omega,r)].
Complex leading_terms(const Amplitude& A, std::span<const double> theta, std::span<const double> omega, double p,
                      double r, double s);

struct PhaseComparison {
    RealVector s_values;
    std::vector<Complex> direct;
    std::vector<Complex> leading;
    std::vector<Complex> remainder;
    std::array<Complex, 2> cross_fitted{};
    double residual_slope = 0.0;
    /// d = n = 1: the inner integral is a finite sum and there is nothing to fit.
    bool vacuous = false;
};

/// Direct integral along the s-ladder, the fitted cross-term constants C1,
/// C2 of e^{-2irs}, e^{2irs}, and the log-log slope of what is left.
/// resolution = 0 uses twice min_inner_resolution at each s.
PhaseComparison remainder_scan(const Amplitude& A, std::span<const double> theta, std::span<const double> omega,
                               double p, double r, std::span<const double> s_values, int resolution = 0);

/// Claimed remainder slope -(N/2 - 1/2).
double claimed_remainder_slope(int d, int n);

}  // namespace uhs
