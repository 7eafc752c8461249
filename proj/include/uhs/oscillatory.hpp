#pragma once

// Fourier-type integrals over the half-line and the real line for slowly
// decaying (possibly non-integrable) integrands.
//
// Core: Gauss-Kronrod panels no wider than a quarter period. Tail: integrals
// over successive half periods form an alternating sequence of partial sums,
// which is extrapolated with Wynn's epsilon algorithm.

#include <functional>
#include <span>

#include "uhs/common.hpp"

namespace uhs {

struct OscillatoryOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    /// Extent of the directly integrated core [0, core_extent] before the
    /// extrapolated tail takes over (rounded up to whole half periods).
    double core_extent = 20.0;
    int min_cycles = 8;
    int max_cycles = 600;
    /// Bisection depth of each Gauss-Kronrod panel.
    int panel_depth = 4;
};

struct QuadratureResult {
    Complex value{};
    double error = 0.0;
};

using RealToComplex = std::function<Complex(double)>;

/// Wynn epsilon extrapolation of a sequence of partial sums.
Complex wynn_epsilon(std::span<const Complex> partial_sums);

/// Adaptive Gauss-Kronrod integral of h over [a, b].
QuadratureResult integrate_panel(const RealToComplex& h, double a, double b, double rel_tol = 1e-12,
                                 int max_depth = 12);

/// Integral of h over [0, inf) for integrable h without oscillation.
QuadratureResult integrate_half_line(const RealToComplex& h, const OscillatoryOptions& opts = {});

/// Integral of e^{i r p} h(p) over [0, inf), r != 0. h must decay at
/// infinity; absolute integrability is not required. Throws ToleranceError
/// when the tail extrapolation does not settle.
QuadratureResult fourier_half_line(const RealToComplex& h, double r, const OscillatoryOptions& opts = {});

/// Derivatives g^{(j)}(p) of a function on the real line. For piecewise-smooth
/// g the one-sided limits at 0 are read off at p = +-denorm_min.
using DerivativeTable = std::function<Complex(int order, double p)>;

/// Integral of e^{i r p} g(p) over the real line after `parts` integrations
/// by parts on each half-line. Boundary terms at infinity are dropped (g and
/// its first parts-1 derivatives must vanish there, in the Abel sense); jump
/// terms at p = 0 are kept, so g may be discontinuous at the origin.
QuadratureResult fourier_real_line(const DerivativeTable& g, double r, int parts,
                                   const OscillatoryOptions& opts = {});

}  // namespace uhs
