#pragma once

// Quadrature rules for the unit spheres S^{d-1} (d = 1, 2, 3) and for the
// half-line radial integral with an algebraic singularity at r = 0.

#include <functional>
#include <span>

#include "uhs/common.hpp"

namespace uhs {

/// Gauss-Legendre nodes and weights on [-1, 1], exactly antisymmetric nodes.
struct GaussLegendre {
    RealVector nodes;
    RealVector weights;
};
GaussLegendre gauss_legendre(int count);

/// Node-weight set for the surface measure of S^{d-1}. Nodes are stored
/// row-major (node i occupies coordinates [i*dim, (i+1)*dim)).
struct SphereRule {
    int dim = 0;
    RealVector coords;
    RealVector weights;
    /// antipode[i] is the index of the node -node(i).
    std::vector<std::size_t> antipode;

    std::size_t size() const { return weights.size(); }
    std::span<const double> node(std::size_t i) const {
        return std::span<const double>(coords).subspan(i * static_cast<std::size_t>(dim),
                                                        static_cast<std::size_t>(dim));
    }
};

/// Surface measure of S^{d-1}: 2, 2*pi, 4*pi.
double sphere_measure(int d);

/// d=1: the two points of S^0. d=2: `resolution` equispaced angles (must be
/// even). d=3: Gauss-Legendre in the polar cosine (resolution/2 points, at
/// least 2) times a `resolution`-point trapezoid in azimuth.
SphereRule sphere_rule(int d, int resolution);

/// Half-line rule for integrands r^a g(r) with a >= -1 + epsilon.
struct RadialRule {
    RealVector nodes;
    RealVector weights;
    double r_max = 0.0;
    double singularity_exponent = 0.0;
    double s_scale = 0.0;
    int kappa = 1;

    std::size_t size() const { return nodes.size(); }
    double max_spacing() const;
};

/// Maximum r-spacing allowed for oscillation frequencies up to 2*s_scale.
double radial_spacing_cap(double s_scale);

/// Truncation point for amplitudes with an e^{-r} tail at tolerance `tol`.
double radial_cutoff(double tol);

/// Builds the rule from the substitution r = t^kappa, kappa = ceil(4/epsilon),
/// Gauss-Legendre panels in t with r-spacing capped by radial_spacing_cap.
RadialRule radial_rule(int N, double epsilon, double tol, double s_scale);

/// Streams the same node set panel by panel without storing it; used for
/// one-off integrals at very high oscillation frequency.
void for_each_radial_node(double epsilon, double tol, double s_scale,
                          const std::function<void(double r, double w)>& visit);

/// Sum over the rule of weights * g(node); pairwise in node order.
Complex integrate(const RadialRule& rule, const std::function<Complex(double)>& g);

}  // namespace uhs
