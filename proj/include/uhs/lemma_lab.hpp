#pragma once

// Sampled checks of the decay and regularity estimates for inverse Fourier
// transforms V = fcheck of profiles f: Holder continuity, the small-r blowup
// of d^{k-1} V, and polynomial tail decay of d^k V.

#include <string>
#include <utility>
#include <vector>

#include "uhs/transforms.hpp"

namespace uhs {

/// Fit of sampled |d^k V| against a claimed power law.
///
/// fitted_slope is a growth rate, oriented so that pass means
/// fitted_slope <= claimed_slope + 0.05 for every check: against log(1/delta)
/// for Holder quotients, against log(1/r) for small-r blowup, and against
/// log r for r^l |d^k V| in the tail. log_log_slope is the plain slope of
/// log(values) against log(grid).
struct EnvelopeFit {
    std::string check;
    RealVector grid;
    RealVector values;
    double fitted_constant = 0.0;
    double fitted_slope = 0.0;
    double claimed_slope = 0.0;
    double log_log_slope = 0.0;
    bool pass = false;
    std::vector<std::string> notes;
};

inline constexpr double kLemmaSlopeSlack = 0.05;

/// d^j V(r) = (2 pi)^{-1} \int (ip)^j e^{irp} f(p) dp for r != 0, via j+1
/// integrations by parts. Requires analytic derivatives up to order j+1.
Complex transform_derivative(const ProfileFunction& f, int j, double r, const TransformOptions& opts = {});

/// V(r) by direct quadrature of the absolutely convergent integral (r = 0 allowed).
Complex transform_direct(const ProfileFunction& f, double r, const TransformOptions& opts = {});

/// Sampled test of |f(p)| <= C (1+|p|)^{-exponent}; false when the weighted
/// sample keeps growing over the last decade of p.
bool sampled_decay(const ProfileFunction& f, int k, double exponent);

/// Holder quotients |V(r) - V(r')| / |r - r'|^eps over pairs with |r - r'| <= 1.
/// Rejects f failing |f(p)| <= C (1+|p|)^{-1-eps}.
EnvelopeFit check_holder(const ProfileFunction& f, const std::vector<std::pair<double, double>>& pairs,
                         const TransformOptions& opts = {});

/// Default pairs: offsets 10^{-4}..10^{-1/2} around r0 in {0, 0.5, -0.3},
/// including pairs straddling 0.
std::vector<std::pair<double, double>> default_holder_pairs();

/// Growth of |d^{k-1} V| as r -> 0, fitted on the lowest decade of the grid;
/// claimed k - eps. Rejects f failing the derivative decay hypothesis up to k.
EnvelopeFit check_small_r_blowup(const ProfileFunction& f, int k, const RealVector& r_grid,
                                 const TransformOptions& opts = {});

/// r^l |d^k V(r)| on the grid (within [1, 100]); growth fitted on the last decade
/// above the quadrature noise floor, claimed 0.
EnvelopeFit check_tail_decay(const ProfileFunction& f, int k, int ell, const RealVector& r_grid,
                             const TransformOptions& opts = {});

/// |d^k V| / (r^{-k-1+eps} (1+r)^{-l}) on [1e-4, 100]: bounded at both ends.
EnvelopeFit check_combined_envelope(const ProfileFunction& f, int k, int ell, const TransformOptions& opts = {});

namespace profiles {

/// (1+p^2)^{-1}, V(r) = e^{-|r|}/2.
ProfileFunction lorentzian(double epsilon = 0.9);
/// e^{-p^2}, V(r) = e^{-r^2/4} / (2 sqrt(pi)).
ProfileFunction gaussian(double epsilon = 0.5);
/// (1+p^2)^{-a} with analytic derivatives; epsilon is the decay class.
ProfileFunction power_decay(double a, double epsilon);
/// sgn(p) (1+p^2)^{-1}: jump at 0, transform decays like 1/r.
ProfileFunction signed_lorentzian(double epsilon = 0.5);
/// f == c.
ProfileFunction constant(double c = 1.0, double epsilon = 0.5);

/// Builds a profile from a name: lorentzian, gaussian, power_decay
/// (needs `a`), signed_lorentzian, constant.
ProfileFunction by_name(const std::string& name, double a, double epsilon);

}  // namespace profiles

/// Exact V for (1+p^2)^{-1/4}: (1/pi) (r/2)^{-1/4} sqrt(pi) K_{1/4}(|r|) / Gamma(1/4).
double quarter_power_transform(double r);

}  // namespace uhs
