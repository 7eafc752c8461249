#pragma once

// One-dimensional Fourier transforms in the convention
//   f(p)      = \int e^{-i r p} V(r) dr,
//   fcheck(r) = (2 pi)^{-1} \int e^{i r p} f(p) dp,
// and integer powers of the Hilbert transform realized as the multiplier
// (i sgn r)^m on the inverse-transform side.

#include <functional>
#include <memory>
#include <string>

#include "uhs/common.hpp"
#include "uhs/geometry.hpp"
#include "uhs/oscillatory.hpp"

namespace uhs {

/// A profile p -> f(p) with derivative access and a decay exponent epsilon.
struct ProfileFunction {
    std::function<Complex(double)> eval;
    /// Analytic derivative (k, p) -> d^k f / dp^k; may be empty.
    std::function<Complex(int, double)> deriv;
    double epsilon = 0.5;
    /// Largest k with a trusted derivative.
    int max_order = 3;
    /// Known inverse Fourier transform, when the profile was built on the
    /// spectral side (e.g. a Hilbert image). Empty for ordinary profiles.
    std::function<Complex(double)> spectral;
    std::string description;

    Complex operator()(double p) const { return eval(p); }

    /// k-th derivative: analytic when available, else central differences
    /// with step 1e-5 * (1 + |p|). k = 0 returns eval(p).
    Complex derivative(int k, double p) const;
};

/// A function r -> V(r) on the real line minus the origin.
struct RadialProfile {
    std::function<Complex(double)> eval;
    double epsilon = 0.5;
    std::string description;
};

struct TransformOptions {
    OscillatoryOptions quadrature{};
};

/// fcheck(r) for r != 0 via one integration by parts (f vanishes at infinity,
/// f' decays like |p|^{-1-eps}). Throws DomainError at r = 0.
Complex inverse_fourier_profile(const ProfileFunction& f, double r, const TransformOptions& opts = {});

/// Same as inverse_fourier_profile but also returns the quadrature error estimate.
QuadratureResult inverse_fourier_profile_detailed(const ProfileFunction& f, double r,
                                                  const TransformOptions& opts = {});

/// \int_R e^{-i r p} V(r) dr: the rule covers r > 0, the negative half is
/// mapped onto the same rule by reflection.
Complex forward_fourier_radial(const RadialProfile& V, const RadialRule& rule, double p);

/// (i sgn r)^m as a complex number; m may be negative.
Complex hilbert_multiplier(int m, double r);

/// Tabulates fcheck on both signs of a radial rule once and evaluates powers
/// of the Hilbert transform from the table. Immutable after construction.
class HilbertEngine {
public:
    /// The rule must resolve e^{-i r p} for every p the engine will be asked
    /// about (s_scale >= |p| / 2).
    HilbertEngine(ProfileFunction f, RadialRule rule, TransformOptions opts = {});

    /// Default rule for evaluation points |p| <= p_max.
    static RadialRule default_rule(double epsilon, double p_max, double tol = 1e-12);

    /// (H^m f)(p). Even m short-circuits to (-1)^{m/2} f(p).
    Complex evaluate(int m, double p) const;

    /// H^m f as a profile with analytic derivatives and a spectral side, so
    /// further Hilbert powers compose on the inverse-transform side.
    ProfileFunction image(int m) const;

    /// fcheck at a rule node (exact table lookup) or computed on demand.
    Complex spectral_at(double r) const;

    const ProfileFunction& profile() const { return state_->f; }
    const RadialRule& rule() const { return state_->rule; }

private:
    struct State {
        ProfileFunction f;
        RadialRule rule;
        TransformOptions opts;
        std::vector<Complex> positive;  // fcheck(+r_j) * w_j
        std::vector<Complex> negative;  // fcheck(-r_j) * w_j
        std::vector<Complex> spectral_positive;
        std::vector<Complex> spectral_negative;
    };
    Complex sum_odd(int m, int k, double p) const;
    std::shared_ptr<const State> state_;
};

/// (H^m f)(p) with a rule sized for this single point.
Complex hilbert_power(const ProfileFunction& f, int m, double p, const TransformOptions& opts = {});

/// (1/pi) v.p. \int_{|p'| <= cutoff} f(p') / (p - p') dp', symmetric
/// excision of radius 1e-6 around p' = p.
QuadratureResult hilbert_pv_oracle(const ProfileFunction& f, double p, double cutoff);

}  // namespace uhs
