#include "uhs/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace uhs {

Complex ProfileFunction::derivative(int k, double p) const {
    if (k < 0) throw ConfigurationError("derivative order must be non-negative");
    if (k == 0) return eval(p);
    if (deriv) return deriv(k, p);
    const double h = 1e-5 * (1.0 + std::abs(p));
    if (k == 1) return (eval(p + h) - eval(p - h)) / (2.0 * h);
    if (k == 2) return (eval(p + h) - 2.0 * eval(p) + eval(p - h)) / (h * h);
    return (derivative(k - 1, p + h) - derivative(k - 1, p - h)) / (2.0 * h);
}

QuadratureResult inverse_fourier_profile_detailed(const ProfileFunction& f, double r,
                                                  const TransformOptions& opts) {
    if (r == 0.0) throw DomainError("inverse Fourier transform of a profile is not evaluated at r = 0");
    const auto table = [&f](int k, double p) { return f.derivative(k, p); };
    const auto result = fourier_real_line(table, r, 1, opts.quadrature);
    return {result.value / (2.0 * pi), result.error / (2.0 * pi)};
}

Complex inverse_fourier_profile(const ProfileFunction& f, double r, const TransformOptions& opts) {
    return inverse_fourier_profile_detailed(f, r, opts).value;
}

Complex forward_fourier_radial(const RadialProfile& V, const RadialRule& rule, double p) {
    if (rule.size() == 0) throw ConfigurationError("forward transform needs a non-empty radial rule");
    if (!V.eval) throw ConfigurationError("radial profile has no evaluator");
    std::vector<Complex> terms(rule.size());
    for (std::size_t j = 0; j < rule.size(); ++j) {
        const double r = rule.nodes[j];
        terms[j] = rule.weights[j] * (std::exp(-I * (r * p)) * V.eval(r) + std::exp(I * (r * p)) * V.eval(-r));
    }
    return pairwise_sum(std::span<const Complex>(terms));
}

namespace {

Complex i_power(int m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return I;
        case 2: return {-1.0, 0.0};
        default: return -I;
    }
}

}  // namespace

Complex hilbert_multiplier(int m, double r) {
    if (m % 2 == 0) return i_power(m);
    return r > 0.0 ? i_power(m) : -i_power(m);
}

HilbertEngine::HilbertEngine(ProfileFunction f, RadialRule rule, TransformOptions opts) {
    auto state = std::make_shared<State>();
    state->f = std::move(f);
    state->rule = std::move(rule);
    state->opts = opts;
    const std::size_t n = state->rule.size();
    state->positive.resize(n);
    state->negative.resize(n);
    state->spectral_positive.resize(n);
    state->spectral_negative.resize(n);
    const State& s = *state;
    auto spectral = [&s](double r) {
        return s.f.spectral ? s.f.spectral(r) : inverse_fourier_profile(s.f, r, s.opts);
    };
    parallel_for(n, [&](std::size_t j) {
        const double r = s.rule.nodes[j];
        state->spectral_positive[j] = spectral(r);
        state->spectral_negative[j] = spectral(-r);
        state->positive[j] = s.rule.weights[j] * state->spectral_positive[j];
        state->negative[j] = s.rule.weights[j] * state->spectral_negative[j];
    });
    state_ = std::move(state);
}

RadialRule HilbertEngine::default_rule(double epsilon, double p_max, double tol) {
    return radial_rule(2, std::min(epsilon, 0.5), tol, 0.5 * std::abs(p_max));
}

Complex HilbertEngine::sum_odd(int m, int k, double p) const {
    const State& s = *state_;
    std::vector<Complex> terms(s.rule.size());
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const double r = s.rule.nodes[j];
        const Complex plus = std::pow(-I * r, k) * std::exp(-I * (r * p)) * s.positive[j];
        const Complex minus = std::pow(I * r, k) * std::exp(I * (r * p)) * s.negative[j];
        terms[j] = plus - minus;
    }
    return i_power(m) * pairwise_sum(std::span<const Complex>(terms));
}

Complex HilbertEngine::evaluate(int m, double p) const {
    if (m % 2 == 0) return i_power(m) * state_->f.eval(p);
    return sum_odd(m, 0, p);
}

Complex HilbertEngine::spectral_at(double r) const {
    const State& s = *state_;
    const double a = std::abs(r);
    const auto it = std::lower_bound(s.rule.nodes.begin(), s.rule.nodes.end(), a);
    if (it != s.rule.nodes.end() && *it == a) {
        const auto j = static_cast<std::size_t>(it - s.rule.nodes.begin());
        return r > 0.0 ? s.spectral_positive[j] : s.spectral_negative[j];
    }
    return s.f.spectral ? s.f.spectral(r) : inverse_fourier_profile(s.f, r, s.opts);
}

ProfileFunction HilbertEngine::image(int m) const {
    ProfileFunction out;
    const HilbertEngine self = *this;
    out.epsilon = state_->f.epsilon;
    out.max_order = 8;
    out.description = "H^" + std::to_string(m) + "[" + state_->f.description + "]";
    if (m % 2 == 0) {
        out.eval = [self, m](double p) { return i_power(m) * self.profile().eval(p); };
        out.deriv = [self, m](int k, double p) { return i_power(m) * self.profile().derivative(k, p); };
    } else {
        out.eval = [self, m](double p) { return self.sum_odd(m, 0, p); };
        out.deriv = [self, m](int k, double p) { return self.sum_odd(m, k, p); };
    }
    out.spectral = [self, m](double r) { return hilbert_multiplier(m, r) * self.spectral_at(r); };
    return out;
}

Complex hilbert_power(const ProfileFunction& f, int m, double p, const TransformOptions& opts) {
    if (m % 2 == 0) return i_power(m) * f.eval(p);
    const HilbertEngine engine(f, HilbertEngine::default_rule(f.epsilon, std::abs(p)), opts);
    return engine.evaluate(m, p);
}

QuadratureResult hilbert_pv_oracle(const ProfileFunction& f, double p, double cutoff) {
    if (!(cutoff >= 1e3)) throw ConfigurationError("principal-value oracle needs cutoff >= 1e3");
    if (std::abs(p) >= cutoff) throw ConfigurationError("evaluation point must lie inside the cutoff");
    constexpr double excision = 1e-6;
    const double symmetric_end = cutoff - std::abs(p);

    auto symmetric = [&f, p](double u) { return (f.eval(p - u) - f.eval(p + u)) / u; };
    Complex total{};
    double error = 0.0;
    for (double a = excision; a < symmetric_end;) {
        const double b = std::min(2.0 * a, symmetric_end);
        const auto piece = integrate_panel(symmetric, a, b);
        total += piece.value;
        error += piece.error;
        a = b;
    }
    // Range reached on one side only once the other leaves [-cutoff, cutoff].
    const double one_sided_end = cutoff + std::abs(p);
    auto one_sided = [&f, p](double u) { return p > 0.0 ? f.eval(p - u) / u : -f.eval(p + u) / u; };
    if (p != 0.0) {
        for (double a = symmetric_end; a < one_sided_end;) {
            const double b = std::min(a + std::max(1.0, 0.25 * std::abs(p)), one_sided_end);
            const auto piece = integrate_panel(one_sided, a, b);
            total += piece.value;
            error += piece.error;
            a = b;
        }
    }
    return {total / pi, error / pi};
}

}  // namespace uhs
