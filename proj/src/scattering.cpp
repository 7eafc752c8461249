#include "uhs/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace uhs {

double scattering_constant(int N) { return std::pow(2.0 * pi, -0.5 * N - 1.0); }

Complex positive_branch_phase(int d, int n) { return std::exp(I * (pi * (n - d) / 4.0)); }

namespace {

void require_dims(int d, int n) {
    if (d < 1 || d > 3 || n < 1 || n > 3)
        throw DimensionError("dimensions must satisfy 1 <= d, n <= 3 (got d=" + std::to_string(d) +
                             ", n=" + std::to_string(n) + ")");
}

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw ConfigurationError("epsilon must lie in (0, 1/2]");
}

// Product of (-eps - j) for j < k: the k-th derivative coefficient of x^{-eps}.
double falling_power(double epsilon, int k) {
    double out = 1.0;
    for (int j = 0; j < k; ++j) out *= (-epsilon - j);
    return out;
}

// Neumaier-compensated running sum for long streamed quadratures.
struct CompensatedSum {
    Complex sum{};
    Complex carry{};
    void add(Complex x) {
        const Complex t = sum + x;
        const auto fix = [](double s, double v, double t_) {
            return std::abs(s) >= std::abs(v) ? (s - t_) + v : (v - t_) + s;
        };
        carry += Complex(fix(sum.real(), x.real(), t.real()), fix(sum.imag(), x.imag(), t.imag()));
        sum = t;
    }
    Complex value() const { return sum + carry; }
};

struct ScatteringIntegrand {
    const Amplitude& A;
    RealVector theta, omega, theta_neg, omega_neg;
    Complex phase_pos, phase_neg;
    double radial_power;
    int k;
    double p;

    ScatteringIntegrand(const Amplitude& amp, std::span<const double> th, std::span<const double> om,
                        double p_, int k_)
        : A(amp), theta(th.begin(), th.end()), omega(om.begin(), om.end()),
          theta_neg(negated(th)), omega_neg(negated(om)),
          phase_pos(positive_branch_phase(amp.d, amp.n)), phase_neg(std::conj(phase_pos)),
          radial_power(1.0 - 0.5 * amp.N()), k(k_), p(p_) {}

    Complex operator()(double r, double w) const {
        const double scale = w * std::pow(r, radial_power);
        const Complex e = std::exp(-I * (r * p));
        const Complex pos = phase_pos * std::pow(-I * r, k) * e * A.eval(theta, omega, r);
        const Complex neg = phase_neg * std::pow(I * r, k) * std::conj(e) * A.eval(theta_neg, omega_neg, r);
        return scale * (pos + neg);
    }
};

void require_resolution(const RadialRule& rule, double p) {
    if (2.0 * rule.s_scale < std::abs(p) * (1.0 - 1e-12))
        throw ConfigurationError("radial rule (s_scale=" + std::to_string(rule.s_scale) +
                                 ") does not resolve p=" + std::to_string(p));
}

}  // namespace

Complex AngularPolynomial::operator()(std::span<const double> zeta, std::span<const double> sigma) const {
    if (terms.empty()) return {1.0, 0.0};
    double total = 0.0;
    for (const auto& term : terms) {
        double v = term.coefficient;
        for (std::size_t i = 0; i < term.zeta_powers.size() && i < zeta.size(); ++i)
            v *= std::pow(zeta[i], term.zeta_powers[i]);
        for (std::size_t j = 0; j < term.sigma_powers.size() && j < sigma.size(); ++j)
            v *= std::pow(sigma[j], term.sigma_powers[j]);
        total += v;
    }
    return {total, 0.0};
}

namespace {

Amplitude make_separable(int d, int n, double epsilon, AngularFunction angular,
                         std::function<Complex(double)> radial, std::string description) {
    require_dims(d, n);
    require_epsilon(epsilon);
    Amplitude A;
    A.d = d;
    A.n = n;
    A.epsilon = epsilon;
    A.angular = std::move(angular);
    A.radial = std::move(radial);
    A.eval = [angular = A.angular, radial = A.radial](std::span<const double> z, std::span<const double> s,
                                                       double r) { return angular(z, s) * radial(r); };
    A.description = std::move(description);
    return A;
}

}  // namespace

Amplitude gamma_exp(int d, int n, double epsilon, AngularPolynomial P) {
    const double a = 0.5 * (d + n) - 2.0 + epsilon;
    auto A = make_separable(
        d, n, epsilon, [P = std::move(P)](std::span<const double> z, std::span<const double> s) { return P(z, s); },
        [a](double r) { return Complex(std::pow(r, a) * std::exp(-r), 0.0); }, "gamma_exp");
    A.gamma_radial = true;
    A.tail_order = 8;
    return A;
}

double angular_cap(std::span<const double> direction, std::span<const double> center, double width, int power) {
    const double c = std::clamp(dot(direction, center) / (norm(direction) * norm(center)), -1.0, 1.0);
    const double angle = std::acos(c);
    if (angle >= width) return 0.0;
    return std::pow(std::cos(0.5 * pi * angle / width), power);
}

Amplitude angular_bump(int d, int n, double epsilon, RealVector theta0, RealVector omega0, double width,
                       int power) {
    require_dims(d, n);
    if (static_cast<int>(theta0.size()) != d || static_cast<int>(omega0.size()) != n)
        throw ConfigurationError("bump centers must match the sphere dimensions");
    if (!(width > 0.0)) throw ConfigurationError("bump width must be positive");
    const double a = 0.5 * (d + n) - 2.0 + epsilon;
    auto A = make_separable(
        d, n, epsilon,
        [theta0, omega0, width, power](std::span<const double> z, std::span<const double> s) {
            return Complex(angular_cap(z, theta0, width, power) * angular_cap(s, omega0, width, power), 0.0);
        },
        [a](double r) { return Complex(std::pow(r, a) * std::exp(-r), 0.0); }, "angular_bump");
    A.gamma_radial = true;
    A.tail_order = 8;
    return A;
}

Amplitude gamma_without_tail(int d, int n, double epsilon, AngularPolynomial P) {
    const double a = 0.5 * (d + n) - 2.0 + epsilon;
    auto A = make_separable(
        d, n, epsilon, [P = std::move(P)](std::span<const double> z, std::span<const double> s) { return P(z, s); },
        [a](double r) { return Complex(std::pow(r, a), 0.0); }, "gamma_without_tail");
    A.tail_order = 0;
    return A;
}

Amplitude linear_combination(Complex alpha, const Amplitude& a1, Complex beta, const Amplitude& a2) {
    if (a1.d != a2.d || a1.n != a2.n || a1.epsilon != a2.epsilon)
        throw ConfigurationError("linear combination needs amplitudes with equal d, n, epsilon");
    Amplitude out = a1;
    out.tail_order = std::min(a1.tail_order, a2.tail_order);
    out.angular_max_order = std::min(a1.angular_max_order, a2.angular_max_order);
    out.description = "combination";
    out.eval = [alpha, beta, e1 = a1.eval, e2 = a2.eval](std::span<const double> z, std::span<const double> s,
                                                         double r) { return alpha * e1(z, s, r) + beta * e2(z, s, r); };
    if (a1.gamma_radial && a2.gamma_radial && a1.separable() && a2.separable()) {
        out.angular = [alpha, beta, p1 = a1.angular, p2 = a2.angular](std::span<const double> z,
                                                                      std::span<const double> s) {
            return alpha * p1(z, s) + beta * p2(z, s);
        };
        out.gamma_radial = true;
    } else {
        out.angular = nullptr;
        out.radial = nullptr;
        out.gamma_radial = false;
    }
    return out;
}

Amplitude tabulated_radial(int d, int n, double epsilon, RealVector r, std::vector<Complex> values) {
    if (r.size() != values.size() || r.size() < 2)
        throw ConfigurationError("tabulated amplitude needs at least two (r, value) samples");
    if (!std::is_sorted(r.begin(), r.end()) || r.front() <= 0.0)
        throw ConfigurationError("tabulated amplitude radii must be positive and increasing");
    const double a = 0.5 * (d + n) - 2.0 + epsilon;
    std::vector<Complex> regular(values.size());
    for (std::size_t i = 0; i < r.size(); ++i) regular[i] = values[i] / std::pow(r[i], a);
    auto radial = [a, r = std::move(r), regular = std::move(regular)](double x) -> Complex {
        if (x >= r.back()) return {};
        if (x <= r.front()) return regular.front() * std::pow(x, a);
        const auto it = std::upper_bound(r.begin(), r.end(), x);
        const auto hi = static_cast<std::size_t>(it - r.begin());
        const double t = (x - r[hi - 1]) / (r[hi] - r[hi - 1]);
        return ((1.0 - t) * regular[hi - 1] + t * regular[hi]) * std::pow(x, a);
    };
    auto A = make_separable(
        d, n, epsilon, [](std::span<const double>, std::span<const double>) { return Complex(1.0, 0.0); },
        std::move(radial), "tabulated_radial");
    A.tail_order = 8;
    A.angular_max_order = 8;
    return A;
}

Complex extend_amplitude(const Amplitude& A, std::span<const double> zeta, std::span<const double> sigma,
                         double r) {
    if (r == 0.0) throw DomainError("amplitude is not evaluated at r = 0");
    if (r > 0.0) return A.eval(zeta, sigma, r);
    return A.eval(negated(zeta), negated(sigma), -r);
}

Complex amplitude_to_scattering_derivative(const Amplitude& A, std::span<const double> theta,
                                           std::span<const double> omega, double p, int k,
                                           const RadialRule& rule) {
    if (rule.size() == 0) throw ConfigurationError("amplitude_to_scattering needs a radial rule");
    require_resolution(rule, p);
    const ScatteringIntegrand integrand(A, theta, omega, p, k);
    std::vector<Complex> terms(rule.size());
    for (std::size_t j = 0; j < rule.size(); ++j) terms[j] = integrand(rule.nodes[j], rule.weights[j]);
    return scattering_constant(A.N()) * pairwise_sum(std::span<const Complex>(terms));
}

Complex amplitude_to_scattering(const Amplitude& A, std::span<const double> theta,
                                std::span<const double> omega, double p, const RadialRule& rule) {
    return amplitude_to_scattering_derivative(A, theta, omega, p, 0, rule);
}

namespace {

class NumericalScattering {
public:
    NumericalScattering(Amplitude A, NumericalScatteringOptions opts) : A_(std::move(A)), opts_(opts) {}

    Complex value(std::span<const double> theta, std::span<const double> omega, double p, int k) const {
        const double mag = std::abs(p);
        int band = 0;
        while (std::ldexp(1.0, band) < mag) ++band;
        const double p_band = std::ldexp(1.0, band);
        if (p_band > opts_.cached_p_max) {
            const ScatteringIntegrand integrand(A_, theta, omega, p, k);
            CompensatedSum sum;
            for_each_radial_node(rule_epsilon(), opts_.tol, 0.5 * mag,
                                 [&](double r, double w) { sum.add(integrand(r, w)); });
            return scattering_constant(A_.N()) * sum.value();
        }
        return amplitude_to_scattering_derivative(A_, theta, omega, p, k, *rule_for(band));
    }

    const Amplitude& amplitude() const { return A_; }

    // Node weights times the amplitude on both branches, for one (theta, omega) and one band.
    struct SectionTable {
        std::shared_ptr<const RadialRule> rule;
        std::vector<Complex> pos, neg;
    };

    std::shared_ptr<const SectionTable> table_for(std::span<const double> theta, std::span<const double> omega,
                                                  int band) const {
        const ScatteringIntegrand integrand(A_, theta, omega, 0.0, 0);
        auto table = std::make_shared<SectionTable>();
        table->rule = rule_for(band);
        const auto& rule = *table->rule;
        table->pos.resize(rule.size());
        table->neg.resize(rule.size());
        for (std::size_t j = 0; j < rule.size(); ++j) {
            const double r = rule.nodes[j];
            const double scale = rule.weights[j] * std::pow(r, integrand.radial_power);
            table->pos[j] = scale * integrand.phase_pos * A_.eval(integrand.theta, integrand.omega, r);
            table->neg[j] = scale * integrand.phase_neg * A_.eval(integrand.theta_neg, integrand.omega_neg, r);
        }
        return table;
    }

    double cached_p_max() const { return opts_.cached_p_max; }

    Complex from_table(const SectionTable& t, double p, int k) const {
        require_resolution(*t.rule, p);
        const auto& nodes = t.rule->nodes;
        std::vector<Complex> terms(nodes.size());
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double r = nodes[j];
            const Complex e(std::cos(r * p), -std::sin(r * p));
            Complex pos = e * t.pos[j], neg = std::conj(e) * t.neg[j];
            for (int i = 0; i < k; ++i) {
                pos *= Complex(0.0, -r);
                neg *= Complex(0.0, r);
            }
            terms[j] = pos + neg;
        }
        return scattering_constant(A_.N()) * pairwise_sum(std::span<const Complex>(terms));
    }

private:
    double rule_epsilon() const { return std::min(A_.epsilon, 0.5); }

    std::shared_ptr<const RadialRule> rule_for(int band) const {
        std::lock_guard lock(mutex_);
        auto& slot = bands_[band];
        if (!slot)
            slot = std::make_shared<const RadialRule>(
                radial_rule(std::max(2, A_.N()), rule_epsilon(), opts_.tol, 0.5 * std::ldexp(1.0, band)));
        return slot;
    }

    Amplitude A_;
    NumericalScatteringOptions opts_;
    mutable std::mutex mutex_;
    mutable std::map<int, std::shared_ptr<const RadialRule>> bands_;
};

// Profiles evaluate the same (theta, omega) at many p, so the amplitude is tabulated once per band.
class SectionCache {
public:
    SectionCache(std::shared_ptr<const NumericalScattering> state, RealVector theta, RealVector omega)
        : state_(std::move(state)), theta_(std::move(theta)), omega_(std::move(omega)) {}

    Complex value(double p, int k) const {
        const double mag = std::abs(p);
        int band = 0;
        while (std::ldexp(1.0, band) < mag) ++band;
        if (std::ldexp(1.0, band) > state_->cached_p_max()) return state_->value(theta_, omega_, p, k);
        std::shared_ptr<const NumericalScattering::SectionTable> table;
        {
            std::lock_guard lock(mutex_);
            auto& slot = tables_[band];
            if (!slot) slot = state_->table_for(theta_, omega_, band);
            table = slot;
        }
        return state_->from_table(*table, p, k);
    }

private:
    std::shared_ptr<const NumericalScattering> state_;
    RealVector theta_, omega_;
    mutable std::mutex mutex_;
    mutable std::map<int, std::shared_ptr<const NumericalScattering::SectionTable>> tables_;
};

}  // namespace

ScatteringData scattering_from_amplitude(const Amplitude& A, NumericalScatteringOptions opts) {
    require_dims(A.d, A.n);
    auto state = std::make_shared<const NumericalScattering>(A, opts);
    ScatteringData f;
    f.d = A.d;
    f.n = A.n;
    f.epsilon = A.epsilon;
    f.description = "numerical[" + A.description + "]";
    f.eval = [state](std::span<const double> t, std::span<const double> o, double p) {
        return state->value(t, o, p, 0);
    };
    f.profile_of = [state](std::span<const double> t, std::span<const double> o) {
        RealVector theta(t.begin(), t.end()), omega(o.begin(), o.end());
        ProfileFunction prof;
        prof.epsilon = state->amplitude().epsilon;
        prof.max_order = 8;
        prof.description = "numerical scattering section";
        auto section = std::make_shared<SectionCache>(state, std::move(theta), std::move(omega));
        prof.eval = [section](double p) { return section->value(p, 0); };
        prof.deriv = [section](int k, double p) { return section->value(p, k); };
        return prof;
    };
    return f;
}

ScatteringData closed_form_scattering(const Amplitude& A, double negative_branch_sign) {
    if (!(A.separable() && A.gamma_radial))
        throw ConfigurationError("closed-form scattering data needs a separable gamma_exp-type amplitude");
    const double c = scattering_constant(A.N()) * std::tgamma(A.epsilon);
    const Complex phase_pos = positive_branch_phase(A.d, A.n);
    const Complex phase_neg = std::conj(phase_pos) * negative_branch_sign;
    const double eps = A.epsilon;
    const AngularFunction angular = A.angular;

    auto section = [=](std::span<const double> t, std::span<const double> o) {
        const Complex weight_pos = c * phase_pos * angular(t, o);
        const Complex weight_neg = c * phase_neg * angular(negated(t), negated(o));
        return [=](int k, double p) {
            const double fall = falling_power(eps, k);
            const Complex plus = std::pow(I, k) * fall * std::pow(Complex(1.0, p), -eps - k);
            const Complex minus = std::pow(-I, k) * fall * std::pow(Complex(1.0, -p), -eps - k);
            return weight_pos * plus + weight_neg * minus;
        };
    };

    ScatteringData f;
    f.d = A.d;
    f.n = A.n;
    f.epsilon = eps;
    f.description = "closed_form[" + A.description + "]";
    f.eval = [section](std::span<const double> t, std::span<const double> o, double p) { return section(t, o)(0, p); };
    f.profile_of = [section, eps](std::span<const double> t, std::span<const double> o) {
        auto table = section(t, o);
        ProfileFunction prof;
        prof.epsilon = eps;
        prof.max_order = 16;
        prof.description = "closed-form scattering section";
        prof.eval = [table](double p) { return table(0, p); };
        prof.deriv = table;
        return prof;
    };
    return f;
}

Complex scattering_to_amplitude(const ScatteringData& f, std::span<const double> zeta,
                                std::span<const double> sigma, double r, const TransformOptions& opts) {
    if (!(r > 0.0)) throw DomainError("scattering_to_amplitude needs r > 0");
    const auto profile = f.profile_of(zeta, sigma);
    const Complex fcheck = inverse_fourier_profile(profile, r, opts);
    const int N = f.N();
    return fcheck / scattering_constant(N) * std::conj(positive_branch_phase(f.d, f.n)) * std::pow(r, 0.5 * N - 1.0);
}

Amplitude amplitude_from_scattering(const ScatteringData& f, const TransformOptions& opts) {
    Amplitude A;
    A.d = f.d;
    A.n = f.n;
    A.epsilon = f.epsilon;
    A.description = "from_scattering[" + f.description + "]";
    A.eval = [f, opts](std::span<const double> z, std::span<const double> s, double r) {
        return scattering_to_amplitude(f, z, s, r, opts);
    };
    return A;
}

std::vector<DirectionPair> all_node_pairs(const SphereRule& sphere_d, const SphereRule& sphere_n) {
    std::vector<DirectionPair> pairs;
    pairs.reserve(sphere_d.size() * sphere_n.size());
    for (std::size_t i = 0; i < sphere_d.size(); ++i)
        for (std::size_t j = 0; j < sphere_n.size(); ++j) {
            const auto t = sphere_d.node(i);
            const auto o = sphere_n.node(j);
            pairs.push_back({RealVector(t.begin(), t.end()), RealVector(o.begin(), o.end())});
        }
    return pairs;
}

CompatibilityReport check_compatibility(const ScatteringData& f, std::span<const double> r_grid,
                                        std::span<const DirectionPair> pairs, double tolerance,
                                        const TransformOptions& opts) {
    CompatibilityReport report;
    report.tolerance = tolerance;
    report.pairs_checked = pairs.size();
    if (r_grid.empty()) throw ConfigurationError("compatibility check needs a non-empty r grid");
    for (double r : r_grid)
        if (!(r > 0.0)) throw ConfigurationError("compatibility grid entries must be positive");

    struct PairResult {
        double deviation = 0.0;
        double magnitude = 0.0;
        double worst_r = 0.0;
    };
    std::vector<PairResult> results(pairs.size());
    const int m = f.d - f.n;
    parallel_for(pairs.size(), [&](std::size_t i) {
        const auto& pair = pairs[i];
        const auto forward = f.profile_of(pair.theta, pair.omega);
        const auto antipodal = f.profile_of(negated(pair.theta), negated(pair.omega));
        PairResult res;
        for (double r0 : r_grid) {
            for (double r : {r0, -r0}) {
                const Complex lhs = inverse_fourier_profile(antipodal, r, opts);
                const Complex multiplier = (m % 2 == 0 ? 1.0 : -1.0) * hilbert_multiplier(m, r);
                const Complex rhs = inverse_fourier_profile(forward, -r, opts) * multiplier;
                const double dev = std::abs(lhs - rhs);
                res.magnitude = std::max({res.magnitude, std::abs(lhs), std::abs(rhs)});
                if (dev > res.deviation || res.worst_r == 0.0) {
                    res.deviation = std::max(dev, res.deviation);
                    if (dev >= res.deviation) res.worst_r = r;
                }
            }
        }
        results[i] = res;
    });
    for (std::size_t i = 0; i < results.size(); ++i) {
        report.max_magnitude = std::max(report.max_magnitude, results[i].magnitude);
        if (i == 0 || results[i].deviation > report.max_deviation) {
            report.max_deviation = results[i].deviation;
            report.worst_pair = pairs[i];
            report.worst_r = results[i].worst_r;
        }
    }
    report.pass = report.max_deviation <= tolerance;
    return report;
}

namespace {

constexpr double kScatteringGrowthSlack = 0.1;

double safe_log(double v) { return std::log(std::max(v, 1e-300)); }

// Per-decade sups of the weighted derivative over +-[1, 1e3]; growth is the
// log-log slope between the last two decades.
EnvelopeEntry profile_envelope(const ProfileFunction& f, int k, const std::string& label) {
    EnvelopeEntry entry;
    entry.check = label;
    entry.k = k;
    const double eps = f.epsilon;
    auto weighted = [&](double p) { return std::pow(1.0 + std::abs(p), k + eps) * std::abs(f.derivative(k, p)); };
    double constant = 0.0;
    for (double p : {0.0, 0.25, -0.25, 0.5, -0.5}) constant = std::max(constant, weighted(p));
    std::vector<double> sups;
    bool finite = true;
    for (int decade = 0; decade < 3; ++decade) {
        double sup = 0.0;
        for (double p : log_space(std::pow(10.0, decade), std::pow(10.0, decade + 1), 21)) {
            const double a = weighted(p), b = weighted(-p);
            if (!std::isfinite(a) || !std::isfinite(b)) finite = false;
            sup = std::max({sup, a, b});
        }
        sups.push_back(sup);
        constant = std::max(constant, sup);
    }
    entry.constant = constant;
    entry.left_slope = (safe_log(sups[1]) - safe_log(sups[0])) / std::log(10.0);
    entry.right_slope = (safe_log(sups[2]) - safe_log(sups[1])) / std::log(10.0);
    entry.pass = finite && std::isfinite(constant) && entry.right_slope <= kScatteringGrowthSlack;
    return entry;
}

// f -> 0 together with |f'| <= C (1+|p|)^{-1-eps} forces |f| = O(|p|^{-eps});
// compare sups near 1e3 and near 1e6 against that rate.
EnvelopeEntry vanishing_entry(const ProfileFunction& f) {
    EnvelopeEntry entry;
    entry.check = "vanishing at infinity";
    auto sup_at = [&f](std::initializer_list<double> ps) {
        double s = 0.0;
        for (double p : ps) s = std::max({s, std::abs(f.eval(p)), std::abs(f.eval(-p))});
        return s;
    };
    const double near = sup_at({1e3, 2e3, 5e3});
    const double far = sup_at({2e5, 5e5, 1e6});
    entry.constant = far;
    entry.right_slope = (safe_log(far) - safe_log(near)) / std::log(1e6 / 5e3);
    const bool negligible = far <= 1e-12;
    entry.pass = std::isfinite(far) && std::isfinite(near) &&
                 (negligible || entry.right_slope <= -f.epsilon + kScatteringGrowthSlack);
    return entry;
}

}  // namespace

RegularityReport check_profile_conditions(const ProfileFunction& f, int K) {
    RegularityReport report;
    report.subject = f.description;
    report.entries.push_back(vanishing_entry(f));
    for (int k = 1; k <= K; ++k) report.entries.push_back(profile_envelope(f, k, "derivative decay"));
    report.notes.push_back("checked derivative orders 1.." + std::to_string(K) + " on +-[1, 1e3]");
    report.pass = std::all_of(report.entries.begin(), report.entries.end(), [](const auto& e) { return e.pass; });
    return report;
}

RegularityReport check_scattering_conditions(const ScatteringData& f, int K, std::span<const DirectionPair> pairs) {
    RegularityReport report;
    report.subject = f.description;
    std::vector<RegularityReport> per_pair(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        per_pair[i] = check_profile_conditions(f.profile_of(pairs[i].theta, pairs[i].omega), K);
    });
    // Worst constant per (check, k) across pairs; a single failing pair fails the entry.
    for (const auto& pr : per_pair) {
        for (const auto& e : pr.entries) {
            auto it = std::find_if(report.entries.begin(), report.entries.end(),
                                   [&](const EnvelopeEntry& x) { return x.check == e.check && x.k == e.k; });
            if (it == report.entries.end()) {
                report.entries.push_back(e);
            } else {
                it->constant = std::max(it->constant, e.constant);
                it->left_slope = std::max(it->left_slope, e.left_slope);
                it->right_slope = std::max(it->right_slope, e.right_slope);
                it->pass = it->pass && e.pass;
            }
        }
    }
    report.notes.push_back("checked p-derivative orders 1.." + std::to_string(K) +
                           "; angular derivatives of f are not sampled");
    report.notes.push_back("node pairs: " + std::to_string(pairs.size()));
    report.pass = !report.entries.empty() &&
                  std::all_of(report.entries.begin(), report.entries.end(), [](const auto& e) { return e.pass; });
    return report;
}

RegularityReport check_amplitude_conditions(const Amplitude& A, const AmplitudeCheckOptions& opts) {
    require_dims(A.d, A.n);
    RegularityReport report;
    report.subject = A.description;
    const auto sd = sphere_rule(A.d, opts.sphere_resolution);
    const auto sn = sphere_rule(A.n, opts.sphere_resolution);
    const auto pairs = all_node_pairs(sd, sn);
    const double r_max = radial_cutoff(opts.tol);
    const auto decades = std::log10(r_max / opts.r_min);
    const auto count = static_cast<std::size_t>(std::ceil(decades * opts.points_per_decade)) + 1;
    const RealVector grid = log_space(opts.r_min, r_max, count);
    const int alpha_max = std::min(2, A.angular_max_order);
    const int dims = A.d + A.n;

    // |d^k_r d^alpha A| maxed over nodes and coordinate directions, per r.
    auto angular_derivative = [&](const DirectionPair& pair, int alpha, int dir, double r) -> Complex {
        if (alpha == 0) return A.eval(pair.theta, pair.omega, r);
        constexpr double h = 1e-4;
        auto shifted = [&](double delta) {
            RealVector z = pair.theta, s = pair.omega;
            auto& v = dir < A.d ? z : s;
            v[static_cast<std::size_t>(dir < A.d ? dir : dir - A.d)] += delta;
            const double nz = norm(z), ns = norm(s);
            for (auto& x : z) x /= nz;
            for (auto& x : s) x /= ns;
            return A.eval(z, s, r);
        };
        if (alpha == 1) return (shifted(h) - shifted(-h)) / (2.0 * h);
        return (shifted(h) - 2.0 * A.eval(pair.theta, pair.omega, r) + shifted(-h)) / (h * h);
    };
    constexpr double radial_step = 1e-5;
    auto radial_derivative = [&](const DirectionPair& pair, int k, int alpha, int dir, double r) -> Complex {
        auto g = [&](double x) { return angular_derivative(pair, alpha, dir, x); };
        const double h = radial_step * r;
        if (k == 0) return g(r);
        if (k == 1) return (g(r + h) - g(r - h)) / (2.0 * h);
        return (g(r + h) - 2.0 * g(r) + g(r - h)) / (h * h);
    };

    const double a = A.small_r_exponent();
    for (int k = 0; k <= std::min(opts.k_max, 2); ++k) {
        for (int alpha = 0; alpha <= alpha_max; ++alpha) {
            std::vector<double> sup(grid.size(), 0.0);
            bool finite = true;
            parallel_for(grid.size(), [&](std::size_t gi) {
                const double r = grid[gi];
                double s = 0.0, magnitude = 0.0;
                for (const auto& pair : pairs) {
                    magnitude = std::max(magnitude, std::abs(A.eval(pair.theta, pair.omega, r)));
                    const int directions = alpha == 0 ? 1 : dims;
                    for (int dir = 0; dir < directions; ++dir) {
                        const double v = std::abs(radial_derivative(pair, k, alpha, dir, r));
                        s = std::max(s, v);
                    }
                }
                // Differences below the rounding level of the stencil carry no signal.
                const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * magnitude /
                                        (std::pow(1e-4, alpha) * std::pow(radial_step * r, k));
                sup[gi] = (k == 0 && alpha == 0) ? s : std::max(s, rounding);
            });
            for (double v : sup)
                if (!std::isfinite(v)) finite = false;
            for (int ell = 0; ell <= opts.ell_max; ++ell) {
                std::vector<double> logs(grid.size()), logr(grid.size());
                double constant = 0.0;
                for (std::size_t gi = 0; gi < grid.size(); ++gi) {
                    const double r = grid[gi];
                    const double bound = std::pow(r, a - k) * std::pow(1.0 + r, -ell);
                    const double ratio = sup[gi] / bound;
                    constant = std::max(constant, ratio);
                    logs[gi] = safe_log(ratio);
                    logr[gi] = std::log(r);
                }
                auto slope_where = [&](auto keep) {
                    std::vector<double> xs, ys;
                    for (std::size_t gi = 0; gi < grid.size(); ++gi)
                        if (keep(grid[gi])) {
                            xs.push_back(logr[gi]);
                            ys.push_back(logs[gi]);
                        }
                    return least_squares_slope(xs, ys);
                };
                EnvelopeEntry entry;
                entry.check = "amplitude envelope";
                entry.k = k;
                entry.ell = ell;
                entry.alpha = alpha;
                entry.constant = constant;
                entry.left_slope = slope_where([&](double r) { return r <= 10.0 * opts.r_min; });
                entry.right_slope = slope_where([&](double r) { return r >= 0.1 * r_max; });
                entry.pass = finite && std::isfinite(constant) && entry.left_slope >= -kEnvelopeSlopeSlack &&
                             entry.right_slope <= kEnvelopeSlopeSlack;
                report.entries.push_back(entry);
            }
        }
    }
    report.notes.push_back("checked k <= " + std::to_string(std::min(opts.k_max, 2)) + ", l <= " +
                           std::to_string(opts.ell_max) + ", |alpha| <= " + std::to_string(alpha_max) +
                           " on r in [" + std::to_string(opts.r_min) + ", " + std::to_string(r_max) + "]");
    report.pass = std::all_of(report.entries.begin(), report.entries.end(), [](const auto& e) { return e.pass; });
    return report;
}

}  // namespace uhs
