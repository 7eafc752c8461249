#include "uhs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace uhs {

namespace {

constexpr int kPanelOrder = 20;
constexpr int kGradingLevels = 6;

// Legendre P_n(x) and its derivative by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

const GaussLegendre& cached_gauss_legendre(int count) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[count];
    if (!slot) slot = std::make_unique<GaussLegendre>(gauss_legendre(count));
    return *slot;
}

}  // namespace

GaussLegendre gauss_legendre(int count) {
    if (count < 1) throw ConfigurationError("Gauss-Legendre rule needs at least one node");
    GaussLegendre rule;
    rule.nodes.assign(static_cast<std::size_t>(count), 0.0);
    rule.weights.assign(static_cast<std::size_t>(count), 0.0);
    if (count == 1) {
        rule.weights[0] = 2.0;
        return rule;
    }
    const int half = (count + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (count + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre_with_derivative(count, x);
            const double step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        const auto [p, dp] = legendre_with_derivative(count, x);
        (void)p;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Ascending order with exact antisymmetry.
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(count - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (count % 2 == 1) rule.nodes[static_cast<std::size_t>(count / 2)] = 0.0;
    return rule;
}

double sphere_measure(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * pi;
        case 3: return 4.0 * pi;
        default: throw DimensionError("sphere dimension must be 1, 2 or 3, got " + std::to_string(d));
    }
}

SphereRule sphere_rule(int d, int resolution) {
    if (d < 1 || d > 3)
        throw DimensionError("sphere dimension must be 1, 2 or 3, got " + std::to_string(d));
    if (resolution < 1) throw ConfigurationError("sphere resolution must be >= 1");
    SphereRule rule;
    rule.dim = d;
    if (d == 1) {
        rule.coords = {1.0, -1.0};
        rule.weights = {1.0, 1.0};
        rule.antipode = {1, 0};
        return rule;
    }
    if (resolution < 2 || resolution % 2 != 0)
        throw ConfigurationError("sphere resolution must be even and >= 2 for d >= 2 (antipodal closure)");

    // Azimuth table; the second half is the exact negation of the first.
    const int m_az = resolution;
    const int half_az = m_az / 2;
    RealVector c(static_cast<std::size_t>(m_az)), s(static_cast<std::size_t>(m_az));
    for (int k = 0; k < half_az; ++k) {
        const double phi = 2.0 * pi * k / m_az;
        c[static_cast<std::size_t>(k)] = std::cos(phi);
        s[static_cast<std::size_t>(k)] = std::sin(phi);
        c[static_cast<std::size_t>(k + half_az)] = -c[static_cast<std::size_t>(k)];
        s[static_cast<std::size_t>(k + half_az)] = -s[static_cast<std::size_t>(k)];
    }

    if (d == 2) {
        const double w = 2.0 * pi / m_az;
        for (int k = 0; k < m_az; ++k) {
            rule.coords.push_back(c[static_cast<std::size_t>(k)]);
            rule.coords.push_back(s[static_cast<std::size_t>(k)]);
            rule.weights.push_back(w);
            rule.antipode.push_back(static_cast<std::size_t>((k + half_az) % m_az));
        }
        return rule;
    }

    const int m_polar = std::max(2, resolution / 2);
    const auto gl = gauss_legendre(m_polar);
    for (int i = 0; i < m_polar; ++i) {
        const double x = gl.nodes[static_cast<std::size_t>(i)];
        // sqrt of the symmetric argument keeps sin(theta) identical for +-x.
        const double sin_t = std::sqrt((1.0 - x) * (1.0 + x));
        for (int k = 0; k < m_az; ++k) {
            rule.coords.push_back(sin_t * c[static_cast<std::size_t>(k)]);
            rule.coords.push_back(sin_t * s[static_cast<std::size_t>(k)]);
            rule.coords.push_back(x);
            rule.weights.push_back(gl.weights[static_cast<std::size_t>(i)] * 2.0 * pi / m_az);
            const int anti = (m_polar - 1 - i) * m_az + (k + half_az) % m_az;
            rule.antipode.push_back(static_cast<std::size_t>(anti));
        }
    }
    return rule;
}

double RadialRule::max_spacing() const {
    double gap = nodes.empty() ? r_max : nodes.front();
    for (std::size_t i = 1; i < nodes.size(); ++i) gap = std::max(gap, nodes[i] - nodes[i - 1]);
    if (!nodes.empty()) gap = std::max(gap, r_max - nodes.back());
    return gap;
}

double radial_spacing_cap(double s_scale) { return pi / (4.0 * (s_scale + 1.0)); }

double radial_cutoff(double tol) { return -std::log(tol) + 10.0; }

void for_each_radial_node(double epsilon, double tol, double s_scale,
                          const std::function<void(double, double)>& visit) {
    if (!(epsilon > 0.0 && epsilon <= 0.5))
        throw ConfigurationError("radial rule epsilon must lie in (0, 1/2]");
    if (!(tol > 0.0)) throw ConfigurationError("radial rule tolerance must be positive");
    if (!(s_scale >= 0.0)) throw ConfigurationError("radial rule s_scale must be non-negative");

    const int kappa = static_cast<int>(std::ceil(4.0 / epsilon - 1e-12));
    const double r_max = radial_cutoff(tol);
    const double t_end = std::pow(r_max, 1.0 / kappa);
    const double cap = radial_spacing_cap(s_scale);
    const auto& gl = cached_gauss_legendre(kPanelOrder);
    const double dt_max = t_end / 6.0;

    auto to_r = [kappa](double t) { return std::pow(t, kappa); };
    auto jac = [kappa](double t) { return kappa * std::pow(t, kappa - 1); };

    // Largest r-gap produced by GL nodes on [ta, tb], including the gap to
    // the previous node and to the panel end.
    auto panel_gap = [&](double ta, double tb, double prev_r) {
        double gap = 0.0, last = prev_r;
        for (double x : gl.nodes) {
            const double r = to_r(0.5 * (ta + tb) + 0.5 * (tb - ta) * x);
            gap = std::max(gap, r - last);
            last = r;
        }
        return std::max(gap, to_r(tb) - last);
    };

    std::vector<double> bounds{0.0};
    double prev_r = 0.0;
    double width_r = 2.0 * kPanelOrder * cap / pi;
    while (bounds.back() < t_end) {
        const double ta = bounds.back();
        double tb = std::min({ta + dt_max, std::pow(to_r(ta) + width_r, 1.0 / kappa), t_end});
        while (panel_gap(ta, tb, prev_r) > cap) tb = ta + 0.8 * (tb - ta);
        if (t_end - tb < 1e-12 * t_end) tb = t_end;
        bounds.push_back(tb);
        prev_r = to_r(0.5 * (ta + tb) + 0.5 * (tb - ta) * gl.nodes.back());
    }
    // Geometric grading of the first panel towards the singular end.
    if (bounds.size() >= 2) {
        const double first = bounds[1];
        std::vector<double> graded{0.0};
        for (int level = kGradingLevels; level >= 1; --level) graded.push_back(first * std::ldexp(1.0, -level));
        bounds.erase(bounds.begin());
        bounds.insert(bounds.begin(), graded.begin(), graded.end());
    }

    for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
        const double ta = bounds[p], tb = bounds[p + 1];
        const double half = 0.5 * (tb - ta), mid = 0.5 * (tb + ta);
        for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
            const double t = mid + half * gl.nodes[j];
            visit(to_r(t), gl.weights[j] * half * jac(t));
        }
    }
}

RadialRule radial_rule(int N, double epsilon, double tol, double s_scale) {
    if (N < 2) throw ConfigurationError("radial rule needs N = d + n >= 2");
    RadialRule rule;
    for_each_radial_node(epsilon, tol, s_scale, [&](double r, double w) {
        rule.nodes.push_back(r);
        rule.weights.push_back(w);
    });
    rule.kappa = static_cast<int>(std::ceil(4.0 / epsilon - 1e-12));
    rule.r_max = radial_cutoff(tol);
    rule.singularity_exponent = 0.5 * N - 2.0 + epsilon;
    rule.s_scale = s_scale;
    return rule;
}

Complex integrate(const RadialRule& rule, const std::function<Complex(double)>& g) {
    std::vector<Complex> terms(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) terms[i] = rule.weights[i] * g(rule.nodes[i]);
    return pairwise_sum(std::span<const Complex>(terms));
}

}  // namespace uhs
