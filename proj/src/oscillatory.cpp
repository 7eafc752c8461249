#include "uhs/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace uhs {

namespace {

constexpr std::size_t kWynnWindow = 24;

bool settled(const Complex& a, const Complex& b, const OscillatoryOptions& opts) {
    return std::abs(a - b) <= opts.abs_tol + opts.rel_tol * std::abs(a);
}

}  // namespace

Complex wynn_epsilon(std::span<const Complex> partial_sums) {
    if (partial_sums.empty()) return {};
    const auto seq = partial_sums.size() > kWynnWindow ? partial_sums.last(kWynnWindow) : partial_sums;
    const std::size_t n = seq.size();
    std::vector<Complex> prev(n + 1, Complex{});  // column k-1
    std::vector<Complex> cur(seq.begin(), seq.end());  // column k
    Complex best = cur.back();
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<Complex> next(n - k);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            const Complex diff = cur[i + 1] - cur[i];
            if (diff == Complex{}) return cur[i + 1];
            next[i] = prev[i + 1] + 1.0 / diff;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0) best = cur.back();
    }
    return best;
}

QuadratureResult integrate_panel(const RealToComplex& h, double a, double b, double rel_tol, int max_depth) {
    using boost::math::quadrature::gauss_kronrod;
    double error = 0.0;
    const Complex value = gauss_kronrod<double, 21>::integrate(h, a, b, static_cast<unsigned>(max_depth), rel_tol, &error);
    return {value, error};
}

QuadratureResult integrate_half_line(const RealToComplex& h, const OscillatoryOptions& opts) {
    std::vector<Complex> sums;
    Complex total{};
    double error = 0.0;
    Complex previous_estimate{};
    int stable = 0;
    double a = 0.0, b = 1.0;
    for (int panel = 0; panel < 400; ++panel) {
        const auto piece = integrate_panel(h, a, b, 1e-12, opts.panel_depth + 6);
        total += piece.value;
        error += piece.error;
        sums.push_back(total);
        const Complex estimate = wynn_epsilon(sums);
        if (panel >= 4 && settled(estimate, previous_estimate, opts)) {
            if (++stable >= 2) return {estimate, error + std::abs(estimate - previous_estimate)};
        } else {
            stable = 0;
        }
        previous_estimate = estimate;
        a = b;
        b *= 2.0;
        if (!std::isfinite(b)) break;
    }
    throw ToleranceError("half-line integral did not converge", std::abs(total - previous_estimate));
}

QuadratureResult fourier_half_line(const RealToComplex& h, double r, const OscillatoryOptions& opts) {
    if (r == 0.0) throw DomainError("fourier_half_line needs a nonzero frequency");
    const double quarter = pi / (2.0 * std::abs(r));
    const double half = 2.0 * quarter;
    const double core_end = std::max(1.0, std::ceil(opts.core_extent / half)) * half;
    auto integrand = [&h, r](double p) { return std::exp(I * (r * p)) * h(p); };

    Complex core{};
    double error = 0.0;
    for (double a = 0.0; a < core_end;) {
        double width = std::min({quarter, std::max(a, std::min(1.0, quarter)), core_end - a});
        double b = a + width;
        if (core_end - b < 1e-12 * core_end) b = core_end;
        const auto piece = integrate_panel(integrand, a, b, 1e-12, opts.panel_depth);
        core += piece.value;
        error += piece.error;
        a = b;
    }

    // Half-period cycles starting on a period boundary of e^{i r p}.
    std::vector<Complex> sums;
    Complex total = core;
    Complex previous_estimate = core;
    double tail_scale = std::abs(core);
    int stable = 0;
    for (int cycle = 0; cycle < opts.max_cycles; ++cycle) {
        const double a = core_end + cycle * half;
        const auto left = integrate_panel(integrand, a, a + quarter, 1e-12, opts.panel_depth);
        const auto right = integrate_panel(integrand, a + quarter, a + half, 1e-12, opts.panel_depth);
        const Complex term = left.value + right.value;
        error += left.error + right.error;
        total += term;
        sums.push_back(total);
        tail_scale = std::max(tail_scale, std::abs(total));
        const Complex estimate = wynn_epsilon(sums);
        if (cycle + 1 >= opts.min_cycles &&
            (settled(estimate, previous_estimate, opts) ||
             std::abs(term) <= 1e-3 * (opts.abs_tol + opts.rel_tol * tail_scale))) {
            if (++stable >= 2) return {estimate, error + std::abs(estimate - previous_estimate)};
        } else {
            stable = 0;
        }
        previous_estimate = estimate;
    }
    throw ToleranceError("oscillatory tail extrapolation did not settle",
                         std::abs(total - previous_estimate));
}

QuadratureResult fourier_real_line(const DerivativeTable& g, double r, int parts,
                                   const OscillatoryOptions& opts) {
    if (parts < 0) throw ConfigurationError("number of integrations by parts must be >= 0");
    if (r == 0.0) {
        if (parts != 0) throw DomainError("integration by parts is undefined at r = 0");
        const auto right = integrate_half_line([&g](double q) { return g(0, q); }, opts);
        const auto left = integrate_half_line([&g](double q) { return g(0, -q); }, opts);
        return {right.value + left.value, right.error + left.error};
    }
    const double zero_plus = std::numeric_limits<double>::denorm_min();
    const Complex ir = I * r;
    const Complex factor = -1.0 / ir;

    Complex boundary{};
    Complex power{1.0, 0.0};  // (-1/(i r))^j
    for (int j = 0; j < parts; ++j) {
        const Complex jump = g(j, -zero_plus) - g(j, zero_plus);
        boundary += power * jump / ir;
        power *= factor;
    }
    const auto right = fourier_half_line([&g, parts](double q) { return g(parts, q); }, r, opts);
    const auto left = fourier_half_line([&g, parts](double q) { return g(parts, -q); }, -r, opts);
    return {boundary + power * (right.value + left.value),
            std::abs(power) * (right.error + left.error)};
}

}  // namespace uhs
