#include "uhs/stationary_phase.hpp"

#include <cmath>
#include <limits>

namespace uhs {

CriticalPointSet critical_points(std::span<const double> theta, std::span<const double> omega) {
    const int d = static_cast<int>(theta.size()), n = static_cast<int>(omega.size());
    CriticalPointSet set;
    const RealVector t(theta.begin(), theta.end()), o(omega.begin(), omega.end());
    set.points[0] = {t, o, 0.0};
    set.points[1] = {negated(t), negated(o), 0.0};
    set.points[2] = {negated(t), o, -2.0};
    set.points[3] = {t, negated(o), 2.0};
    set.phase_forward = positive_branch_phase(d, n);
    set.phase_backward = std::conj(set.phase_forward);
    set.signature_forward = n - d;
    set.signature_backward = d - n;
    return set;
}

int min_inner_resolution(double r, double s) { return 10 + 4 * static_cast<int>(std::ceil(r * s)); }

Complex inner_integral(const Amplitude& A, std::span<const double> theta, std::span<const double> omega, double p,
                       double r, double s, int resolution) {
    if (!(r > 0.0)) throw DomainError("inner integral needs r > 0");
    if (static_cast<int>(theta.size()) != A.d || static_cast<int>(omega.size()) != A.n)
        throw ConfigurationError("direction dimensions do not match the amplitude");
    if ((A.d > 1 || A.n > 1) && resolution < min_inner_resolution(r, s))
        throw ConfigurationError("sphere resolution " + std::to_string(resolution) + " below the oscillation budget " +
                                 std::to_string(min_inner_resolution(r, s)));
    resolution += resolution % 2;
    const auto sd = sphere_rule(A.d, resolution);
    const auto sn = sphere_rule(A.n, resolution);
    std::vector<Complex> ey(sn.size());
    for (std::size_t j = 0; j < sn.size(); ++j) {
        const double os = dot(omega, sn.node(j));
        ey[j] = sn.weights[j] * std::exp(-I * (r * s * os + r * p * os));
    }
    std::vector<Complex> rows(sd.size());
    parallel_for(sd.size(), [&](std::size_t i) {
        const auto z = sd.node(i);
        std::vector<Complex> inner(sn.size());
        for (std::size_t j = 0; j < sn.size(); ++j) inner[j] = ey[j] * A.eval(z, sn.node(j), r);
        rows[i] = sd.weights[i] * std::exp(I * (r * s * dot(theta, z))) * pairwise_sum(std::span<const Complex>(inner));
    });
    return pairwise_sum(std::span<const Complex>(rows));
}

namespace {

double leading_scale(int N, double r, double s) { return std::pow(2.0 * pi / (r * s), 0.5 * N - 1.0); }

}  // namespace

Complex leading_terms(const Amplitude& A, std::span<const double> theta, std::span<const double> omega, double p,
                      double r, double s) {
    if (!(r > 0.0 && s > 0.0)) throw DomainError("leading terms need r, s > 0");
    const Complex ph = positive_branch_phase(A.d, A.n);
    const Complex forward = ph * std::exp(-I * (r * p)) * A.eval(theta, omega, r);
    const Complex backward = std::conj(ph) * std::exp(I * (r * p)) * A.eval(negated(theta), negated(omega), r);
    return leading_scale(A.N(), r, s) * (forward + backward);
}

double claimed_remainder_slope(int d, int n) { return -(0.5 * (d + n) - 0.5); }

PhaseComparison remainder_scan(const Amplitude& A, std::span<const double> theta, std::span<const double> omega,
                               double p, double r, std::span<const double> s_values, int resolution) {
    PhaseComparison out;
    out.s_values.assign(s_values.begin(), s_values.end());
    if (A.d == 1 && A.n == 1) {
        out.vacuous = true;
        for (double s : s_values) {
            out.direct.push_back(inner_integral(A, theta, omega, p, r, s, 2));
            out.leading.push_back(leading_terms(A, theta, omega, p, r, s));
            out.remainder.push_back(out.direct.back() - out.leading.back());
        }
        out.residual_slope = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    if (s_values.size() < 5) throw ConfigurationError("remainder scan needs at least 5 s values");

    const Complex a_minus = A.eval(negated(theta), omega, r);
    const Complex a_plus = A.eval(theta, negated(omega), r);
    std::vector<Complex> diff, b1, b2;
    for (double s : s_values) {
        const int res = resolution > 0 ? std::max(resolution, min_inner_resolution(r, s))
                                       : 2 * min_inner_resolution(r, s);
        out.direct.push_back(inner_integral(A, theta, omega, p, r, s, res));
        out.leading.push_back(leading_terms(A, theta, omega, p, r, s));
        diff.push_back(out.direct.back() - out.leading.back());
        const double scale = leading_scale(A.N(), r, s);
        b1.push_back(scale * std::exp(-I * (2.0 * r * s + r * p)) * a_minus);
        b2.push_back(scale * std::exp(I * (2.0 * r * s + r * p)) * a_plus);
    }

    // Complex least squares on diff ~ C1 b1 + C2 b2 via the 2x2 normal equations,
    // rows measured in units of the claimed remainder s^{-(N/2-1/2)} so that the
    // next-order terms at small s do not leak into C1, C2. A basis vector that
    // vanishes identically drops out.
    RealVector row_weight;
    for (double s : s_values) row_weight.push_back(std::pow(s, -2.0 * claimed_remainder_slope(A.d, A.n)));
    auto inner = [&row_weight](const std::vector<Complex>& a, const std::vector<Complex>& b) {
        Complex acc{};
        for (std::size_t i = 0; i < a.size(); ++i) acc += row_weight[i] * std::conj(a[i]) * b[i];
        return acc;
    };
    const Complex g11 = inner(b1, b1), g12 = inner(b1, b2), g22 = inner(b2, b2);
    const Complex h1 = inner(b1, diff), h2 = inner(b2, diff);
    Complex c1{}, c2{};
    const bool use1 = std::abs(g11) > 0.0, use2 = std::abs(g22) > 0.0;
    if (use1 && use2) {
        const Complex det = g11 * g22 - g12 * std::conj(g12);
        c1 = (g22 * h1 - g12 * h2) / det;
        c2 = (g11 * h2 - std::conj(g12) * h1) / det;
    } else if (use1) {
        c1 = h1 / g11;
    } else if (use2) {
        c2 = h2 / g22;
    }
    out.cross_fitted = {c1, c2};
    RealVector xs, ys;
    for (std::size_t i = 0; i < diff.size(); ++i) {
        out.remainder.push_back(diff[i] - c1 * b1[i] - c2 * b2[i]);
        xs.push_back(std::log(s_values[i]));
        ys.push_back(std::log(std::max(std::abs(out.remainder.back()), 1e-300)));
    }
    out.residual_slope = least_squares_slope(xs, ys);
    return out;
}

}  // namespace uhs
