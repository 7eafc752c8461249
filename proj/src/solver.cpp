#include "uhs/solver.hpp"

#include <cmath>
#include <limits>

namespace uhs {

int auto_sphere_resolution(double radius, double radial_tol) {
    const double z = radial_cutoff(radial_tol) * radius;
    const int res = static_cast<int>(std::ceil(z + 4.0 * std::cbrt(z) + 20.0));
    return res + (res % 2);
}

SolutionField make_solution_field(const Amplitude& A, double radius, const SolverOptions& opts) {
    if (!(radius >= 0.0)) throw ConfigurationError("solution radius must be non-negative");
    if (!A.eval) throw ConfigurationError("amplitude has no evaluator");
    int res = opts.sphere_resolution > 0 ? opts.sphere_resolution : auto_sphere_resolution(radius, opts.radial_tol);
    res += res % 2;
    SolutionField u;
    u.A = A;
    u.sphere_d = sphere_rule(A.d, res);
    u.sphere_n = sphere_rule(A.n, res);
    u.radial = radial_rule(A.N(), A.epsilon, opts.radial_tol, radius);
    u.radius = radius;
    if (A.separable()) {
        const std::size_t nd = u.sphere_d.size(), nn = u.sphere_n.size();
        u.angular_table.resize(nd * nn);
        for (std::size_t i = 0; i < nd; ++i)
            for (std::size_t j = 0; j < nn; ++j)
                u.angular_table[i * nn + j] = u.sphere_d.weights[i] * u.sphere_n.weights[j] *
                                              A.angular(u.sphere_d.node(i), u.sphere_n.node(j));
    }
    return u;
}

Complex evaluate(const SolutionField& u, std::span<const double> x, std::span<const double> y) {
    if (static_cast<int>(x.size()) != u.d() || static_cast<int>(y.size()) != u.n())
        throw ConfigurationError("evaluation point does not match the field dimensions");
    const double reach = std::max(norm(x), norm(y));
    if (reach > u.radius * (1.0 + 1e-12))
        throw ConfigurationError("point at distance " + std::to_string(reach) +
                                 " lies beyond the configured radius " + std::to_string(u.radius));
    const auto& sd = u.sphere_d;
    const auto& sn = u.sphere_n;
    const std::size_t nd = sd.size(), nn = sn.size(), nr = u.radial.size();
    RealVector xz(nd), ys(nn);
    for (std::size_t i = 0; i < nd; ++i) xz[i] = dot(x, sd.node(i));
    for (std::size_t j = 0; j < nn; ++j) ys[j] = dot(y, sn.node(j));
    const bool separable = !u.angular_table.empty();

    std::vector<Complex> radial_terms(nr);
    parallel_for(nr, [&](std::size_t k) {
        const double r = u.radial.nodes[k];
        std::vector<Complex> ey(nn), inner(nn), outer(nd);
        for (std::size_t j = 0; j < nn; ++j) ey[j] = std::exp(-I * (r * ys[j]));
        for (std::size_t i = 0; i < nd; ++i) {
            if (separable) {
                const Complex* row = &u.angular_table[i * nn];
                for (std::size_t j = 0; j < nn; ++j) inner[j] = row[j] * ey[j];
            } else {
                for (std::size_t j = 0; j < nn; ++j)
                    inner[j] = sd.weights[i] * sn.weights[j] * ey[j] * u.A.eval(sd.node(i), sn.node(j), r);
            }
            outer[i] = std::exp(I * (r * xz[i])) * pairwise_sum(std::span<const Complex>(inner));
        }
        const Complex radial = separable ? u.A.radial(r) : Complex(1.0, 0.0);
        radial_terms[k] = u.radial.weights[k] * radial * pairwise_sum(std::span<const Complex>(outer));
    });
    return std::pow(2.0 * pi, -u.N()) * pairwise_sum(std::span<const Complex>(radial_terms));
}

Complex pde_residual(const SolutionField& u, std::span<const double> x, std::span<const double> y, double h) {
    if (!(h > 0.0)) throw ConfigurationError("finite-difference step must be positive");
    const Complex center = evaluate(u, x, y);
    RealVector xs(x.begin(), x.end()), ysv(y.begin(), y.end());
    auto second = [&](RealVector& v, std::size_t i) {
        const double keep = v[i];
        v[i] = keep + h;
        const Complex plus = evaluate(u, xs, ysv);
        v[i] = keep - h;
        const Complex minus = evaluate(u, xs, ysv);
        v[i] = keep;
        return (plus - 2.0 * center + minus) / (h * h);
    };
    Complex lap_y{}, lap_x{};
    for (std::size_t j = 0; j < ysv.size(); ++j) lap_y += second(ysv, j);
    for (std::size_t i = 0; i < xs.size(); ++i) lap_x += second(xs, i);
    return lap_y - lap_x;
}

AsymptoticSlice asymptotic_slice(const SolutionField& u, std::span<const double> theta,
                                 std::span<const double> omega, double p, std::span<const double> s_values) {
    for (std::size_t i = 1; i < s_values.size(); ++i)
        if (!(s_values[i] > s_values[i - 1])) throw ConfigurationError("s values must be strictly increasing");
    AsymptoticSlice slice;
    slice.theta.assign(theta.begin(), theta.end());
    slice.omega.assign(omega.begin(), omega.end());
    slice.p = p;
    slice.s_values.assign(s_values.begin(), s_values.end());
    const double power = 0.5 * u.N() - 1.0;
    for (double s : s_values) {
        RealVector x(theta.begin(), theta.end()), y(omega.begin(), omega.end());
        for (auto& v : x) v *= s;
        for (auto& v : y) v *= s + p;
        slice.scaled_values.push_back(std::pow(s, power) * evaluate(u, x, y));
    }
    return slice;
}

ExtractionResult extract_scattering(const SolutionField& u, std::span<const double> theta,
                                    std::span<const double> omega, double p, std::span<const double> s_values,
                                    std::optional<Complex> f_ref) {
    if (s_values.size() < 4) throw ConfigurationError("scattering extraction needs at least 4 s values");
    ExtractionResult out;
    out.slice = asymptotic_slice(u, theta, omega, p, s_values);
    const auto& values = out.slice.scaled_values;
    out.f_est = values.back();
    const Complex f_star = f_ref.value_or(out.f_est);
    const std::size_t used = f_ref ? values.size() : values.size() - 1;
    RealVector xs, ys;
    bool all_small = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double err = std::abs(values[i] - f_star);
        out.errors.push_back(err);
        if (i >= used) continue;
        if (err >= 1e-13) all_small = false;
        xs.push_back(std::log(s_values[i]));
        ys.push_back(std::log(std::max(err, 1e-300)));
    }
    if (all_small) {
        out.degenerate = true;
        out.rate = -std::numeric_limits<double>::infinity();
    } else {
        out.rate = least_squares_slope(xs, ys);
    }
    return out;
}

ResidualStudy residual_study(const SolutionField& u, std::span<const double> x, std::span<const double> y,
                             std::span<const double> h_ladder) {
    ResidualStudy study;
    study.x.assign(x.begin(), x.end());
    study.y.assign(y.begin(), y.end());
    study.u = evaluate(u, x, y);
    for (double h : h_ladder) study.ladder.push_back({h, pde_residual(u, x, y, h)});
    // Rounding in the stencil grows like eps |u| / h^2; steps whose residual
    // is within a factor 100 of that are not used for the order.
    const double stencil = 4.0 * (u.d() + u.n());
    double total = 0.0;
    for (std::size_t i = 1; i < study.ladder.size(); ++i) {
        const auto& a = study.ladder[i - 1];
        const auto& b = study.ladder[i];
        const double floor_b = 100.0 * stencil * std::numeric_limits<double>::epsilon() * std::abs(study.u) / (b.h * b.h);
        if (std::abs(b.residual) <= floor_b || std::abs(a.residual) == 0.0) continue;
        total += std::log(std::abs(a.residual) / std::abs(b.residual)) / std::log(a.h / b.h);
        ++study.steps_used;
    }
    study.order = study.steps_used > 0 ? total / study.steps_used : std::numeric_limits<double>::quiet_NaN();
    return study;
}

}  // namespace uhs
