#include "uhs/lemma_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/math/special_functions/bessel.hpp>

namespace uhs {

namespace {

QuadratureResult transform_derivative_detailed(const ProfileFunction& f, int j, double r,
                                               const TransformOptions& opts) {
    if (j < 0) throw ConfigurationError("derivative order must be non-negative");
    if (r == 0.0) throw DomainError("transform derivatives are not evaluated at r = 0");
    // g = (ip)^j f and its derivatives by Leibniz.
    const Complex ij = std::pow(I, j);
    auto g = [&f, j, ij](int m, double p) {
        Complex acc{};
        double binom = 1.0;  // C(m, l)
        double falling = 1.0;  // j! / (j-l)!
        for (int l = 0; l <= std::min(m, j); ++l) {
            acc += binom * falling * std::pow(p, j - l) * f.derivative(m - l, p);
            binom = binom * (m - l) / (l + 1);
            falling *= (j - l);
        }
        return ij * acc;
    };
    const auto result = fourier_real_line(g, r, j + 1, opts.quadrature);
    return {result.value / (2.0 * pi), result.error / (2.0 * pi)};
}

double slope_of(const RealVector& xs, const RealVector& ys) {
    if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    return least_squares_slope(xs, ys);
}

bool all_finite(const RealVector& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void require_hypothesis(bool ok, const std::string& what) {
    if (!ok) throw RejectedInput("profile fails the hypothesis: " + what);
}

void require_vanishing(const ProfileFunction& f) {
    const double far = std::max(std::abs(f.eval(1e6)), std::abs(f.eval(-1e6)));
    const double near = std::max({std::abs(f.eval(0.0)), std::abs(f.eval(1.0)), std::abs(f.eval(-1.0))});
    require_hypothesis(far < near, "f does not vanish at infinity");
}

}  // namespace

Complex transform_derivative(const ProfileFunction& f, int j, double r, const TransformOptions& opts) {
    return transform_derivative_detailed(f, j, r, opts).value;
}

Complex transform_direct(const ProfileFunction& f, double r, const TransformOptions& opts) {
    auto g = [&f](int, double p) { return f.eval(p); };
    return fourier_real_line(g, r, 0, opts.quadrature).value / (2.0 * pi);
}

bool sampled_decay(const ProfileFunction& f, int k, double exponent) {
    auto weighted = [&](double p) {
        return std::pow(1.0 + std::abs(p), exponent) * std::abs(f.derivative(k, p));
    };
    double previous = 0.0;
    for (double p : {1.0, 10.0, 100.0, 1000.0, 10000.0}) {
        const double w = std::max(weighted(p), weighted(-p));
        if (!std::isfinite(w)) return false;
        if (p == 10000.0) return !(previous > 0.0) || std::log10(w / previous) <= kLemmaSlopeSlack;
        previous = w;
    }
    return true;
}

std::vector<std::pair<double, double>> default_holder_pairs() {
    std::vector<std::pair<double, double>> pairs;
    for (double delta : log_space(1e-4, std::pow(10.0, -0.5), 8)) {
        for (double r0 : {0.0, 0.5, -0.3}) pairs.emplace_back(r0, r0 + delta);
        pairs.emplace_back(-delta / 3.0, 2.0 * delta / 3.0);
    }
    return pairs;
}

EnvelopeFit check_holder(const ProfileFunction& f, const std::vector<std::pair<double, double>>& pairs,
                         const TransformOptions& opts) {
    const double eps = f.epsilon;
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigurationError("Holder exponent must lie in (0, 1)");
    require_vanishing(f);
    require_hypothesis(sampled_decay(f, 0, 1.0 + eps), "|f(p)| <= C (1+|p|)^{-1-eps}");
    for (const auto& [a, b] : pairs)
        if (!(std::abs(a - b) <= 1.0 && a != b)) throw ConfigurationError("Holder pairs need 0 < |r - r'| <= 1");

    std::map<double, Complex> values;
    for (const auto& [a, b] : pairs) values[a], values[b];
    std::vector<double> points;
    for (const auto& kv : values) points.push_back(kv.first);
    std::vector<Complex> computed(points.size());
    parallel_for(points.size(), [&](std::size_t i) { computed[i] = transform_direct(f, points[i], opts); });
    for (std::size_t i = 0; i < points.size(); ++i) values[points[i]] = computed[i];

    EnvelopeFit fit;
    fit.check = "holder";
    fit.claimed_slope = 0.0;
    for (const auto& [a, b] : pairs) {
        const double delta = std::abs(a - b);
        fit.grid.push_back(delta);
        fit.values.push_back(std::abs(values[a] - values[b]) / std::pow(delta, eps));
    }
    const double top = *std::max_element(fit.values.begin(), fit.values.end());
    fit.fitted_constant = top;
    RealVector xs, ys;
    for (std::size_t i = 0; i < fit.grid.size(); ++i) {
        if (fit.values[i] <= 1e-12 * top) continue;
        xs.push_back(std::log(fit.grid[i]));
        ys.push_back(std::log(fit.values[i]));
    }
    fit.log_log_slope = slope_of(xs, ys);
    fit.fitted_slope = -fit.log_log_slope;
    fit.pass = std::isfinite(top) && all_finite(fit.values) &&
               (xs.size() < 2 || fit.fitted_slope <= fit.claimed_slope + kLemmaSlopeSlack);
    fit.notes.push_back("eps = " + std::to_string(eps) + (eps > 0.5 ? " (beyond the scattering range)" : ""));
    return fit;
}

EnvelopeFit check_small_r_blowup(const ProfileFunction& f, int k, const RealVector& r_grid,
                                 const TransformOptions& opts) {
    if (k < 1) throw ConfigurationError("small-r check needs k >= 1");
    if (r_grid.size() < 3) throw ConfigurationError("small-r check needs at least 3 grid points");
    for (double r : r_grid)
        if (!(r > 0.0)) throw ConfigurationError("small-r grid must be positive");
    const double eps = f.epsilon;
    require_vanishing(f);
    for (int j = 1; j <= k; ++j)
        require_hypothesis(sampled_decay(f, j, j + eps),
                           "|d^" + std::to_string(j) + " f| <= C (1+|p|)^{-" + std::to_string(j) + "-eps}");

    EnvelopeFit fit;
    fit.check = "small_r_blowup";
    fit.grid = r_grid;
    fit.values.resize(r_grid.size());
    parallel_for(r_grid.size(), [&](std::size_t i) {
        fit.values[i] = std::abs(transform_derivative(f, k - 1, r_grid[i], opts));
    });
    fit.claimed_slope = k - eps;
    const double r_min = *std::min_element(r_grid.begin(), r_grid.end());
    RealVector xs, ys;
    double constant = 0.0;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        constant = std::max(constant, fit.values[i] * std::pow(r_grid[i], fit.claimed_slope));
        if (r_grid[i] <= 10.0 * r_min * (1.0 + 1e-12)) {
            xs.push_back(std::log(r_grid[i]));
            ys.push_back(std::log(std::max(fit.values[i], 1e-300)));
        }
    }
    fit.fitted_constant = constant;
    fit.log_log_slope = slope_of(xs, ys);
    fit.fitted_slope = -fit.log_log_slope;
    fit.pass = std::isfinite(constant) && all_finite(fit.values) &&
               fit.fitted_slope <= fit.claimed_slope + kLemmaSlopeSlack;
    fit.notes.push_back("slope fitted on [" + std::to_string(r_min) + ", " + std::to_string(10.0 * r_min) + "]");
    return fit;
}

namespace {

struct TailFit {
    double slope = 0.0;
    double last_kept = 0.0;
    std::size_t kept = 0;
};

// Slope of log(values) against log(grid) over the last decade of points
// that sit above the quadrature noise floor.
TailFit fit_tail(const RealVector& grid, const RealVector& values, const RealVector& magnitudes,
                 const RealVector& errors) {
    const double top = *std::max_element(magnitudes.begin(), magnitudes.end());
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (magnitudes[i] > std::max(10.0 * errors[i], 1e-15 * top)) kept.push_back(i);
    TailFit out;
    out.kept = kept.size();
    if (kept.size() < 2) return out;
    out.last_kept = grid[kept.back()];
    RealVector xs, ys;
    for (std::size_t i : kept)
        if (grid[i] >= 0.1 * out.last_kept) {
            xs.push_back(std::log(grid[i]));
            ys.push_back(std::log(values[i]));
        }
    if (xs.size() < 3) {
        xs.clear();
        ys.clear();
        for (std::size_t q = kept.size() >= 3 ? kept.size() - 3 : 0; q < kept.size(); ++q) {
            xs.push_back(std::log(grid[kept[q]]));
            ys.push_back(std::log(values[kept[q]]));
        }
    }
    out.slope = slope_of(xs, ys);
    return out;
}

}  // namespace

EnvelopeFit check_tail_decay(const ProfileFunction& f, int k, int ell, const RealVector& r_grid,
                             const TransformOptions& opts) {
    if (k < 0 || ell < 0) throw ConfigurationError("tail check needs k, l >= 0");
    if (r_grid.size() < 3) throw ConfigurationError("tail check needs at least 3 grid points");
    for (double r : r_grid)
        if (!(r >= 1.0 && r <= 100.0)) throw ConfigurationError("tail grid must lie in [1, 100]");
    const double eps = f.epsilon;
    require_vanishing(f);
    for (int j = 1; j <= k + 1; ++j)
        require_hypothesis(sampled_decay(f, j, j + eps),
                           "|d^" + std::to_string(j) + " f| <= C (1+|p|)^{-" + std::to_string(j) + "-eps}");

    EnvelopeFit fit;
    fit.check = "tail_decay";
    fit.grid = r_grid;
    RealVector magnitudes(r_grid.size()), errors(r_grid.size());
    parallel_for(r_grid.size(), [&](std::size_t i) {
        const auto res = transform_derivative_detailed(f, k, r_grid[i], opts);
        magnitudes[i] = std::abs(res.value);
        errors[i] = res.error;
    });
    for (std::size_t i = 0; i < r_grid.size(); ++i) fit.values.push_back(std::pow(r_grid[i], ell) * magnitudes[i]);
    fit.claimed_slope = 0.0;
    fit.fitted_constant = *std::max_element(fit.values.begin(), fit.values.end());
    const auto tail = fit_tail(r_grid, fit.values, magnitudes, errors);
    fit.log_log_slope = tail.slope;
    fit.fitted_slope = tail.kept >= 2 ? tail.slope : -std::numeric_limits<double>::infinity();
    fit.pass = std::isfinite(fit.fitted_constant) && all_finite(fit.values) &&
               fit.fitted_slope <= fit.claimed_slope + kLemmaSlopeSlack;
    if (tail.kept < r_grid.size())
        fit.notes.push_back("values beyond r = " + std::to_string(tail.last_kept) +
                            " are below the quadrature noise floor");
    fit.notes.push_back("l = " + std::to_string(ell) + ", k = " + std::to_string(k));
    return fit;
}

EnvelopeFit check_combined_envelope(const ProfileFunction& f, int k, int ell, const TransformOptions& opts) {
    if (k < 0 || ell < 0) throw ConfigurationError("envelope check needs k, l >= 0");
    const double eps = f.epsilon;
    require_vanishing(f);
    for (int j = 1; j <= k + 1; ++j)
        require_hypothesis(sampled_decay(f, j, j + eps),
                           "|d^" + std::to_string(j) + " f| <= C (1+|p|)^{-" + std::to_string(j) + "-eps}");
    const RealVector grid = log_space(1e-4, 100.0, 49);
    EnvelopeFit fit;
    fit.check = "combined_envelope";
    fit.grid = grid;
    RealVector magnitudes(grid.size()), errors(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const auto res = transform_derivative_detailed(f, k, grid[i], opts);
        magnitudes[i] = std::abs(res.value);
        errors[i] = res.error;
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double bound = std::pow(grid[i], -k - 1.0 + eps) * std::pow(1.0 + grid[i], -ell);
        fit.values.push_back(magnitudes[i] / bound);
    }
    fit.fitted_constant = *std::max_element(fit.values.begin(), fit.values.end());
    RealVector xs, ys;
    for (std::size_t i = 0; i < grid.size() && grid[i] <= 1e-3 * (1.0 + 1e-12); ++i) {
        xs.push_back(std::log(grid[i]));
        ys.push_back(std::log(std::max(fit.values[i], 1e-300)));
    }
    const double left_growth = -slope_of(xs, ys);
    const auto tail = fit_tail(grid, fit.values, magnitudes, errors);
    const double right_growth = tail.kept >= 2 ? tail.slope : -std::numeric_limits<double>::infinity();
    fit.log_log_slope = tail.slope;
    fit.claimed_slope = 0.0;
    fit.fitted_slope = std::max(left_growth, right_growth);
    fit.pass = std::isfinite(fit.fitted_constant) && all_finite(fit.values) &&
               fit.fitted_slope <= fit.claimed_slope + kLemmaSlopeSlack;
    fit.notes.push_back("growth toward r = 0: " + std::to_string(left_growth) +
                        ", toward r = 100: " + std::to_string(right_growth));
    return fit;
}

namespace profiles {

ProfileFunction power_decay(double a, double epsilon) {
    ProfileFunction f;
    f.epsilon = epsilon;
    f.max_order = 16;
    f.description = "(1+p^2)^-" + std::to_string(a);
    f.eval = [a](double p) { return Complex(std::pow(1.0 + p * p, -a), 0.0); };
    f.deriv = [a](int k, double p) {
        const double q = 1.0 + p * p;
        double prev = std::pow(q, -a);
        if (k == 0) return Complex(prev, 0.0);
        double cur = -2.0 * a * p * prev / q;
        for (int m = 1; m < k; ++m) {
            const double next = (-(2.0 * a + 2.0 * m) * p * cur - (m * (m - 1.0) + 2.0 * a * m) * prev) / q;
            prev = cur;
            cur = next;
        }
        return Complex(cur, 0.0);
    };
    return f;
}

ProfileFunction lorentzian(double epsilon) {
    auto f = power_decay(1.0, epsilon);
    f.description = "lorentzian";
    return f;
}

ProfileFunction gaussian(double epsilon) {
    ProfileFunction f;
    f.epsilon = epsilon;
    f.max_order = 16;
    f.description = "gaussian";
    f.eval = [](double p) { return Complex(std::exp(-p * p), 0.0); };
    f.deriv = [](int k, double p) {
        double h0 = 1.0, h1 = 2.0 * p;
        if (k == 0) return Complex(std::exp(-p * p), 0.0);
        for (int m = 1; m < k; ++m) {
            const double h2 = 2.0 * p * h1 - 2.0 * m * h0;
            h0 = h1;
            h1 = h2;
        }
        return Complex((k % 2 ? -1.0 : 1.0) * h1 * std::exp(-p * p), 0.0);
    };
    return f;
}

ProfileFunction signed_lorentzian(double epsilon) {
    const auto base = power_decay(1.0, epsilon);
    ProfileFunction f;
    f.epsilon = epsilon;
    f.max_order = 16;
    f.description = "signed_lorentzian";
    auto sign = [](double p) { return p > 0.0 ? 1.0 : (p < 0.0 ? -1.0 : 0.0); };
    f.eval = [base, sign](double p) { return sign(p) * base.eval(p); };
    f.deriv = [base, sign](int k, double p) { return sign(p) * base.deriv(k, p); };
    return f;
}

ProfileFunction constant(double c, double epsilon) {
    ProfileFunction f;
    f.epsilon = epsilon;
    f.max_order = 16;
    f.description = "constant";
    f.eval = [c](double) { return Complex(c, 0.0); };
    f.deriv = [c](int k, double) { return Complex(k == 0 ? c : 0.0, 0.0); };
    return f;
}

ProfileFunction by_name(const std::string& name, double a, double epsilon) {
    if (name == "lorentzian") return lorentzian(epsilon);
    if (name == "gaussian") return gaussian(epsilon);
    if (name == "power_decay") return power_decay(a, epsilon);
    if (name == "signed_lorentzian") return signed_lorentzian(epsilon);
    if (name == "constant") return constant(1.0, epsilon);
    throw ConfigurationError("unknown profile '" + name + "'");
}

}  // namespace profiles

double quarter_power_transform(double r) {
    const double x = std::abs(r);
    if (x == 0.0) throw DomainError("the transform of (1+p^2)^{-1/4} is singular at r = 0");
    return std::pow(0.5 * x, -0.25) * std::sqrt(pi) * boost::math::cyl_bessel_k(0.25, x) / (pi * std::tgamma(0.25));
}

}  // namespace uhs
