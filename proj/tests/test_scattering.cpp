#include <doctest.h>

#include <cmath>

#include "uhs/scattering.hpp"

using namespace uhs;

namespace {

const RealVector e1_1{1.0};
const RealVector e1_2{1.0, 0.0};

Amplitude zero_amplitude(int d, int n) {
    const auto g = gamma_exp(d, n, 0.5);
    return linear_combination(0.0, g, 0.0, g);
}

}  // namespace

TEST_CASE("constants") {
    CHECK(scattering_constant(2) == doctest::Approx(std::pow(2 * pi, -2.0)));
    CHECK(std::abs(positive_branch_phase(2, 1) - std::exp(-I * pi / 4.0)) < 1e-15);
    CHECK(positive_branch_phase(2, 2) == Complex(1.0));
}

TEST_CASE("extend_amplitude") {
    const auto g = gamma_exp(2, 1, 0.5);
    const RealVector z{0.6, 0.8}, s{1.0};
    CHECK(extend_amplitude(g, z, s, 2.0) == g(z, s, 2.0));
    CHECK(extend_amplitude(g, z, s, -2.0) == g(z, s, 2.0));

    Amplitude odd;
    odd.d = 2;
    odd.n = 1;
    odd.eval = [](std::span<const double> zeta, std::span<const double>, double r) {
        return Complex(zeta[1] / std::sqrt(r) * std::exp(-r));
    };
    CHECK(std::abs(extend_amplitude(odd, z, s, -3.0) - (-0.8 / std::sqrt(3.0) * std::exp(-3.0))) < 1e-16);
    CHECK_THROWS_AS(extend_amplitude(odd, z, s, 0.0), DomainError);
}

TEST_CASE("closed-form scattering data for d = n = 1") {
    const auto f = closed_form_scattering(gamma_exp(1, 1, 0.5));
    CHECK(std::abs(f(e1_1, e1_1, 0.0) - 0.089793561062583281) < 1e-14);
    CHECK(std::abs(f(e1_1, e1_1, 1.0) - 0.069759449107259422) < 1e-14);
}

TEST_CASE("closed-form scattering data for d = 2, n = 1") {
    const auto f = closed_form_scattering(gamma_exp(2, 1, 0.5));
    CHECK(std::abs(f(e1_2, e1_1, 0.7) - 0.014973467524071305) < 1e-14);
}

TEST_CASE("numerical transform agrees with the closed form") {
    AngularPolynomial P;
    P.terms.push_back({1.0, {}, {}});
    P.terms.push_back({0.5, {1, 0}, {0, 1}});
    const auto A = gamma_exp(2, 2, 0.5, P);
    const auto exact = closed_form_scattering(A);
    const auto numeric = scattering_from_amplitude(A);
    const RealVector theta{0.6, -0.8}, omega{0.0, 1.0};
    for (double p : {-30.0, -1.0, 0.0, 2.5, 400.0}) {
        const Complex a = exact(theta, omega, p), b = numeric(theta, omega, p);
        CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
    }
    const auto rule = radial_rule(4, 0.5, 1e-12, 2.0);
    CHECK_THROWS_AS(amplitude_to_scattering(A, theta, omega, 10.0, rule), ConfigurationError);
}

TEST_CASE("derivatives of scattering data") {
    const auto A = gamma_exp(1, 2, 0.5);
    const auto exact = closed_form_scattering(A);
    const auto rule = radial_rule(3, 0.5, 1e-12, 2.0);
    const RealVector omega{0.0, 1.0};
    const auto prof = exact.profile_of(e1_1, omega);
    for (int k : {1, 2}) {
        const Complex num = amplitude_to_scattering_derivative(A, e1_1, omega, 0.8, k, rule);
        CHECK(std::abs(num - prof.derivative(k, 0.8)) < 1e-10);
    }
}

TEST_CASE("zero amplitude and zero data") {
    const auto Z = zero_amplitude(1, 1);
    const auto rule = radial_rule(2, 0.5, 1e-12, 1.0);
    CHECK(amplitude_to_scattering(Z, e1_1, e1_1, 0.5, rule) == Complex(0.0));
    const auto f = closed_form_scattering(Z);
    CHECK(scattering_to_amplitude(f, e1_1, e1_1, 1.0) == Complex(0.0));
}

TEST_CASE("scattering data back to the amplitude") {
    for (auto [d, n] : {std::pair{1, 1}, std::pair{2, 1}}) {
        const auto A = gamma_exp(d, n, 0.5);
        const auto f = closed_form_scattering(A);
        const RealVector zeta = d == 1 ? e1_1 : e1_2;
        for (double r : {0.1, 1.0, 10.0}) {
            const Complex back = scattering_to_amplitude(f, zeta, e1_1, r);
            const Complex ref = A(zeta, e1_1, r);
            CHECK(std::abs(back - ref) <= 1e-6 * std::abs(ref));
        }
        CHECK_THROWS_AS(scattering_to_amplitude(f, zeta, e1_1, 0.0), DomainError);
    }
}

TEST_CASE("compatibility holds for data from amplitudes and fails for the flipped branch") {
    AngularPolynomial P;
    P.terms.push_back({1.0, {}, {}});
    P.terms.push_back({0.7, {1, 0}, {}});
    const auto A = gamma_exp(2, 1, 0.5, P);
    const auto pairs = all_node_pairs(sphere_rule(2, 4), sphere_rule(1, 2));
    CHECK(pairs.size() == 8);
    const RealVector r{0.25, 1.0, 4.0};
    const auto good = check_compatibility(closed_form_scattering(A), r, pairs);
    CHECK(good.pass);
    CHECK(good.max_deviation < 1e-8);

    const auto flipped = closed_form_scattering(A, -1.0);
    const auto bad = check_compatibility(flipped, RealVector{1.0}, pairs);
    CHECK_FALSE(bad.pass);
    // flipping one branch of a compatible pair doubles the mismatch
    const Complex fc = inverse_fourier_profile(closed_form_scattering(A).profile_of(bad.worst_pair.theta,
                                                                                     bad.worst_pair.omega),
                                               -bad.worst_r);
    CHECK(bad.max_deviation == doctest::Approx(2.0 * std::abs(fc)).epsilon(1e-6));
}

TEST_CASE("profile regularity checks") {
    const auto f = closed_form_scattering(gamma_exp(1, 1, 0.5));
    CHECK(check_profile_conditions(f.profile_of(e1_1, e1_1), 2).pass);

    ProfileFunction one;
    one.eval = [](double) { return Complex(1.0); };
    one.deriv = [](int k, double) { return Complex(k == 0 ? 1.0 : 0.0); };
    const auto rep = check_profile_conditions(one, 2);
    CHECK_FALSE(rep.pass);
    bool vanishing_failed = false;
    for (const auto& e : rep.entries)
        if (e.check.find("vanish") != std::string::npos && !e.pass) vanishing_failed = true;
    CHECK(vanishing_failed);

    ProfileFunction wave;
    wave.eval = [](double p) { return Complex(std::sin(p)); };
    wave.deriv = [](int k, double p) { return Complex(std::sin(p + 0.5 * pi * k)); };
    CHECK_FALSE(check_profile_conditions(wave, 2).pass);
}

TEST_CASE("scattering conditions over node pairs") {
    const auto f = closed_form_scattering(gamma_exp(2, 1, 0.5));
    const auto pairs = all_node_pairs(sphere_rule(2, 4), sphere_rule(1, 2));
    CHECK(check_scattering_conditions(f, 2, pairs).pass);
}

TEST_CASE("amplitude conditions") {
    CHECK(check_amplitude_conditions(gamma_exp(1, 1, 0.5)).pass);
    CHECK(check_amplitude_conditions(gamma_exp(2, 1, 0.5)).pass);
    const auto no_tail = check_amplitude_conditions(gamma_without_tail(1, 1, 0.5));
    CHECK_FALSE(no_tail.pass);
    for (const auto& e : no_tail.entries)
        if (e.ell >= 1) CHECK_FALSE(e.pass);

    Amplitude bounded;
    bounded.d = 1;
    bounded.n = 1;
    bounded.eval = [](std::span<const double>, std::span<const double>, double r) { return Complex(std::exp(-r)); };
    CHECK(check_amplitude_conditions(bounded).pass);
}

TEST_CASE("presets") {
    const RealVector z{0.0, 1.0};
    CHECK(angular_cap(z, z, 0.5) == doctest::Approx(1.0));
    CHECK(angular_cap(z, RealVector{0.0, -1.0}, 0.5) == 0.0);
    const auto bump = angular_bump(2, 1, 0.5, z, e1_1);
    CHECK(bump.gamma_radial);
    CHECK(std::abs(bump(z, e1_1, 1.0) - std::exp(-1.0)) < 1e-15);
    CHECK_THROWS_AS(gamma_exp(4, 1, 0.5), DimensionError);
    CHECK_THROWS_AS(gamma_exp(1, 1, 0.75), ConfigurationError);
    CHECK_THROWS_AS(linear_combination(1.0, gamma_exp(1, 1, 0.5), 1.0, gamma_exp(2, 1, 0.5)), ConfigurationError);

    const auto tab = tabulated_radial(1, 1, 0.5, {0.5, 1.0, 2.0}, {Complex(2.0), Complex(1.0), Complex(0.5)});
    CHECK(std::abs(tab(e1_1, e1_1, 1.0) - 1.0) < 1e-15);
    CHECK(tab(e1_1, e1_1, 3.0) == Complex(0.0));
}
