#include <doctest.h>

#include <cmath>

#include "uhs/geometry.hpp"

using namespace uhs;

TEST_CASE("S^0 is two unit-weight points") {
    for (int res : {1, 4, 17}) {
        const auto s = sphere_rule(1, res);
        REQUIRE(s.size() == 2);
        CHECK(s.node(0)[0] == 1.0);
        CHECK(s.node(1)[0] == -1.0);
        CHECK(s.weights[0] == 1.0);
        CHECK(s.weights[1] == 1.0);
        CHECK(s.antipode[0] == 1);
    }
}

TEST_CASE("circle trapezoid weights") {
    const auto s = sphere_rule(2, 8);
    REQUIRE(s.size() == 8);
    double total = 0.0;
    for (double w : s.weights) {
        CHECK(w == doctest::Approx(pi / 4).epsilon(1e-15));
        total += w;
    }
    CHECK(total == doctest::Approx(2 * pi).epsilon(1e-15));
}

TEST_CASE("circle integral of a plane wave is 2 pi J0") {
    const auto s = sphere_rule(2, 32);
    const double x[2] = {1.8, 2.4};  // |x| = 3
    Complex acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) acc += s.weights[i] * std::exp(I * dot(x, s.node(i)));
    // mpmath: 2 pi J0(3)
    CHECK(std::abs(acc - Complex(-1.6339546221431566, 0.0)) < 1e-10);
}

TEST_CASE("two-sphere rule integrates low-degree polynomials and is antipodal") {
    const auto s = sphere_rule(3, 12);
    double total = 0.0, z2 = 0.0, xz = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto v = s.node(i);
        total += s.weights[i];
        z2 += s.weights[i] * v[2] * v[2];
        xz += s.weights[i] * v[0] * v[2];
        CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-14));
        const auto w = s.node(s.antipode[i]);
        for (int c = 0; c < 3; ++c) CHECK(w[c] == doctest::Approx(-v[c]).epsilon(1e-14));
    }
    CHECK(total == doctest::Approx(4 * pi).epsilon(1e-13));
    CHECK(z2 == doctest::Approx(4 * pi / 3).epsilon(1e-13));
    CHECK(std::abs(xz) < 1e-13);
    CHECK(sphere_measure(3) == doctest::Approx(4 * pi));
}

TEST_CASE("sphere rule errors") {
    CHECK_THROWS_AS(sphere_rule(4, 8), DimensionError);
    CHECK_THROWS_AS(sphere_rule(0, 8), DimensionError);
    CHECK_THROWS_AS(sphere_rule(2, 0), ConfigurationError);
    CHECK_THROWS_AS(sphere_rule(2, 7), ConfigurationError);
}

TEST_CASE("Gauss-Legendre nodes") {
    const auto g = gauss_legendre(7);
    double w = 0.0, x4 = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        w += g.weights[i];
        x4 += g.weights[i] * std::pow(g.nodes[i], 4);
        CHECK(g.nodes[i] == -g.nodes[g.nodes.size() - 1 - i]);
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(x4 == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("radial rule reproduces Gamma integrals") {
    const auto r2 = radial_rule(2, 0.5, 1e-10, 0.0);
    const Complex g12 = integrate(r2, [](double r) { return Complex(std::exp(-r) / std::sqrt(r)); });
    CHECK(std::abs(g12 - std::sqrt(pi)) < 1e-10);

    const auto r4 = radial_rule(4, 0.5, 1e-10, 0.0);
    const Complex g32 = integrate(r4, [](double r) { return Complex(std::sqrt(r) * std::exp(-r)); });
    CHECK(std::abs(g32 - 0.5 * std::sqrt(pi)) < 1e-10);
}

TEST_CASE("radial rule resolves oscillation at twice s_scale") {
    const auto rule = radial_rule(2, 0.5, 1e-10, 32.0);
    CHECK(rule.max_spacing() <= radial_spacing_cap(32.0) * (1 + 1e-12));
    const Complex v = integrate(rule, [](double r) { return Complex(std::cos(64 * r) * std::exp(-r) / std::sqrt(r)); });
    // mpmath: Re Gamma(1/2) (1 - 64i)^{-1/2}
    CHECK(std::abs(v.real() - 0.15787367953998369) < 1e-8);
    CHECK(std::abs(v.imag()) < 1e-15);
}

TEST_CASE("streamed radial nodes match the stored rule") {
    const auto rule = radial_rule(3, 0.5, 1e-12, 4.0);
    std::size_t count = 0;
    double max_diff = 0.0;
    for_each_radial_node(0.5, 1e-12, 4.0, [&](double r, double w) {
        if (count < rule.size()) {
            max_diff = std::max(max_diff, std::abs(r - rule.nodes[count]));
            max_diff = std::max(max_diff, std::abs(w - rule.weights[count]));
        }
        ++count;
    });
    CHECK(count >= rule.size());
    CHECK(max_diff == 0.0);
}

TEST_CASE("radial rule errors") {
    CHECK_THROWS_AS(radial_rule(2, 0.0, 1e-10, 0.0), ConfigurationError);
    CHECK_THROWS_AS(radial_rule(2, 0.7, 1e-10, 0.0), ConfigurationError);
    CHECK_THROWS_AS(radial_rule(2, 0.5, 0.0, 0.0), ConfigurationError);
    CHECK_THROWS_AS(radial_rule(2, 0.5, 1e-10, -1.0), ConfigurationError);
    CHECK_THROWS_AS(radial_rule(1, 0.5, 1e-10, 0.0), ConfigurationError);
}
