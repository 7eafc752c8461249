#include <doctest.h>

#include <cmath>

#include "uhs/oscillatory.hpp"

using namespace uhs;

TEST_CASE("Wynn epsilon accelerates the alternating harmonic series") {
    std::vector<Complex> partial;
    Complex s = 0.0;
    for (int k = 1; k <= 14; ++k) {
        s += (k % 2 ? 1.0 : -1.0) / k;
        partial.push_back(s);
    }
    CHECK(std::abs(partial.back() - std::log(2.0)) > 1e-2);
    CHECK(std::abs(wynn_epsilon(partial) - std::log(2.0)) < 1e-10);
}

TEST_CASE("panel and half-line integrals") {
    const auto panel = integrate_panel([](double x) { return Complex(std::sin(x)); }, 0.0, pi);
    CHECK(std::abs(panel.value - 2.0) < 1e-13);
    const auto half = integrate_half_line([](double x) { return Complex(1.0 / (1.0 + x * x)); });
    CHECK(std::abs(half.value - pi / 2) < 1e-10);
}

TEST_CASE("Fourier half-line integral of a slowly decaying function") {
    // mpmath quadosc of e^{2ip} (1+p)^{-1/2} over [0, inf)
    const auto res = fourier_half_line([](double p) { return Complex(1.0 / std::sqrt(1.0 + p)); }, 2.0);
    CHECK(std::abs(res.value - Complex(0.08554329064984457, 0.45460174949891116)) < 1e-9);
    CHECK_THROWS_AS(fourier_half_line([](double) { return Complex(1.0); }, 0.0), DomainError);
}

TEST_CASE("real-line transform keeps the jump at the origin") {
    // g = sgn(p) e^{-|p|}: \int e^{irp} g dp = 2 i r / (1 + r^2)
    DerivativeTable g = [](int k, double p) {
        const double s = p > 0 ? 1.0 : -1.0;
        const double sign_k = (k % 2 == 0) ? 1.0 : -1.0;
        return Complex(s * (p > 0 ? sign_k : 1.0) * std::exp(-std::abs(p)));
    };
    for (int parts : {0, 1, 2}) {
        const auto res = fourier_real_line(g, 1.5, parts);
        CHECK(std::abs(res.value - Complex(0.0, 3.0 / 3.25)) < 1e-9);
    }
    CHECK_THROWS_AS(fourier_real_line(g, 0.0, 1), DomainError);
    CHECK_THROWS_AS(fourier_real_line(g, 1.0, -1), ConfigurationError);
}
