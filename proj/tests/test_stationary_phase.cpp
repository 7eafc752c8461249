#include <doctest.h>

#include <cmath>

#include "uhs/stationary_phase.hpp"

using namespace uhs;

TEST_CASE("critical points and Hessian phases") {
    const RealVector th{0.6, 0.8}, om{1.0};
    const auto cp = critical_points(th, om);
    CHECK(cp.points[0].zeta == th);
    CHECK(cp.points[1].zeta == RealVector{-0.6, -0.8});
    CHECK(cp.points[2].phase_value == -2.0);
    CHECK(cp.points[3].phase_value == 2.0);
    CHECK(cp.points[3].sigma == RealVector{-1.0});
    CHECK(std::abs(cp.phase_forward - std::exp(-I * pi / 4.0)) < 1e-15);
    CHECK(cp.phase_backward == std::conj(cp.phase_forward));
    CHECK(cp.signature_forward == -1);
}

TEST_CASE("d = n = 1 inner integral is the four-term sum") {
    const auto A = gamma_exp(1, 1, 0.5);
    const RealVector th{1.0}, om{-1.0};
    const double r = 0.7, s = 3.0, p = 0.4;
    Complex expect = 0.0;
    for (double z : {1.0, -1.0})
        for (double sg : {1.0, -1.0})
            expect += std::exp(I * (r * s * (th[0] * z - om[0] * sg))) * std::exp(-I * r * p * om[0] * sg) *
                      std::exp(-r) / std::sqrt(r);
    CHECK(std::abs(inner_integral(A, th, om, p, r, s, 2) - expect) < 1e-15);
}

TEST_CASE("non-oscillatory inner integral") {
    const auto A = gamma_exp(2, 1, 0.5);
    const RealVector th{1.0, 0.0}, om{1.0};
    // 2 * 2 pi * 1^{-1/2} e^{-1}
    CHECK(std::abs(inner_integral(A, th, om, 0.0, 1.0, 0.0, 16) - 4.0 * pi / std::exp(1.0)) < 1e-13);
}

TEST_CASE("inner integral is converged at the default budget") {
    const auto A = gamma_exp(2, 1, 0.5);
    const RealVector th{1.0, 0.0}, om{1.0};
    const int res = min_inner_resolution(1.0, 40.0);
    const Complex a = inner_integral(A, th, om, 0.0, 1.0, 40.0, res);
    const Complex b = inner_integral(A, th, om, 0.0, 1.0, 40.0, 2 * res);
    CHECK(std::abs(a - b) < 1e-9);
    CHECK_THROWS_AS(inner_integral(A, th, om, 0.0, 1.0, 40.0, res - 2), ConfigurationError);
    CHECK_THROWS_AS(inner_integral(A, th, om, 0.0, 0.0, 40.0, res), DomainError);
}

TEST_CASE("leading terms for d = n collapse to a cosine") {
    const auto A = gamma_exp(2, 2, 0.5);
    const RealVector th{1.0, 0.0}, om{0.0, 1.0};
    const double r = 1.3, s = 20.0, p = 0.6;
    const Complex expect = (2 * pi / (r * s)) * 2.0 * std::cos(r * p) * A(th, om, r);
    CHECK(std::abs(leading_terms(A, th, om, p, r, s) - expect) < 1e-15);
}

TEST_CASE("remainder after the cross terms decays faster than claimed") {
    const auto A = gamma_exp(2, 1, 0.5);
    const RealVector th{1.0, 0.0}, om{1.0};
    const RealVector s{16, 32, 64, 128, 256};
    const auto cmp = remainder_scan(A, th, om, 0.0, 1.0, s);
    CHECK_FALSE(cmp.vacuous);
    CHECK(cmp.residual_slope <= -0.8);
    CHECK(claimed_remainder_slope(2, 1) == -1.0);
    CHECK(claimed_remainder_slope(2, 2) == -1.5);
    // stationary phase at the cross points gives unimodular constants
    for (const auto& c : cmp.cross_fitted) CHECK(std::abs(c) == doctest::Approx(1.0).epsilon(0.05));

    const auto flat = remainder_scan(gamma_exp(1, 1, 0.5), RealVector{1.0}, RealVector{1.0}, 0.0, 1.0, s);
    CHECK(flat.vacuous);
    CHECK_THROWS_AS(remainder_scan(A, th, om, 0.0, 1.0, RealVector{16, 32, 64}), ConfigurationError);
}
