// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "uhs/commands.hpp"
#include "uhs/lemma_lab.hpp"
#include "uhs/solver.hpp"
#include "uhs/stationary_phase.hpp"

using namespace uhs;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

RealVector axis(int dim) {
    RealVector v(static_cast<std::size_t>(dim), 0.0);
    v[0] = 1.0;
    return v;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [violated]");
        pass = pass && ok;
    }
};

Outcome round_trip() {
    Outcome o;
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (auto [d, n] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
        const auto A = gamma_exp(d, n, 0.5);
        const auto f = scattering_from_amplitude(A);
        const RealVector th = axis(d), om = axis(n);
        for (double r : {0.1, 1.0, 10.0}) {
            const Complex ref = A(th, om, r);
            worst = std::max(worst, std::abs(scattering_to_amplitude(f, th, om, r) - ref) / std::abs(ref));
        }
    }
    const double t = seconds_since(t0);
    o.require(worst <= 1e-6, "max rel err " + fmt(worst) + " <= 1e-6");
    o.require(t <= 60.0, "runtime " + fmt(t) + " s <= 60 s");
    return o;
}

Outcome closed_form_value() {
    Outcome o;
    const auto A = gamma_exp(1, 1, 0.5);
    const auto f = closed_form_scattering(A);
    const RealVector e{1.0};
    const double at0 = std::sqrt(pi) / (2 * pi * pi);
    const Complex at1 = std::pow(2 * pi, -2.0) * std::sqrt(pi) *
                        (std::pow(Complex(1, 1), -0.5) + std::pow(Complex(1, -1), -0.5));
    const double e0 = std::abs(f(e, e, 0.0) - at0), e1 = std::abs(f(e, e, 1.0) - at1);
    o.require(e0 <= 1e-6, "|f(0) - sqrt(pi)/(2 pi^2)| = " + fmt(e0));
    o.require(e1 <= 1e-6, "|f(1) - Gamma-integral value| = " + fmt(e1));
    // the quadrature path must agree as well
    const auto rule = radial_rule(2, 0.5, 1e-12, 0.5);
    const double q0 = std::abs(amplitude_to_scattering(A, e, e, 0.0, rule) - at0);
    const double q1 = std::abs(amplitude_to_scattering(A, e, e, 1.0, rule) - at1);
    o.require(std::max(q0, q1) <= 1e-6, "quadrature path err " + fmt(std::max(q0, q1)));
    return o;
}

Outcome compatibility() {
    Outcome o;
    const RealVector r{0.25, 1.0, 4.0};
    double worst = 0.0;
    int presets = 0;
    for (int d = 1; d <= 3; ++d)
        for (int n = 1; n <= 3; ++n) {
            const auto pairs = all_node_pairs(sphere_rule(d, 4), sphere_rule(n, 4));
            AngularPolynomial P;
            P.terms.push_back({1.0, {}, {}});
            std::vector<int> odd(static_cast<std::size_t>(d), 0);
            odd[0] = 1;
            P.terms.push_back({0.6, odd, {}});
            for (const auto& A : {gamma_exp(d, n, 0.5), gamma_exp(d, n, 0.5, P)}) {
                const auto rep = check_compatibility(closed_form_scattering(A), r, pairs);
                worst = std::max(worst, rep.max_deviation);
                ++presets;
                if (!rep.pass) o.require(false, "gamma_exp d=" + std::to_string(d) + " n=" + std::to_string(n));
            }
        }
    // numerically transformed, non-separable-in-closed-form preset
    {
        const auto A = angular_bump(2, 1, 0.5, RealVector{0.6, 0.8}, RealVector{1.0}, 1.2);
        const auto pairs = all_node_pairs(sphere_rule(2, 4), sphere_rule(1, 2));
        const auto rep = check_compatibility(scattering_from_amplitude(A), r, pairs);
        worst = std::max(worst, rep.max_deviation);
        ++presets;
        if (!rep.pass) o.require(false, "angular_bump d=2 n=1");
    }
    o.require(worst <= 1e-6, std::to_string(presets) + " presets, max deviation " + fmt(worst) + " <= 1e-6");

    const auto A = gamma_exp(2, 1, 0.5);
    const auto pairs = all_node_pairs(sphere_rule(2, 4), sphere_rule(1, 2));
    const auto bad = check_compatibility(closed_form_scattering(A, -1.0), r, pairs);
    o.require(!bad.pass, "sign-flipped control flagged (deviation " + fmt(bad.max_deviation) + ")");
    return o;
}

Outcome pde_residual_order() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto A = gamma_exp(2, 1, 0.5);
    const RealVector h{0.04, 0.02, 0.01};
    const auto points = default_points(2, 1);
    double radius = 0.0;
    for (const auto& [x, y] : points) radius = std::max({radius, norm(x), norm(y)});
    const auto u = make_solution_field(A, radius + 0.08);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto st = residual_study(u, points[i].first, points[i].second, h);
        const double last = std::abs(st.ladder.back().residual);
        const std::string tag = "point " + std::to_string(i);
        o.require(st.steps_used >= 1 && std::abs(st.order - 2.0) <= 0.2, tag + " order " + fmt(st.order));
        o.require(last <= 1e-3 * std::abs(st.u), tag + " |res(0.01)|/|u| " + fmt(last / std::abs(st.u)));
    }
    const double t = seconds_since(t0);
    o.require(t <= 300.0, "runtime " + fmt(t) + " s");
    return o;
}

Outcome asymptotic_rate() {
    Outcome o;
    const auto t0 = Clock::now();
    {
        const auto A = gamma_exp(1, 1, 0.5);
        const auto f = closed_form_scattering(A);
        const RealVector s{8, 16, 32, 64, 128, 256, 512}, e{1.0};
        const auto u = make_solution_field(A, 514.0);
        for (double p : {0.0, 1.0}) {
            const Complex ref = f(e, e, p);
            const auto ex = extract_scattering(u, e, e, p, s, ref);
            const double rel = std::abs(ex.f_est - ref) / std::abs(ref);
            o.require(ex.rate <= -0.4, "d=n=1 p=" + fmt(p) + " slope " + fmt(ex.rate));
            o.require(rel <= 1e-2, "d=n=1 p=" + fmt(p) + " endpoint rel err " + fmt(rel) + " <= 1e-2");
        }
    }
    {
        const auto A = gamma_exp(2, 1, 0.5);
        const auto f = closed_form_scattering(A);
        const RealVector s{8, 16, 32, 64}, th{1.0, 0.0}, om{1.0};
        const auto u = make_solution_field(A, 66.0);
        for (double p : {0.0, 1.0}) {
            const Complex ref = f(th, om, p);
            const auto ex = extract_scattering(u, th, om, p, s, ref);
            const double rel = std::abs(ex.f_est - ref) / std::abs(ref);
            o.require(rel <= 5e-2, "d=2 n=1 p=" + fmt(p) + " endpoint rel err " + fmt(rel) + " <= 5e-2");
        }
    }
    const double t = seconds_since(t0);
    o.require(t <= 600.0, "runtime " + fmt(t) + " s");
    return o;
}

Outcome stationary_remainder() {
    Outcome o;
    const auto t0 = Clock::now();
    const RealVector s{16, 32, 64, 128, 256};
    const auto a = remainder_scan(gamma_exp(2, 1, 0.5), RealVector{1.0, 0.0}, RealVector{1.0}, 0.0, 1.0, s);
    o.require(a.residual_slope <= -0.8, "d=2 n=1 slope " + fmt(a.residual_slope) + " <= -0.8");
    const auto b = remainder_scan(gamma_exp(2, 2, 0.5), RealVector{1.0, 0.0}, RealVector{0.0, 1.0}, 0.0, 1.0, s);
    o.require(b.residual_slope <= -1.3, "d=n=2 slope " + fmt(b.residual_slope) + " <= -1.3");
    const double t = seconds_since(t0);
    o.require(t <= 300.0, "runtime " + fmt(t) + " s");
    return o;
}

template <class F>
bool rejected(F&& body) {
    try {
        body();
    } catch (const RejectedInput&) {
        return true;
    }
    return false;
}

Outcome lemma_lab() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto f = profiles::power_decay(0.25, 0.5);
    const auto small = log_space(1e-4, 1.0, 13);
    const auto k1 = check_small_r_blowup(f, 1, small);
    const auto k2 = check_small_r_blowup(f, 2, small);
    o.require(k1.pass && std::abs(k1.log_log_slope + 0.5) <= 0.05, "k=1 slope " + fmt(k1.log_log_slope));
    o.require(k2.pass && std::abs(k2.log_log_slope + 1.5) <= 0.05, "k=2 slope " + fmt(k2.log_log_slope));
    const double v50 = std::abs(transform_derivative(f, 0, 50.0));
    o.require(v50 < 1e-8, "|V(50)| " + fmt(v50));
    const auto tail = check_tail_decay(f, 0, 6, log_space(1.0, 100.0, 21));
    o.require(tail.pass && std::isfinite(tail.fitted_constant), "l=6 envelope " + fmt(tail.fitted_constant));

    // designated negative controls
    const auto jump = profiles::signed_lorentzian();
    bool controls = true;
    controls = controls && rejected([] { check_holder(profiles::constant(), default_holder_pairs()); });
    controls = controls && rejected([] { check_holder(profiles::power_decay(0.25, 0.9), default_holder_pairs()); });
    controls = controls && rejected([&] { check_small_r_blowup(profiles::constant(), 1, small); });
    controls = controls && !check_tail_decay(jump, 0, 2, log_space(1.0, 100.0, 21)).pass;
    controls = controls && !check_combined_envelope(jump, 0, 2).pass;
    ProfileFunction one;
    one.eval = [](double) { return Complex(1.0); };
    one.deriv = [](int k, double) { return Complex(k == 0 ? 1.0 : 0.0); };
    controls = controls && !check_profile_conditions(one, 2).pass;
    ProfileFunction wave;
    wave.eval = [](double p) { return Complex(std::sin(p)); };
    wave.deriv = [](int k, double p) { return Complex(std::sin(p + 0.5 * pi * k)); };
    controls = controls && !check_profile_conditions(wave, 2).pass;
    controls = controls && !check_amplitude_conditions(gamma_without_tail(1, 1, 0.5)).pass;
    o.require(controls, "negative controls fail");
    const double t = seconds_since(t0);
    o.require(t <= 120.0, "runtime " + fmt(t) + " s");
    return o;
}

Outcome hilbert() {
    Outcome o;
    double worst = 0.0;
    for (const auto& f : {profiles::lorentzian(), profiles::power_decay(0.25, 0.5)})
        for (int p = -5; p <= 5; ++p) {
            const double diff = std::abs(hilbert_power(f, 1, p) - hilbert_pv_oracle(f, p, 1e6).value);
            worst = std::max(worst, diff);
        }
    o.require(worst <= 1e-3, "max |multiplier - pv| " + fmt(worst));
    bool exact = true;
    const auto f = profiles::power_decay(0.25, 0.5);
    for (double p : {-5.0, -0.5, 0.0, 2.0, 5.0})
        exact = exact && hilbert_power(f, 2, p) == -f(p) && hilbert_power(f, 0, p) == f(p);
    o.require(exact, "H^2 = -I and H^0 = I bitwise");
    return o;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(UHS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    Outcome o;
    const auto dir = fs::temp_directory_path() / "uhs_acceptance";
    fs::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> runs{
        {"validate", "--d 2"},   {"roundtrip", ""},      {"residual", "--d 2"}, {"asymptotics", ""},
        {"stationary", "--d 2"}, {"lemmas", ""},         {"eval", "--d 2 --n 2"}};
    for (const auto& [cmd, extra] : runs) {
        std::string first, second;
        for (int k = 0; k < 2; ++k) {
            const fs::path base = dir / (cmd + "_" + std::to_string(k));
            fs::remove(base.string() + ".csv");
            run_cli(cmd + " " + extra + " --out " + base.string());
            (k == 0 ? first : second) = slurp(base.string() + ".csv");
        }
        o.require(!first.empty() && first == second, cmd + " identical");
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
        {"round-trip identity", round_trip},
        {"closed-form scattering value", closed_form_value},
        {"compatibility", compatibility},
        {"PDE residual", pde_residual_order},
        {"asymptotic rate", asymptotic_rate},
        {"stationary-phase remainder", stationary_remainder},
        {"lemma lab", lemma_lab},
        {"Hilbert cross-validation", hilbert},
        {"determinism", determinism}};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        failures += out.pass ? 0 : 1;
        std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << out.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
