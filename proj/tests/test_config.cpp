#include <doctest.h>

#include "uhs/commands.hpp"
#include "uhs/config.hpp"

using namespace uhs;

TEST_CASE("defaults parse from an empty document") {
    const auto cfg = parse_config(Json::object());
    CHECK(cfg.d == 1);
    CHECK(cfg.n == 1);
    CHECK(cfg.epsilon == 0.5);
    CHECK(cfg.preset == "gamma_exp");
    CHECK(cfg.s_ladder.front() == 8.0);
    CHECK(cfg.s_ladder.back() == 512.0);
    CHECK(config_theta(cfg) == RealVector{1.0});
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config(Json{{"d", 4}}), DimensionError);
    CHECK_THROWS_AS(parse_config(Json{{"n", 0}}), DimensionError);
    CHECK_THROWS_AS(parse_config(Json{{"epsilon", 0.6}}), ConfigurationError);
    CHECK_THROWS_AS(parse_config(Json{{"s_ladder", {8, 4, 16}}}), ConfigurationError);
    CHECK_THROWS_AS(parse_config(Json{{"colour", "blue"}}), ConfigurationError);
    CHECK_THROWS_AS(parse_config(Json{{"d", "two"}}), ConfigurationError);
    CHECK_THROWS_AS(parse_config(Json{{"quadrature", {{"bogus", 1}}}}), ConfigurationError);
    CHECK_THROWS_AS(parse_config(Json{{"output", {{"format", "xml"}}}}), ConfigurationError);
    CHECK_THROWS_AS(parse_config(Json{{"d", 2}, {"theta", {1.0}}}), ConfigurationError);
    CHECK_THROWS_AS(run_command("nonsense", parse_config(Json::object())), ConfigurationError);
}

TEST_CASE("config echo round trips") {
    Json doc{{"d", 2}, {"n", 1}, {"preset", "angular_bump"}, {"preset_params", {{"width", 0.7}}}, {"r", 2.0}};
    const auto cfg = parse_config(doc);
    const auto again = parse_config(config_echo(cfg));
    CHECK(config_echo(again) == config_echo(cfg));
    const auto A = build_amplitude(cfg);
    CHECK(A.d == 2);
    CHECK(A.gamma_radial);
}

TEST_CASE("angular polynomial presets") {
    Json doc{{"d", 2},
             {"preset_params", {{"terms", Json::array({Json{{"coefficient", 2.0}, {"zeta", {1, 0}}, {"sigma", {1}}}})}}}};
    const auto A = build_amplitude(parse_config(doc));
    const RealVector z{0.6, 0.8}, s{-1.0};
    CHECK(std::abs(A(z, s, 1.0) - 2.0 * 0.6 * -1.0 * std::exp(-1.0)) < 1e-15);
}

TEST_CASE("default evaluation points are fixed") {
    const auto a = default_points(2, 1), b = default_points(2, 1);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a[i].first == b[i].first);
        CHECK(a[i].second == b[i].second);
        for (double c : a[i].first) CHECK(std::abs(c) <= 0.8);
    }
}

TEST_CASE("number and CSV formatting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
    CsvTable t({"x", "re", "im", "label"});
    t.row().add(1.5).add(Complex(0.25, -2.0)).add(std::string("a"));
    CHECK(t.rows() == 1);
    CHECK(t.str() == "x,re,im,label\n1.5,0.25,-2,a\n");
}

TEST_CASE("reports carry command, config and pass") {
    const auto cfg = parse_config(Json{{"lemma", {{"k_max", 1}, {"ell_max", 1}}}});
    const auto out = cmd_eval(cfg);
    const auto rep = out.report(cfg);
    CHECK(rep.at("command") == "eval");
    CHECK(rep.contains("config_echo"));
    CHECK(rep.contains("results"));
    CHECK(rep.at("pass").is_boolean());
}

TEST_CASE("JSON of complex values and non-finite numbers") {
    CHECK(to_json(Complex(1.0, -2.0)) == Json::array({1.0, -2.0}));
    EnvelopeFit fit;
    fit.check = "x";
    fit.fitted_slope = std::numeric_limits<double>::infinity();
    const auto j = to_json(fit);
    CHECK(j.at("fitted_slope").is_string());
}
