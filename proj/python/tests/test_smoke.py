import cmath
import math

import pytest

import uhs


def test_sphere_rules():
    s = uhs.sphere_rule(2, 8)
    assert len(s) == 8
    assert sum(s.weights) == pytest.approx(2 * math.pi)
    assert s.node(0) == pytest.approx([1.0, 0.0])
    assert uhs.sphere_measure(3) == pytest.approx(4 * math.pi)
    with pytest.raises(uhs.DimensionError):
        uhs.sphere_rule(4, 8)


def test_radial_rule_gamma_integral():
    rule = uhs.radial_rule(2, 0.5, 1e-10, 0.0)
    total = sum(w * math.exp(-r) / math.sqrt(r) for r, w in zip(rule.nodes, rule.weights))
    assert total == pytest.approx(math.sqrt(math.pi), abs=1e-10)


def test_closed_form_scattering_value():
    f = uhs.closed_form_scattering(uhs.gamma_exp(1, 1))
    assert abs(f([1.0], [1.0], 0.0) - math.sqrt(math.pi) / (2 * math.pi**2)) < 1e-12
    expected = (2 * math.pi) ** -2 * math.sqrt(math.pi) * ((1 + 1j) ** -0.5 + (1 - 1j) ** -0.5)
    assert abs(f([1.0], [1.0], 1.0) - expected) < 1e-12


def test_numerical_matches_closed_form_and_round_trips():
    A = uhs.gamma_exp(2, 1, 0.5, [(1.0, [], []), (0.5, [1, 0], [1])])
    exact = uhs.closed_form_scattering(A)
    numeric = uhs.scattering_from_amplitude(A)
    theta, omega = [0.6, 0.8], [1.0]
    for p in (-2.0, 0.0, 3.0):
        assert abs(exact(theta, omega, p) - numeric(theta, omega, p)) < 1e-10
    back = uhs.scattering_to_amplitude(exact, theta, omega, 1.0)
    assert abs(back - A(theta, omega, 1.0)) < 1e-6 * abs(A(theta, omega, 1.0))


def test_compatibility_and_negative_control():
    A = uhs.gamma_exp(2, 1)
    good = uhs.check_compatibility(uhs.closed_form_scattering(A), [0.25, 1.0, 4.0])
    assert good["pass"]
    bad = uhs.check_compatibility(uhs.closed_form_scattering(A, -1.0), [1.0])
    assert not bad["pass"]


def test_solution_field():
    u = uhs.make_solution_field(uhs.gamma_exp(1, 1), 2.0)
    value = u([0.3], [0.7])
    assert abs(value - 0.15472109110798896) < 1e-10
    assert abs(uhs.pde_residual(u, [0.3], [0.7], 1e-2)) <= 1e-4 * abs(value)
    with pytest.raises(uhs.ConfigurationError):
        u([5.0], [0.0])


def test_remainder_scan():
    cmp = uhs.remainder_scan(uhs.gamma_exp(2, 1), [1.0, 0.0], [1.0], 0.0, 1.0, [16, 32, 64, 128, 256])
    assert cmp["residual_slope"] <= -0.8


def test_hilbert():
    assert uhs.hilbert_power("lorentzian", 0.0, 0.9, 1, 3.0) == pytest.approx(0.3, abs=1e-6)
    assert uhs.hilbert_power("lorentzian", 0.0, 0.9, 2, 3.0) == -0.1
    pv = uhs.hilbert_pv_oracle("power_decay", 0.25, 0.5, 2.0)
    assert abs(uhs.hilbert_power("power_decay", 0.25, 0.5, 1, 2.0) - pv) < 1e-3


def test_lemma_checks():
    grid = [10 ** (-4 + i / 3) for i in range(13)]
    fit = uhs.check_small_r_blowup("power_decay", 0.25, 0.5, 1, grid)
    assert fit["pass"]
    assert fit["log_log_slope"] == pytest.approx(-0.5, abs=0.05)
    with pytest.raises(uhs.RejectedInput):
        uhs.check_holder("constant", 0.0, 0.5)
    tail = [10 ** (i / 10) for i in range(21)]
    assert not uhs.check_tail_decay("signed_lorentzian", 0.0, 0.5, 0, 2, tail)["pass"]


def test_run_command():
    assert "validate" in uhs.command_names()
    report = uhs.run_command("validate", {"d": 1, "n": 1})
    assert report["command"] == "validate"
    assert report["pass"] is True
    assert report["config_echo"]["d"] == 1
    with pytest.raises(uhs.DimensionError):
        uhs.run_command("validate", {"d": 4})
    with pytest.raises(uhs.ConfigurationError):
        uhs.run_command("validate", {"colour": "blue"})
    assert cmath.isfinite(uhs.inverse_fourier_profile("gaussian", 0.0, 0.5, 1.0))
