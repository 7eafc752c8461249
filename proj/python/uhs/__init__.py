"""Scattering data and plane-wave solutions of the ultrahyperbolic equation."""

from ._uhs import (
    Amplitude,
    ConfigurationError,
    DimensionError,
    DomainError,
    Error,
    RadialRule,
    RejectedInput,
    ScatteringData,
    SolutionField,
    SphereRule,
    ToleranceError,
    angular_bump,
    check_compatibility,
    check_holder,
    check_small_r_blowup,
    check_tail_decay,
    closed_form_scattering,
    command_names,
    gamma_exp,
    gamma_without_tail,
    hilbert_power,
    hilbert_pv_oracle,
    inverse_fourier_profile,
    make_solution_field,
    pde_residual,
    radial_rule,
    remainder_scan,
    run_command,
    scattering_from_amplitude,
    scattering_to_amplitude,
    sphere_measure,
    sphere_rule,
    tabulated_radial,
)

__all__ = [name for name in dir() if not name.startswith("_")]
