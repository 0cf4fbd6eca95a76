"""Floating-point spectral laboratory on periodic boxes."""

from .blowup import (
    BlowupError,
    BlowupProfile,
    build_blowup_field,
    plateau_cutoff,
    smoothstep,
    smoothstep_deriv,
    solve_symbol_directions,
)
from .experiments import (
    INEQUALITY_FAMILIES,
    blowup_experiment,
    duality_experiment,
    inequality_experiment,
    necessity_experiment,
    sobolev_exponent,
)
from .fields import (
    curl_potential_field,
    dx_bump,
    gaussian_bump,
    mollified_disc,
    newton_gradient_field,
    radial_cutoff_test_function,
)
from .grid import (
    GridField,
    GridSpec,
    apply_symbol,
    derivative_magnitude,
    partial_derivative_multiplier,
    symbol_multiplier,
)
from .norms import (
    gagliardo_seminorm,
    l2_norm_spectral,
    linf_norm,
    lorentz_norm,
    lp_norm,
    pairing,
)

__all__ = [
    "BlowupError",
    "BlowupProfile",
    "build_blowup_field",
    "plateau_cutoff",
    "smoothstep",
    "smoothstep_deriv",
    "solve_symbol_directions",
    "INEQUALITY_FAMILIES",
    "blowup_experiment",
    "duality_experiment",
    "inequality_experiment",
    "necessity_experiment",
    "sobolev_exponent",
    "curl_potential_field",
    "dx_bump",
    "gaussian_bump",
    "mollified_disc",
    "newton_gradient_field",
    "radial_cutoff_test_function",
    "GridField",
    "GridSpec",
    "apply_symbol",
    "derivative_magnitude",
    "partial_derivative_multiplier",
    "symbol_multiplier",
    "gagliardo_seminorm",
    "l2_norm_spectral",
    "linf_norm",
    "lorentz_norm",
    "lp_norm",
    "pairing",
]
