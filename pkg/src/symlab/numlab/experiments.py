"""Ratio experiments probing limiting inequalities at desk scale.

Every experiment returns (rows, manifest): rows are plain dictionaries of
floats and flags (one per schedule point), the manifest records grid,
operator digest, seed and parameters so a run can be reproduced exactly.
Reported ratios are re-measured on a half-resolution grid whenever that is
affordable; a point whose ratio moves more than ten percent is flagged
unconverged rather than silently reported.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .. import __version__
from ..catalog import divergence, gradient, sym_gradient
from ..deciders.cancellation import image_intersection
from ..deciders.ellipticity import check_ellipticity
from ..exact.symbol import SymbolOperator
from .blowup import BlowupProfile, build_blowup_field
from .fields import (
    curl_potential_field,
    dx_bump,
    gaussian_bump,
    mollified_disc,
    newton_gradient_field,
    radial_cutoff_test_function,
)
from .grid import GridField, GridSpec, apply_symbol, derivative_magnitude
from .norms import lp_norm, pairing

CONVERGENCE_TOL = 0.10


def _manifest(kind: str, spec: GridSpec, seed: int, params: dict, digest: Optional[str] = None) -> dict:
    doc = {
        "kind": kind,
        "tool_version": __version__,
        "grid": {"n": spec.n, "size": spec.size, "box": spec.box},
        "seed": seed,
        "params": params,
    }
    if digest is not None:
        doc["operator_digest"] = digest
    return doc


def _converged(value: float, reference: Optional[float]) -> bool:
    if reference is None:
        return True
    if value == 0.0:
        return reference == 0.0
    return abs(value - reference) <= CONVERGENCE_TOL * abs(value)


def sobolev_exponent(n: int, k: int, ell: int) -> float:
    """Target integrability for estimating order-ell derivatives against a
    unit-mass image: n / (n - (k - ell))."""
    gap = k - ell
    if gap >= n:
        raise ValueError("derivative gap must be smaller than the dimension")
    return n / (n - gap)


def _blowup_point(
    a: SymbolOperator,
    e: Sequence,
    ell: int,
    scale: float,
    spec: GridSpec,
    profile: Optional[BlowupProfile],
    ellipticity,
    intersection,
) -> dict:
    u, au, flags = build_blowup_field(
        a, e, scale, spec, profile=profile,
        ellipticity=ellipticity, intersection=intersection,
    )
    q = sobolev_exponent(spec.n, a.order, ell)
    if ell == 0:
        num = lp_norm(u, q)
    else:
        dmag = derivative_magnitude(u, ell)
        num = float((spec.cell_volume * (dmag**q).sum()) ** (1.0 / q))
    den = lp_norm(au, 1.0)
    # Gradient-control companion on the same field: the order-zero Sobolev
    # ratio against the full first derivative.
    ctrl_q = spec.n / (spec.n - 1.0)
    ctrl_num = lp_norm(u, ctrl_q)
    dmag1 = derivative_magnitude(u, 1)
    ctrl_den = float(spec.cell_volume * dmag1.sum())
    return {
        "scale": scale,
        "numerator": num,
        "denominator": den,
        "ratio": num / den,
        "control_numerator": ctrl_num,
        "control_denominator": ctrl_den,
        "control_ratio": ctrl_num / ctrl_den,
        "image_l1": den,
        "image_l1_bound": flags["image_l1_bound"],
        "tail": flags["tail"],
        "nyquist_margin_ok": flags["nyquist_margin_ok"],
    }


def blowup_experiment(
    a: SymbolOperator,
    e: Sequence,
    ell: int,
    scales: Sequence[float],
    spec: GridSpec,
    seed: int = 0,
    check_convergence: bool = True,
    digest: Optional[str] = None,
) -> tuple[list[dict], dict]:
    """Ratio of the order-ell derivative norm to the image L1 norm across a
    schedule of concentration scales."""
    if ell < 0 or ell >= a.order:
        raise ValueError("derivative order must satisfy 0 <= ell < operator order")
    if a.order - ell >= spec.n:
        raise ValueError("derivative gap k - ell must stay below the dimension")
    ellipticity = check_ellipticity(a)
    intersection = image_intersection(a, seed, ellipticity)
    profile = BlowupProfile.build(spec)
    half = spec.halved() if check_convergence else None
    half_profile = BlowupProfile.build(half) if half is not None else None
    rows = []
    for scale in scales:
        row = _blowup_point(a, e, ell, scale, spec, profile, ellipticity, intersection)
        ref = None
        if half is not None and half.nyquist >= scale:
            ref = _blowup_point(
                a, e, ell, scale, half, half_profile, ellipticity, intersection
            )["ratio"]
        row["converged"] = _converged(row["ratio"], ref)
        rows.append(row)
    manifest = _manifest(
        "blowup", spec, seed,
        {"e": [str(x) for x in e], "ell": ell, "scales": list(scales)},
        digest,
    )
    return rows, manifest


def necessity_experiment(
    field_kind: str,
    exponents: Sequence[float],
    spec: GridSpec,
    sigma: float = 1.0,
    seed: int = 0,
) -> tuple[list[dict], dict]:
    """Pair an integrable field against the slowly-opening plateau family.

    The test-function gradient norms obey an exact power scaling in the
    opening exponent; each row reports the measured norm, its deviation
    from that scaling, and the pairing ratio that diverges for fields with
    nonzero mean and stays bounded for mean-zero fields."""
    if field_kind == "gaussian":
        f = gaussian_bump(spec, sigma=sigma, normalize_l1=True)
    elif field_kind == "dx_bump":
        f = dx_bump(spec, sigma=sigma)
    else:
        raise ValueError(f"unknown necessity field {field_kind!r}")
    tail = f.boundary_tail()
    f_l1 = lp_norm(f, 1.0)
    rows = []
    base_ln = None
    for lam in exponents:
        phi, _grad, grad_ln = radial_cutoff_test_function(spec, lam)
        if base_ln is None or lam == 1.0:
            # Reference for the scale check: measure the exponent-1 member once.
            _, _, base_ln = radial_cutoff_test_function(spec, 1.0)
        pair = pairing(f, phi)
        expected = base_ln * lam ** (1.0 - 1.0 / spec.n)
        scale_err = abs(grad_ln - expected) / expected
        rows.append(
            {
                "exponent": lam,
                "pairing": pair,
                "f_l1": f_l1,
                "grad_ln": grad_ln,
                "ratio": pair / (f_l1 * grad_ln),
                "scale_err": scale_err,
                "tail": tail,
            }
        )
    manifest = _manifest(
        "necessity", spec, seed,
        {"field": field_kind, "sigma": sigma, "exponents": list(exponents)},
    )
    return rows, manifest


def duality_experiment(
    field_kind: str,
    exponents: Sequence[float],
    spec: GridSpec,
    sigma: float = 1.0,
    seed: int = 0,
) -> tuple[list[dict], dict]:
    """Probe the pairing bound for constrained versus generic vector fields.

    A field annihilated by the divergence constraint keeps the pairing
    ratio bounded along the plateau family; a generic field with nonzero
    mean drives it up."""
    if spec.n != 2:
        raise ValueError("duality experiment runs on a two-dimensional box")
    if field_kind == "curl-potential":
        f = curl_potential_field(spec, sigma=sigma)
    elif field_kind == "generic":
        f = gaussian_bump(spec, sigma=sigma, components=[1.0, 0.0], normalize_l1=True)
    else:
        raise ValueError(f"unknown duality field {field_kind!r}")
    div = divergence(spec.n).operator
    div_f = apply_symbol(div, f)
    f_l1 = lp_norm(f, 1.0)
    rows = []
    for lam in exponents:
        phi, _grad, grad_ln = radial_cutoff_test_function(spec, lam)
        # Pair against the constant direction with the largest mean component.
        means = f.values.reshape(f.components, -1).sum(axis=1)
        direction = np.zeros(f.components)
        direction[int(np.argmax(np.abs(means)))] = 1.0
        test = GridField(spec, direction[:, None, None] * phi.values[0][None, ...])
        rows.append(
            {
                "exponent": lam,
                "pairing": pairing(f, test),
                "f_l1": f_l1,
                "grad_ln": grad_ln,
                "ratio": pairing(f, test) / (f_l1 * grad_ln),
                "constraint_residual_l1": lp_norm(div_f, 1.0),
            }
        )
    manifest = _manifest(
        "duality", spec, seed,
        {"field": field_kind, "sigma": sigma, "exponents": list(exponents)},
    )
    return rows, manifest


# ---------------------------------------------------------------------------
# Inequality ratio families


def _gns_disc_point(size: int, width: float, box: float = 4.0) -> dict:
    spec = GridSpec(2, size, box)
    u = mollified_disc(spec, radius=1.0, width=width)
    grad = gradient(2).operator
    du = apply_symbol(grad, u)
    lhs = lp_norm(u, 2.0)
    rhs = lp_norm(du, 1.0)
    return {
        "size": size, "width": width, "lhs": lhs, "rhs": rhs,
        "ratio": lhs / rhs, "tail": u.boundary_tail(),
    }


def _korn_point(size: int, box: float = 8.0, sigma: float = 0.8) -> dict:
    spec = GridSpec(2, size, box)
    g = gaussian_bump(spec, sigma=sigma, components=[1.0, -0.5])
    sg = apply_symbol(sym_gradient(2).operator, g)
    lhs = lp_norm(g, 2.0)
    rhs = lp_norm(sg, 1.0)
    return {"size": size, "lhs": lhs, "rhs": rhs, "ratio": lhs / rhs,
            "tail": g.boundary_tail()}


def _solonnikov_point(size: int, box: float = 8.0, sigma: float = 0.8) -> dict:
    spec = GridSpec(2, size, box)
    g = gaussian_bump(spec, sigma=sigma)
    du_mag = derivative_magnitude(g, 1)
    lhs = float((spec.cell_volume * (du_mag**2).sum()) ** 0.5)
    d11 = apply_symbol(_pure_second_derivative(2, 0), g)
    d22 = apply_symbol(_pure_second_derivative(2, 1), g)
    rhs = lp_norm(d11, 1.0) + lp_norm(d22, 1.0)
    return {"size": size, "lhs": lhs, "rhs": rhs, "ratio": lhs / rhs,
            "tail": g.boundary_tail()}


def _strange_point(size: int, box: float = 8.0, sigma: float = 0.9) -> dict:
    spec = GridSpec(4, size, box)
    g = gaussian_bump(spec, sigma=sigma)
    d12 = apply_symbol(_mixed_second_derivative(4, 0, 1), g)
    d34 = apply_symbol(_mixed_second_derivative(4, 2, 3), g)
    lhs = lp_norm(g, 2.0)
    rhs = lp_norm(d12, 1.0) + lp_norm(d34, 1.0)
    return {"size": size, "lhs": lhs, "rhs": rhs, "ratio": lhs / rhs,
            "tail": g.boundary_tail()}


def _newton_point(size: int, eps: float, box: float = 8.0) -> dict:
    from ..catalog import exterior_d

    spec = GridSpec(3, size, box)
    u = newton_gradient_field(spec, eps)
    div_u = apply_symbol(divergence(3).operator, u)
    curl_u = apply_symbol(exterior_d(3, 1).operator, u)
    lhs = lp_norm(u, 1.5)
    rhs = lp_norm(div_u, 1.0) + lp_norm(curl_u, 1.0)
    return {"size": size, "eps": eps, "lhs": lhs, "rhs": rhs,
            "ratio": lhs / rhs, "curl_l1": lp_norm(curl_u, 1.0),
            "tail": u.boundary_tail()}


def _pure_second_derivative(n: int, axis: int) -> SymbolOperator:
    from ..exact.matrix import QMatrix

    alpha = tuple(2 if i == axis else 0 for i in range(n))
    return SymbolOperator.make(n, 1, 1, 2, {alpha: QMatrix.from_rows([[1]])})


def _mixed_second_derivative(n: int, ax1: int, ax2: int) -> SymbolOperator:
    from ..exact.matrix import QMatrix

    alpha = tuple(1 if i in (ax1, ax2) else 0 for i in range(n))
    return SymbolOperator.make(n, 1, 1, 2, {alpha: QMatrix.from_rows([[1]])})


INEQUALITY_FAMILIES = ("gns_disc", "korn", "solonnikov", "strange_r4", "newton_r3")


def inequality_experiment(
    family: str,
    seed: int = 0,
    levels: Optional[Sequence] = None,
) -> tuple[list[dict], dict]:
    """Left/right ratio of one inequality family across a resolution or
    mollification schedule, with half-resolution convergence flags."""
    rows: list[dict] = []
    if family == "gns_disc":
        levels = levels or [(128, 0.4), (256, 0.2), (512, 0.1)]
        for size, width in levels:
            row = _gns_disc_point(size, width)
            ref = _gns_disc_point(size // 2, width)["ratio"] if size >= 64 else None
            row["converged"] = _converged(row["ratio"], ref)
            rows.append(row)
        spec = GridSpec(2, levels[-1][0], 4.0)
        params = {"levels": [list(l) for l in levels]}
    elif family == "korn":
        levels = levels or [64, 128, 256]
        for size in levels:
            row = _korn_point(size)
            row["converged"] = _converged(row["ratio"], _korn_point(size // 2)["ratio"])
            rows.append(row)
        spec = GridSpec(2, levels[-1], 8.0)
        params = {"levels": list(levels)}
    elif family == "solonnikov":
        levels = levels or [64, 128, 256]
        for size in levels:
            row = _solonnikov_point(size)
            row["converged"] = _converged(
                row["ratio"], _solonnikov_point(size // 2)["ratio"]
            )
            rows.append(row)
        spec = GridSpec(2, levels[-1], 8.0)
        params = {"levels": list(levels)}
    elif family == "strange_r4":
        levels = levels or [16, 32]
        for size in levels:
            row = _strange_point(size)
            row["converged"] = _converged(
                row["ratio"], _strange_point(size // 2)["ratio"] if size >= 32 else None
            )
            rows.append(row)
        spec = GridSpec(4, levels[-1], 8.0)
        params = {"levels": list(levels)}
    elif family == "newton_r3":
        levels = levels or [(128, 0.4), (128, 0.3), (128, 0.25)]
        for size, eps in levels:
            row = _newton_point(size, eps)
            row["converged"] = _converged(row["ratio"], _newton_point(size // 2, eps)["ratio"])
            rows.append(row)
        spec = GridSpec(3, levels[-1][0], 8.0)
        params = {"levels": [list(l) for l in levels]}
    else:
        raise ValueError(f"unknown inequality family {family!r}")
    manifest = _manifest(f"inequality:{family}", spec, seed, params)
    return rows, manifest
