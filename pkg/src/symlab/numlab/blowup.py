"""Frequency-localized concentration families for injective symbols.

For an injective symbol A and a codomain vector e lying in every image
A(xi)[V], the field with spectrum (2 pi i)^(-k) (c(xi/s) - c(s xi)) U(xi),
where c is a radial plateau cutoff (1 inside radius 1/2, 0 outside radius
2) and U(xi) solves A(xi) U(xi) = e through the normal equations, maps
under A(D) exactly to the difference of two dilated copies of the cutoff's
inverse transform times e.  Its L1 image norm stays bounded by twice the
cutoff mass while derivative norms grow with the scale parameter; the
experiments chart that growth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import pi
from typing import Optional, Sequence

import numpy as np

from ..deciders.cancellation import IntersectionResult, image_intersection
from ..deciders.ellipticity import ELLIPTIC, EllipticityVerdict, check_ellipticity
from ..exact.symbol import SymbolOperator
from .grid import GridField, GridSpec
from .norms import lp_norm


def smoothstep(t: np.ndarray) -> np.ndarray:
    """C-infinity step: 0 for t <= 0, 1 for t >= 1."""
    t = np.asarray(t, dtype=float)
    a = np.zeros_like(t)
    pos = t > 0
    a[pos] = np.exp(-1.0 / t[pos])
    b = np.zeros_like(t)
    neg = t < 1
    b[neg] = np.exp(-1.0 / (1.0 - t[neg]))
    return a / (a + b)


def smoothstep_deriv(t: np.ndarray) -> np.ndarray:
    """Derivative of the smooth step; supported on (0, 1)."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = (t > 0) & (t < 1)
    ti = t[inside]
    a = np.exp(-1.0 / ti)
    b = np.exp(-1.0 / (1.0 - ti))
    out[inside] = a * b * (1.0 / ti**2 + 1.0 / (1.0 - ti) ** 2) / (a + b) ** 2
    return out


def plateau_cutoff(r: np.ndarray) -> np.ndarray:
    """Radial profile: 1 on [0, 1/2], 0 on [2, inf), smooth in between."""
    r = np.asarray(r, dtype=float)
    return smoothstep((2.0 - r) / 1.5)


@dataclass
class BlowupProfile:
    """Radial cutoff data shared by one experiment run."""

    spec: GridSpec
    cutoff_l1: float          # L1 norm of the cutoff's inverse transform
    radial: object            # callable r -> profile values

    @staticmethod
    def build(spec: GridSpec) -> "BlowupProfile":
        xi = spec.frequency_grids()
        r = np.sqrt(sum(x**2 for x in xi))
        hat = plateau_cutoff(r)[None, ...].astype(complex)
        psi = GridField.from_spectrum(spec, hat)
        return BlowupProfile(spec, lp_norm(psi, 1.0), plateau_cutoff)


class BlowupError(ValueError):
    pass


def solve_symbol_directions(
    a: SymbolOperator, spec: GridSpec, e: Sequence[float]
) -> np.ndarray:
    """U(xi) with A(xi) U(xi) = e solved through the normal equations at
    every nonzero grid frequency; the zero frequency gets U = 0."""
    xi = spec.frequency_grids()
    amat = np.zeros(spec.shape + (a.dim_e, a.dim_v))
    for alpha, mat in a.terms:
        mono = np.ones(spec.shape)
        for i, deg in enumerate(alpha):
            if deg:
                mono = mono * xi[i] ** deg
        amat += mono[..., None, None] * np.array(
            [[float(mat[r, c]) for c in range(a.dim_v)] for r in range(a.dim_e)]
        )
    gram = np.einsum("...ev,...ew->...vw", amat, amat)
    rhs = np.einsum("...ev,e->...v", amat, np.asarray(e, dtype=float))
    origin = tuple(0 for _ in range(spec.n))
    gram[origin] = np.eye(a.dim_v)
    u = np.linalg.solve(gram, rhs[..., None])[..., 0]
    u[origin] = 0.0
    return np.moveaxis(u, -1, 0)  # (dimV, *grid)


def build_blowup_field(
    a: SymbolOperator,
    e: Sequence,
    scale: float,
    spec: GridSpec,
    profile: Optional[BlowupProfile] = None,
    ellipticity: Optional[EllipticityVerdict] = None,
    intersection: Optional[IntersectionResult] = None,
    seed: int = 0,
) -> tuple[GridField, GridField, dict]:
    """Construct (u, A(D)u) for one scale; returns the fields and a flags
    dictionary (nyquist margin, truncation tail, cutoff mass bound).

    Requires a certified injective symbol and a direction e inside the
    certified common image intersection: only then does A(D)u collapse to
    the two-cutoff difference whose L1 norm the experiments rely on.
    """
    if scale < 2:
        raise BlowupError("scale parameter must be at least 2")
    if spec.nyquist < scale:
        raise BlowupError(
            f"grid Nyquist {spec.nyquist} cannot hold content at scale {scale}"
        )
    if ellipticity is None:
        ellipticity = check_ellipticity(a)
    if ellipticity.status != ELLIPTIC:
        raise BlowupError("symbol is not certified injective")
    e_exact = [Fraction(x) for x in e]
    if intersection is None:
        intersection = image_intersection(a, seed, ellipticity)
    if not intersection.subspace.contains(e_exact):
        raise BlowupError(
            "direction does not lie in the certified common image intersection"
        )
    if all(x == 0 for x in e_exact):
        raise BlowupError("direction must be nonzero")

    if profile is None or profile.spec != spec:
        profile = BlowupProfile.build(spec)
    xi = spec.frequency_grids()
    r = np.sqrt(sum(x**2 for x in xi))
    window = plateau_cutoff(r / scale) - plateau_cutoff(r * scale)
    e_float = np.array([float(x) for x in e_exact])
    u_dirs = solve_symbol_directions(a, spec, e_float)
    factor = (2j * pi) ** (-a.order)
    # Shift the concentration point to the box center so the boundary shell
    # measures genuine truncation.
    shift = np.exp(-2j * pi * (spec.box / 2.0) * sum(xi))
    u_hat = factor * (window * shift)[None, ...] * u_dirs
    u = GridField.from_spectrum(spec, u_hat)

    from .grid import apply_symbol

    au = apply_symbol(a, u)
    e_norm = float(np.sqrt((e_float**2).sum()))
    flags = {
        "nyquist": spec.nyquist,
        "nyquist_margin_ok": bool(spec.nyquist >= 4 * scale),
        "tail": u.boundary_tail(),
        "cutoff_l1": profile.cutoff_l1,
        "image_l1_bound": 2.0 * profile.cutoff_l1 * e_norm,
    }
    return u, au, flags
