"""Test fields used by the experiments."""

from __future__ import annotations

from math import pi
from typing import Optional

import numpy as np

from .blowup import smoothstep, smoothstep_deriv
from .grid import GridField, GridSpec


def _centered_radius(spec: GridSpec) -> np.ndarray:
    coords = spec.coordinate_grids()
    c = spec.box / 2.0
    return np.sqrt(sum((x - c) ** 2 for x in coords))


def gaussian_bump(
    spec: GridSpec,
    sigma: float = 1.0,
    components: Optional[list[float]] = None,
    normalize_l1: bool = False,
) -> GridField:
    """Gaussian exp(-r^2 / (2 sigma^2)) centered in the box, optionally
    scaled to unit mass, broadcast onto a component direction."""
    r = _centered_radius(spec)
    g = np.exp(-(r**2) / (2.0 * sigma**2))
    if normalize_l1:
        g = g / (g.sum() * spec.cell_volume)
    comps = components if components is not None else [1.0]
    vals = np.stack([c * g for c in comps])
    return GridField(spec, vals)


def mollified_disc(spec: GridSpec, radius: float = 1.0, width: float = 0.2) -> GridField:
    """Smoothed indicator of the centered disc; the transition band has the
    given width."""
    r = _centered_radius(spec)
    vals = smoothstep((radius + width / 2.0 - r) / width)
    return GridField(spec, vals[None, ...])


def dx_bump(spec: GridSpec, sigma: float = 1.0) -> GridField:
    """First coordinate derivative of a Gaussian: a mean-zero scalar field.
    The center sits off the grid symmetry point so discrete pairings with
    even test functions do not cancel identically."""
    coords = spec.coordinate_grids()
    c = spec.box / 2.0 + 0.37 * sigma
    r2 = sum((x - c) ** 2 for x in coords)
    g = np.exp(-r2 / (2.0 * sigma**2))
    vals = -(coords[0] - c) / sigma**2 * g
    return GridField(spec, vals[None, ...])


def curl_potential_field(spec: GridSpec, sigma: float = 1.0) -> GridField:
    """Divergence-free planar field (d2 g, -d1 g) from a skewed Gaussian
    potential; the skew and offset avoid exact discrete cancellations in
    pairings against radial test functions."""
    if spec.n != 2:
        raise ValueError("curl potential field is two-dimensional")
    x, y = spec.coordinate_grids()
    cx = spec.box / 2.0 + 0.29 * sigma
    cy = spec.box / 2.0 - 0.17 * sigma
    g = np.exp(
        -((x - cx) ** 2) / (2.0 * sigma**2) - ((y - cy) ** 2) / (0.8 * sigma**2)
    )
    g_hat = np.fft.fft2(g)
    xi = spec.frequency_grids()
    d1 = np.fft.ifft2(2j * pi * xi[0] * g_hat).real
    d2 = np.fft.ifft2(2j * pi * xi[1] * g_hat).real
    return GridField(spec, np.stack([d2, -d1]))


def newton_gradient_field(spec: GridSpec, eps: float) -> GridField:
    """Mollified fundamental-solution gradient on a 3-d box: the spectrum is
    -i xi / (2 pi |xi|^2) times a Gaussian mollifier at scale eps, with the
    constant mode removed.  Its divergence is the mollifier minus its box
    mean and its curl vanishes."""
    if spec.n != 3:
        raise ValueError("this family lives on a three-dimensional box")
    xi = spec.frequency_grids()
    r2 = sum(x**2 for x in xi)
    origin = tuple(0 for _ in range(spec.n))
    r2_safe = r2.copy()
    r2_safe[origin] = 1.0
    moll_hat = np.exp(-pi * eps**2 * r2)
    comps = []
    for i in range(3):
        hat = -1j * xi[i] / (2.0 * pi * r2_safe) * moll_hat
        hat[origin] = 0.0
        comps.append(hat)
    spectrum = np.stack(comps)
    # The synthesized field must be shifted so the singular core sits at the
    # box center rather than the corner.
    shift = np.exp(-2j * pi * (spec.box / 2.0) * sum(xi))
    return GridField.from_spectrum(spec, spectrum * shift[None, ...])


def radial_cutoff_test_function(
    spec: GridSpec, exponent: float
) -> tuple[GridField, GridField, float]:
    """The slowly-opening radial plateau family: values ramp from 1 inside
    radius 1 down to 0 outside radius 2^(1/exponent) through a fixed smooth
    profile of r^exponent.

    Returns the scalar field, its gradient field (one component per axis,
    computed from the exact radial derivative), and the Riemann sum of
    |gradient|^n, whose n-th root scales like exponent^(1 - 1/n).
    """
    lam = float(exponent)
    if lam <= 0:
        raise ValueError("exponent must be positive")
    coords = spec.coordinate_grids()
    c = spec.box / 2.0
    diffs = [x - c for x in coords]
    r = np.sqrt(sum(d**2 for d in diffs))
    r_safe = np.where(r == 0, 1.0, r)
    s = r_safe**lam
    # Profile psi: 1 on [0,1], 0 on [2,inf); phi = psi(r^lam).
    phi = smoothstep(2.0 - s)
    phi = np.where(r == 0, 1.0, phi)
    # d phi / dr = psi'(s) * lam * r^(lam-1) with psi(s) = smoothstep(2-s).
    sp = -smoothstep_deriv(2.0 - s)
    dphi_dr = sp * lam * r_safe ** (lam - 1.0)
    dphi_dr = np.where(r == 0, 0.0, dphi_dr)
    grads = [dphi_dr * d / r_safe for d in diffs]
    grad_field = GridField(spec, np.stack(grads))
    grad_mag = np.sqrt(sum(g**2 for g in grads))
    ln_riemann = float((grad_mag**spec.n).sum() * spec.cell_volume) ** (1.0 / spec.n)
    return GridField(spec, phi[None, ...]), grad_field, ln_riemann
