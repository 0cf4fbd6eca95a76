"""Bernstein-coefficient range enclosures for polynomials on boxes.

After an affine change mapping the box onto the unit cube, the polynomial
is rewritten in the tensor Bernstein basis; its values on the box then lie
between the smallest and largest Bernstein coefficient.  The enclosure is
exact rational arithmetic throughout and is much tighter than the naive
monomial-sum interval bound, at the price of a dense coefficient tensor,
so it serves as the second stage of the positivity certifier.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .poly import Interval, Polynomial


def _dense_coeffs(p: Polynomial) -> tuple[list[Fraction], tuple[int, ...]]:
    degs = [0] * p.n
    for alpha, _ in p.terms:
        for i, e in enumerate(alpha):
            degs[i] = max(degs[i], e)
    shape = tuple(d + 1 for d in degs)
    strides = [0] * p.n
    acc = 1
    for i in reversed(range(p.n)):
        strides[i] = acc
        acc *= shape[i]
    flat = [Fraction(0)] * acc
    for alpha, c in p.terms:
        idx = sum(e * s for e, s in zip(alpha, strides))
        flat[idx] = c
    return flat, shape


def _axis_rows(shape: Sequence[int], axis: int):
    """Iterate over (base_offset, stride) pairs addressing each 1-d row
    along the given axis of a flat row-major tensor."""
    n = len(shape)
    strides = [0] * n
    acc = 1
    for i in reversed(range(n)):
        strides[i] = acc
        acc *= shape[i]
    other_axes = [i for i in range(n) if i != axis]

    def rec(i: int, offset: int):
        if i == len(other_axes):
            yield offset
            return
        ax = other_axes[i]
        for j in range(shape[ax]):
            yield from rec(i + 1, offset + j * strides[ax])

    for off in rec(0, 0):
        yield off, strides[axis]


def bernstein_range(p: Polynomial, box: Sequence[Interval]) -> Interval:
    """Exact enclosure of p over the box from Bernstein coefficients."""
    if p.is_zero():
        return Fraction(0), Fraction(0)
    if len(box) != p.n:
        raise ValueError("box dimension mismatch")
    flat, shape = _dense_coeffs(p)
    # Affine substitution x_i = lo + width * t_i, one axis at a time.
    for axis in range(p.n):
        d = shape[axis] - 1
        if d == 0:
            continue
        lo, hi = box[axis]
        width = hi - lo
        lo_pows = [lo**e for e in range(d + 1)]
        w_pows = [width**e for e in range(d + 1)]
        for base, stride in _axis_rows(shape, axis):
            row = [flat[base + e * stride] for e in range(d + 1)]
            out = [Fraction(0)] * (d + 1)
            for e, c in enumerate(row):
                if c == 0:
                    continue
                for j in range(e + 1):
                    out[j] += c * comb(e, j) * lo_pows[e - j] * w_pows[j]
            for e in range(d + 1):
                flat[base + e * stride] = out[e]
    # Power basis to Bernstein basis on [0,1]^n, axis by axis:
    # b_j = sum_{t <= j} (C(j,t) / C(d,t)) a_t.
    for axis in range(p.n):
        d = shape[axis] - 1
        if d == 0:
            continue
        inv_binom = [Fraction(1, comb(d, t)) for t in range(d + 1)]
        for base, stride in _axis_rows(shape, axis):
            row = [flat[base + e * stride] for e in range(d + 1)]
            for j in range(d, -1, -1):
                acc = Fraction(0)
                for t in range(j + 1):
                    a = row[t]
                    if a != 0:
                        acc += comb(j, t) * inv_binom[t] * a
                flat[base + j * stride] = acc
    return min(flat), max(flat)
