"""Common-image analysis of operator symbols.

The common intersection W of the images A(xi)[V] over all nonzero xi is
approximated from above by intersecting images at sampled rational
directions.  A trivial sampled intersection certifies the trivial full
intersection unconditionally.  A nonzero candidate e is certified to lie
in every image through the exact polynomial identity

    A(x) @ adj(G(x)) @ A(x)^T @ e == det(G(x)) * e,      G = A^T A,

valid for injective symbols, where both sides are polynomial vectors: the
left side divided by det(G) is the orthogonal projection onto the image,
so the identity holds everywhere iff e stays in the image everywhere.  A
failing identity yields a rational direction where e leaves the image;
adding it strictly shrinks the sampled intersection, so the loop
terminates.  For non-injective symbols no identity is available and a
nonzero intersection is reported as sampled (explicitly unsound).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..exact.matrix import (
    QMatrix,
    Subspace,
    column_space,
    full_space,
    kernel_basis,
    orthogonal_complement,
    subspace_from_columns,
    subspace_intersection,
    subspace_sum,
)
from ..exact.polymatrix import PolyMatrix
from ..exact.symbol import SymbolOperator
from .ellipticity import ELLIPTIC, EllipticityVerdict, check_ellipticity

CANCELING = "CANCELING"
NOT_CANCELING = "NOT_CANCELING"
NOT_CANCELING_SAMPLED = "NOT_CANCELING_SAMPLED"

SPANS = "SPANS"
DOES_NOT_SPAN = "DOES_NOT_SPAN"

HOLDS = "HOLDS"
FAILS = "FAILS"
FAILS_SAMPLED = "FAILS_SAMPLED"

SAMPLE_COORD_RANGE = 10
EXTRA_SAMPLE_ROUNDS = 2


def sample_directions(n: int, count: int, rng: random.Random) -> list[tuple]:
    """Deterministic nonzero integer directions with coordinates in
    [-10, 10]."""
    out = []
    while len(out) < count:
        v = tuple(
            Fraction(rng.randint(-SAMPLE_COORD_RANGE, SAMPLE_COORD_RANGE))
            for _ in range(n)
        )
        if any(x != 0 for x in v):
            out.append(v)
    return out


@dataclass
class IntersectionResult:
    """Sampled (and possibly certified) common image intersection."""

    subspace: Subspace
    samples: list[tuple]
    certified: bool
    dim_trajectory: list[int] = field(default_factory=list)
    iterations: int = 0
    certified_vectors: list[tuple] = field(default_factory=list)


@dataclass
class CancelingVerdict:
    status: str
    samples: list[tuple]
    intersection: Subspace
    witness: Optional[tuple] = None
    dim_trajectory: list[int] = field(default_factory=list)
    iterations: int = 0

    @property
    def certified(self) -> bool:
        return self.status in (CANCELING, NOT_CANCELING)


@dataclass
class SpanningVerdict:
    status: str
    samples: list[tuple]
    span_dim: int
    certified: bool


@dataclass
class PartialCancelingVerdict:
    status: str
    samples: list[tuple]
    image_intersection: Subspace
    constrained_intersection: Subspace

    @property
    def certified(self) -> bool:
        return self.status in (HOLDS, FAILS)


def membership_residual(a: SymbolOperator, e: Sequence[Fraction]) -> list:
    """Polynomial vector A adj(G) A^T e - det(G) e; identically zero iff e
    lies in the image of A(x) wherever det(G)(x) != 0."""
    pm = a.to_polymatrix()
    gram = a.gram()
    det_g = gram.det()
    adj_g = gram.adjugate()
    projected = (pm @ adj_g @ pm.transpose()).mul_rational_vector(e)
    return [
        proj - det_g.scale(Fraction(c)) for proj, c in zip(projected, e)
    ]


def _nonzero_point_of(residual: list, n: int) -> tuple:
    """A rational point where some residual entry is nonzero, found by
    scanning integer grids of growing radius (a nonzero polynomial cannot
    vanish on arbitrarily large grids)."""
    radius = 3
    while radius <= 3 ** 8:
        for combo in itertools.product(range(-radius, radius + 1), repeat=n):
            if all(c == 0 for c in combo):
                continue
            pt = tuple(Fraction(c) for c in combo)
            for p in residual:
                if p.evaluate(pt) != 0:
                    return pt
        radius *= 2
    raise RuntimeError("could not locate a nonzero value of a nonzero polynomial")


def image_intersection(
    a: SymbolOperator,
    seed: int = 0,
    ellipticity: Optional[EllipticityVerdict] = None,
) -> IntersectionResult:
    """Intersect images at sampled directions; certify exactness for
    injective symbols by validating every surviving basis vector."""
    rng = random.Random(seed)
    initial = a.dim_e + 4
    samples = sample_directions(a.n, initial, rng)
    w = full_space(a.dim_e)
    trajectory: list[int] = []
    for xi in samples:
        w = subspace_intersection(w, column_space(a.evaluate(xi)))
        trajectory.append(w.dim)
    iterations = 0
    max_iterations = a.dim_e + initial
    if w.dim == 0:
        return IntersectionResult(w, samples, True, trajectory, iterations)

    if ellipticity is None:
        ellipticity = check_ellipticity(a)
    if ellipticity.status == ELLIPTIC:
        certified_vectors: list[tuple] = []
        while True:
            iterations += 1
            if iterations > max_iterations:
                raise RuntimeError("membership certification failed to terminate")
            progress = False
            certified_vectors = []
            for e in w.columns():
                residual = membership_residual(a, e)
                if all(p.is_zero() for p in residual):
                    certified_vectors.append(e)
                    continue
                xi = _nonzero_point_of(residual, a.n)
                samples.append(xi)
                w = subspace_intersection(w, column_space(a.evaluate(xi)))
                trajectory.append(w.dim)
                progress = True
                break
            if not progress:
                break
            if w.dim == 0:
                return IntersectionResult(w, samples, True, trajectory, iterations)
        return IntersectionResult(
            w, samples, True, trajectory, iterations, certified_vectors
        )

    # Not certifiably injective: spend extra random rounds, then report the
    # sampled subspace without a certificate.
    for xi in sample_directions(a.n, EXTRA_SAMPLE_ROUNDS * initial, rng):
        samples.append(xi)
        w = subspace_intersection(w, column_space(a.evaluate(xi)))
        trajectory.append(w.dim)
        if w.dim == 0:
            return IntersectionResult(w, samples, True, trajectory, iterations)
    return IntersectionResult(w, samples, False, trajectory, iterations)


def check_canceling(
    a: SymbolOperator,
    seed: int = 0,
    ellipticity: Optional[EllipticityVerdict] = None,
) -> CancelingVerdict:
    res = image_intersection(a, seed, ellipticity)
    if res.subspace.dim == 0:
        return CancelingVerdict(
            CANCELING, res.samples, res.subspace,
            dim_trajectory=res.dim_trajectory, iterations=res.iterations,
        )
    if res.certified:
        return CancelingVerdict(
            NOT_CANCELING, res.samples, res.subspace,
            witness=res.subspace.columns()[0],
            dim_trajectory=res.dim_trajectory, iterations=res.iterations,
        )
    return CancelingVerdict(
        NOT_CANCELING_SAMPLED, res.samples, res.subspace,
        dim_trajectory=res.dim_trajectory, iterations=res.iterations,
    )


def check_bb_spanning(a: SymbolOperator, seed: int = 0) -> SpanningVerdict:
    """Grow the span of the orthogonal complements of sampled images.

    Reaching the whole codomain certifies spanning.  Falling short is
    certified only when a nonzero vector is proven to lie in every image
    (it is then orthogonal to every complement)."""
    rng = random.Random(seed)
    initial = a.dim_e + 4
    span = subspace_from_columns(a.dim_e, [])
    samples: list[tuple] = []
    budget = (1 + EXTRA_SAMPLE_ROUNDS) * initial
    stale = 0
    while len(samples) < budget:
        for xi in sample_directions(a.n, 1, rng):
            samples.append(xi)
            comp = orthogonal_complement(column_space(a.evaluate(xi)))
            new_span = subspace_sum(span, comp)
            stale = stale + 1 if new_span.dim == span.dim else 0
            span = new_span
        if span.dim == a.dim_e:
            return SpanningVerdict(SPANS, samples, span.dim, True)
        if stale >= initial:
            break
    certified = check_canceling(a, seed).status == NOT_CANCELING
    return SpanningVerdict(DOES_NOT_SPAN, samples, span.dim, certified)


def check_partial_canceling(
    a: SymbolOperator,
    t: QMatrix,
    seed: int = 0,
    ellipticity: Optional[EllipticityVerdict] = None,
) -> PartialCancelingVerdict:
    """Decide whether the common image intersection meets ker(t) only at 0."""
    if t.cols != a.dim_e:
        raise ValueError("constraint map must accept codomain vectors")
    res = image_intersection(a, seed, ellipticity)
    ker_t = kernel_basis(t)
    constrained = subspace_intersection(res.subspace, ker_t)
    if constrained.dim == 0:
        # Sound even for a merely sampled intersection: the true common
        # intersection is contained in the sampled one.
        return PartialCancelingVerdict(HOLDS, res.samples, res.subspace, constrained)
    status = FAILS if res.certified else FAILS_SAMPLED
    return PartialCancelingVerdict(status, res.samples, res.subspace, constrained)


def verify_canceling(a: SymbolOperator, verdict: CancelingVerdict) -> bool:
    """Re-check a cancellation verdict from its stored sample set and
    witness, independently of the decision path."""
    w = full_space(a.dim_e)
    for xi in verdict.samples:
        if all(x == 0 for x in xi):
            return False
        w = subspace_intersection(w, column_space(a.evaluate(xi)))
    if verdict.status == CANCELING:
        return w.dim == 0
    if verdict.status == NOT_CANCELING:
        e = verdict.witness
        if e is None or all(x == 0 for x in e):
            return False
        if not w.contains(e):
            return False
        return all(p.is_zero() for p in membership_residual(a, e))
    if verdict.status == NOT_CANCELING_SAMPLED:
        return w == verdict.intersection and w.dim > 0
    return False


def verify_spanning(a: SymbolOperator, verdict: SpanningVerdict) -> bool:
    span = subspace_from_columns(a.dim_e, [])
    for xi in verdict.samples:
        if all(x == 0 for x in xi):
            return False
        span = subspace_sum(
            span, orthogonal_complement(column_space(a.evaluate(xi)))
        )
    if verdict.status == SPANS:
        return span.dim == a.dim_e
    return span.dim < a.dim_e
