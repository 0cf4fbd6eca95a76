"""Experiment drivers at reduced desk scale (full runs live in acceptance)."""

import numpy as np
import pytest

from symlab.catalog import hodge_pair, laplacian
from symlab.numlab import (
    GridSpec,
    blowup_experiment,
    duality_experiment,
    inequality_experiment,
    necessity_experiment,
    sobolev_exponent,
)


def test_sobolev_exponent_values():
    assert sobolev_exponent(2, 2, 1) == 2.0
    assert sobolev_exponent(3, 1, 0) == 1.5
    with pytest.raises(ValueError):
        sobolev_exponent(2, 3, 1)  # gap equals dimension


def test_blowup_schedule_monotone_small():
    spec = GridSpec(2, 256, 4.0)
    rows, manifest = blowup_experiment(
        laplacian(2).operator, [1], 1, [4, 8], spec, check_convergence=True
    )
    assert rows[0]["ratio"] < rows[1]["ratio"]
    for r in rows:
        assert r["image_l1"] <= r["image_l1_bound"] * 1.05
    assert manifest["kind"] == "blowup"
    assert manifest["grid"]["size"] == 256


def test_blowup_rejects_bad_derivative_order():
    spec = GridSpec(2, 64, 4.0)
    with pytest.raises(ValueError):
        blowup_experiment(laplacian(2).operator, [1], 2, [4], spec)
    with pytest.raises(ValueError):
        blowup_experiment(laplacian(2).operator, [1], -1, [4], spec)


def test_blowup_refuses_gap_equal_dimension():
    # One-dimensional fields with a second-order operator: measuring the
    # zeroth derivative hits the refused borderline gap.
    spec = GridSpec(1, 64, 4.0)
    op = laplacian(1).operator
    with pytest.raises(ValueError):
        blowup_experiment(op, [1], 0, [4], spec)


def test_hodge_blowup_direction_grows():
    spec = GridSpec(3, 64, 4.0)
    rows, _ = blowup_experiment(
        hodge_pair(3, 1).operator, [0, 0, 0, 1], 0, [2, 4], spec,
        check_convergence=False,
    )
    assert rows[0]["ratio"] < rows[1]["ratio"]


def test_necessity_scale_and_direction_small():
    spec = GridSpec(2, 256, 40.0)
    rows, _ = necessity_experiment("gaussian", [1.0, 0.5, 0.25], spec)
    ratios = [r["ratio"] for r in rows]
    assert ratios == sorted(ratios)
    assert all(r["scale_err"] <= 0.02 for r in rows)
    rows2, _ = necessity_experiment("dx_bump", [1.0, 0.5, 0.25], spec)
    assert max(abs(r["ratio"]) for r in rows2) < 0.5 * min(ratios)


def test_duality_contrast_small():
    spec = GridSpec(2, 256, 40.0)
    free, _ = duality_experiment("curl-potential", [1.0, 0.5, 0.25], spec, sigma=1.5)
    generic, _ = duality_experiment("generic", [1.0, 0.5, 0.25], spec, sigma=1.5)
    g = [abs(r["ratio"]) for r in generic]
    f = [abs(r["ratio"]) for r in free]
    assert g == sorted(g) and g[-1] > 5 * max(f)
    assert free[0]["constraint_residual_l1"] < 1e-10


def test_inequality_family_validation():
    with pytest.raises(ValueError):
        inequality_experiment("no_such_family")


def test_gns_disc_small_levels():
    rows, manifest = inequality_experiment("gns_disc", levels=[(64, 0.4), (128, 0.4)])
    assert all(np.isfinite(r["ratio"]) for r in rows)
    a, b = rows[0]["ratio"], rows[1]["ratio"]
    assert abs(a - b) <= 0.1 * abs(b)
