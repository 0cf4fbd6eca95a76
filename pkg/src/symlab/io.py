"""JSON serialization of operators, verdicts and certificates.

Rationals travel as strings "p/q" (or "p" when the denominator is 1),
matrices as row-major nested arrays of those strings, multi-indices as
integer arrays.  Serialization is deterministic: keys are emitted sorted
and collections in graded-lex order, so reports reproduce byte-for-byte
under a fixed seed once timing fields are stripped.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Optional, Sequence

from .deciders.cancellation import (
    CancelingVerdict,
    PartialCancelingVerdict,
    SpanningVerdict,
)
from .deciders.cocancellation import CocancelingVerdict
from .deciders.ellipticity import CertifiedBox, EllipticityVerdict, FaceBox
from .exact.matrix import QMatrix, Subspace
from .exact.symbol import SymbolOperator

SCHEMA_VERSION = 1


class OperatorFileError(ValueError):
    """Raised when an operator file fails validation."""


def rat_to_str(x: Fraction) -> str:
    return str(x)


def rat_from_str(s: str) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise OperatorFileError(f"bad rational literal {s!r}: {exc}") from exc


def matrix_to_json(m: QMatrix) -> list:
    return [[rat_to_str(x) for x in row] for row in m.entries]


def matrix_from_json(data, what: str = "matrix") -> QMatrix:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise OperatorFileError(f"{what} must be a non-empty nested array")
    width = len(data[0])
    if any(len(r) != width for r in data):
        raise OperatorFileError(f"{what} rows have inconsistent lengths")
    return QMatrix.from_rows([[rat_from_str(x) for x in row] for row in data])


def vector_to_json(v: Sequence[Fraction]) -> list:
    return [rat_to_str(x) for x in v]


def subspace_to_json(s: Subspace) -> dict:
    return {
        "ambient": s.ambient,
        "dim": s.dim,
        "basis_columns": [vector_to_json(c) for c in s.columns()],
    }


def operator_to_json(a: SymbolOperator, metadata: Optional[dict] = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "n": a.n,
        "dimV": a.dim_v,
        "dimE": a.dim_e,
        "order": a.order,
        "terms": [
            {"alpha": list(alpha), "matrix": matrix_to_json(mat)}
            for alpha, mat in a.terms
        ],
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def operator_from_json(doc: dict) -> tuple[SymbolOperator, Optional[QMatrix], dict]:
    """Parse an operator file; returns (operator, optional T, metadata)."""
    if not isinstance(doc, dict):
        raise OperatorFileError("operator file must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise OperatorFileError(f"unsupported schema_version {version!r}")
    for key in ("n", "dimV", "dimE", "order", "terms"):
        if key not in doc:
            raise OperatorFileError(f"missing field {key!r}")
    n, dim_v, dim_e, order = doc["n"], doc["dimV"], doc["dimE"], doc["order"]
    for name, val in (("n", n), ("dimV", dim_v), ("dimE", dim_e)):
        if not isinstance(val, int) or val < 1:
            raise OperatorFileError(f"{name} must be a positive integer")
    if not isinstance(order, int) or order < 0:
        raise OperatorFileError("order must be a non-negative integer")
    if not isinstance(doc["terms"], list):
        raise OperatorFileError("terms must be an array")
    terms = {}
    for idx, item in enumerate(doc["terms"]):
        if not isinstance(item, dict) or "alpha" not in item or "matrix" not in item:
            raise OperatorFileError(f"terms[{idx}] needs 'alpha' and 'matrix'")
        alpha = item["alpha"]
        if (
            not isinstance(alpha, list)
            or len(alpha) != n
            or not all(isinstance(x, int) and x >= 0 for x in alpha)
        ):
            raise OperatorFileError(
                f"terms[{idx}].alpha must be {n} non-negative integers"
            )
        if sum(alpha) != order:
            raise OperatorFileError(
                f"terms[{idx}].alpha has degree {sum(alpha)}, expected {order}"
            )
        mat = matrix_from_json(item["matrix"], f"terms[{idx}].matrix")
        if (mat.rows, mat.cols) != (dim_e, dim_v):
            raise OperatorFileError(
                f"terms[{idx}].matrix is {mat.rows}x{mat.cols}, expected {dim_e}x{dim_v}"
            )
        key = tuple(alpha)
        if key in terms:
            raise OperatorFileError(f"duplicate multi-index {alpha}")
        terms[key] = mat
    try:
        op = SymbolOperator.make(n, dim_v, dim_e, order, terms, allow_zero=True)
    except ValueError as exc:
        raise OperatorFileError(str(exc)) from exc
    t = None
    if "T" in doc and doc["T"] is not None:
        t = matrix_from_json(doc["T"], "T")
        if t.cols != dim_e:
            raise OperatorFileError(f"T has {t.cols} columns, expected {dim_e}")
    metadata = doc.get("metadata") or {}
    return op, t, metadata


def operator_digest(a: SymbolOperator) -> str:
    blob = json.dumps(operator_to_json(a), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


# ---------------------------------------------------------------------------
# Verdict serialization (full certificates, re-checkable by `symlab verify`)


def _facebox_to_json(b: FaceBox) -> dict:
    return {
        "axis": b.axis,
        "sign": b.sign,
        "bounds": [[rat_to_str(lo), rat_to_str(hi)] for lo, hi in b.bounds],
    }


def _facebox_from_json(d: dict) -> FaceBox:
    return FaceBox(
        int(d["axis"]),
        int(d["sign"]),
        tuple((rat_from_str(lo), rat_from_str(hi)) for lo, hi in d["bounds"]),
    )


def ellipticity_to_json(v: EllipticityVerdict) -> dict:
    doc: dict = {"status": v.status, "certified": v.certified}
    if v.status == "ELLIPTIC":
        doc["cover"] = [
            {"box": _facebox_to_json(cb.box), "lower_bound": rat_to_str(cb.lower_bound)}
            for cb in v.cover
        ]
    if v.status == "NOT_ELLIPTIC":
        doc["witness_xi"] = vector_to_json(v.witness_xi)
        doc["witness_v"] = vector_to_json(v.witness_v)
    if v.status == "UNDECIDED":
        doc["undecided_box"] = (
            _facebox_to_json(v.undecided_box) if v.undecided_box else None
        )
        doc["depth_reached"] = v.depth_reached
    return doc


def ellipticity_from_json(doc: dict) -> EllipticityVerdict:
    status = doc["status"]
    v = EllipticityVerdict(status)
    if status == "ELLIPTIC":
        v.cover = [
            CertifiedBox(_facebox_from_json(cb["box"]), rat_from_str(cb["lower_bound"]))
            for cb in doc.get("cover", [])
        ]
    if status == "NOT_ELLIPTIC":
        v.witness_xi = tuple(rat_from_str(x) for x in doc["witness_xi"])
        v.witness_v = tuple(rat_from_str(x) for x in doc["witness_v"])
    return v


def _samples_to_json(samples) -> list:
    return [vector_to_json(xi) for xi in samples]


def _samples_from_json(data) -> list[tuple]:
    return [tuple(rat_from_str(x) for x in xi) for xi in data]


def canceling_to_json(v: CancelingVerdict) -> dict:
    doc = {
        "status": v.status,
        "certified": v.certified,
        "samples": _samples_to_json(v.samples),
        "intersection": subspace_to_json(v.intersection),
        "dim_trajectory": list(v.dim_trajectory),
    }
    if v.witness is not None:
        doc["witness"] = vector_to_json(v.witness)
    return doc


def canceling_from_json(doc: dict, dim_e: int) -> CancelingVerdict:
    from .exact.matrix import subspace_from_columns

    basis = [
        tuple(rat_from_str(x) for x in col)
        for col in doc["intersection"]["basis_columns"]
    ]
    witness = (
        tuple(rat_from_str(x) for x in doc["witness"]) if "witness" in doc else None
    )
    return CancelingVerdict(
        doc["status"],
        _samples_from_json(doc["samples"]),
        subspace_from_columns(dim_e, basis),
        witness=witness,
    )


def cocanceling_to_json(v: CocancelingVerdict) -> dict:
    doc = {
        "status": v.status,
        "certified": True,
        "joint_kernel": subspace_to_json(v.joint_kernel),
    }
    if v.left_inverses is not None:
        doc["left_inverses"] = [
            {"alpha": list(alpha), "matrix": matrix_to_json(mat)}
            for alpha, mat in sorted(v.left_inverses.items())
        ]
    return doc


def cocanceling_from_json(doc: dict, dim_e: int) -> CocancelingVerdict:
    from .exact.matrix import subspace_from_columns

    basis = [
        tuple(rat_from_str(x) for x in col)
        for col in doc["joint_kernel"]["basis_columns"]
    ]
    left = None
    if "left_inverses" in doc:
        left = {
            tuple(item["alpha"]): matrix_from_json(item["matrix"])
            for item in doc["left_inverses"]
        }
    return CocancelingVerdict(
        doc["status"], subspace_from_columns(dim_e, basis), left
    )


def spanning_to_json(v: SpanningVerdict) -> dict:
    return {
        "status": v.status,
        "certified": v.certified,
        "samples": _samples_to_json(v.samples),
        "span_dim": v.span_dim,
    }


def spanning_from_json(doc: dict) -> SpanningVerdict:
    return SpanningVerdict(
        doc["status"], _samples_from_json(doc["samples"]), doc["span_dim"],
        doc["certified"],
    )


def partial_to_json(v: PartialCancelingVerdict) -> dict:
    return {
        "status": v.status,
        "certified": v.certified,
        "samples": _samples_to_json(v.samples),
        "image_intersection": subspace_to_json(v.image_intersection),
        "constrained_intersection": subspace_to_json(v.constrained_intersection),
    }


def dump_json(doc: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
