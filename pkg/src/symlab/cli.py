"""Command line interface.

Subcommands: analyze (classification report with certificates), compat
(annihilator construction + verification transcript), verify (standalone
re-check of a report's certificates), catalog (list / emit built-ins) and
experiment (blowup / inequality / necessity / duality; CSV + JSON manifest
+ a rendered figure next to the CSV).

Exit codes: 0 all verdicts certified, 2 input/validation error, 3 at least
one verdict or experiment row is undecided/sampled/unconverged.

Operators come from JSON files or from catalog URIs such as
``catalog:gradient?n=2``.  Reports are byte-reproducible for a fixed seed
apart from the "timings" member.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import urllib.parse
from typing import Optional

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNDECIDED = 3


def _setup_threads() -> None:
    threads = os.environ.get("SYMLAB_THREADS")
    if threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def load_operator(source: str):
    """Operator from a catalog URI or a JSON file path.

    Returns (operator, constraint_map_or_None, metadata)."""
    from .io import OperatorFileError, load_json, operator_from_json

    if source.startswith("catalog:"):
        from .catalog import catalog_get

        rest = source[len("catalog:") :]
        name, _, query = rest.partition("?")
        params = {}
        for key, vals in urllib.parse.parse_qs(query).items():
            raw = vals[-1]
            try:
                params[key] = int(raw)
            except ValueError:
                params[key] = raw
        try:
            result = catalog_get(name, **params)
        except (KeyError, TypeError, ValueError) as exc:
            raise CliError(f"catalog error: {exc}")
        return result.operator, result.constraint_map, {"source": source}
    try:
        doc = load_json(source)
    except OSError as exc:
        raise CliError(f"cannot read {source}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError(f"{source}: invalid JSON at line {exc.lineno}: {exc.msg}")
    try:
        op, t, metadata = operator_from_json(doc)
    except OperatorFileError as exc:
        raise CliError(f"{source}: {exc}")
    metadata = dict(metadata)
    metadata["source"] = source
    return op, t, metadata


def _parse_grid(text: Optional[str], n: int, default: tuple[int, float]):
    from .numlab import GridSpec

    if not text:
        return GridSpec(n, *default)
    parts = text.split(",")
    if len(parts) != 2:
        raise CliError("--grid expects N,T")
    try:
        return GridSpec(n, int(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise CliError(f"bad --grid: {exc}")


def _write_json(doc: dict, path: Optional[str]) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_cell(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return format(v, ".12e")
    return str(v)


def _write_csv(rows: list[dict], path: str) -> list[str]:
    cols = list(rows[0].keys()) if rows else []
    lines = [",".join(cols)]
    for row in rows:
        lines.append(",".join(_fmt_cell(row.get(c, "")) for c in cols))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return cols


def _render_figure(rows: list[dict], csv_path: str, kind: str) -> Optional[str]:
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except Exception:
        return None
    if not rows:
        return None
    x_key = next(
        (k for k in ("scale", "exponent", "size", "eps") if k in rows[0]), None
    )
    if x_key is None or "ratio" not in rows[0]:
        return None
    xs = [row[x_key] for row in rows]
    ys = [row["ratio"] for row in rows]
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(xs, ys, "o-", color="tab:blue")
    if x_key in ("scale",):
        ax.set_xscale("log", base=2)
    ax.set_xlabel(x_key)
    ax.set_ylabel("ratio")
    ax.set_title(kind)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    out = os.path.splitext(csv_path)[0] + ".png"
    fig.savefig(out, dpi=130)
    plt.close(fig)
    return out


# ---------------------------------------------------------------------------
# analyze


def cmd_analyze(args) -> int:
    from . import __version__
    from .compat import AnnihilatorBudgetError, annihilator_degree, build_annihilator
    from .deciders import (
        check_bb_spanning,
        check_canceling,
        check_cocanceling,
        check_ellipticity,
        check_partial_canceling,
    )
    from .io import (
        canceling_to_json,
        cocanceling_to_json,
        ellipticity_to_json,
        matrix_to_json,
        operator_digest,
        operator_to_json,
        partial_to_json,
        spanning_to_json,
    )

    op, t, metadata = load_operator(args.source)
    timings: dict[str, float] = {}
    verdicts: dict[str, dict] = {}
    uncertified = []

    def timed(name, fn):
        t0 = time.perf_counter()
        out = fn()
        timings[name] = time.perf_counter() - t0
        return out

    if args.as_role == "constraint":
        cc = timed("cocanceling", lambda: check_cocanceling(op))
        verdicts["cocanceling"] = cocanceling_to_json(cc)
    else:
        ev = timed("ellipticity", lambda: check_ellipticity(op, max_depth=args.depth))
        verdicts["ellipticity"] = ellipticity_to_json(ev)
        if not ev.certified:
            uncertified.append("ellipticity")
        cv = timed(
            "canceling", lambda: check_canceling(op, seed=args.seed, ellipticity=ev)
        )
        verdicts["canceling"] = canceling_to_json(cv)
        if not cv.certified:
            uncertified.append("canceling")
        bb = timed("bb_spanning", lambda: check_bb_spanning(op, seed=args.seed))
        verdicts["bb_spanning"] = spanning_to_json(bb)
        if not bb.certified:
            uncertified.append("bb_spanning")
        cc = timed("cocanceling", lambda: check_cocanceling(op))
        verdicts["cocanceling"] = cocanceling_to_json(cc)
        if t is not None:
            pv = timed(
                "partial",
                lambda: check_partial_canceling(op, t, seed=args.seed, ellipticity=ev),
            )
            verdicts["partial"] = partial_to_json(pv)
            if not pv.certified:
                uncertified.append("partial")
        try:
            ann = timed("annihilator", lambda: build_annihilator(op))
            verdicts["annihilator"] = {
                "degree": annihilator_degree(op),
                "digest": operator_digest(ann.operator),
                "identity_checked": ann.identity_checked,
                "kernel_checks_passed": ann.kernel_checks_passed,
            }
        except AnnihilatorBudgetError as exc:
            verdicts["annihilator"] = {"skipped": str(exc)}

    report = {
        "schema_version": 1,
        "tool": {"name": "symlab", "version": __version__},
        "mode": args.as_role,
        "seed": args.seed,
        "depth": args.depth,
        "input": {
            "digest": operator_digest(op),
            "metadata": metadata,
            "n": op.n,
            "dimV": op.dim_v,
            "dimE": op.dim_e,
            "order": op.order,
        },
        "operator": operator_to_json(op),
        "verdicts": verdicts,
        "uncertified": uncertified,
        "timings": timings,
    }
    if t is not None:
        report["T"] = matrix_to_json(t)
    _write_json(report, args.json_out)
    return EXIT_UNDECIDED if uncertified else EXIT_OK


# ---------------------------------------------------------------------------
# compat


def cmd_compat(args) -> int:
    from . import __version__
    from .compat import AnnihilatorBudgetError, build_annihilator, verify_annihilator
    from .io import operator_digest, operator_to_json, vector_to_json

    op, _t, metadata = load_operator(args.source)
    try:
        result = build_annihilator(op, seed=args.seed)
    except AnnihilatorBudgetError as exc:
        raise CliError(str(exc))
    report = verify_annihilator(op, result.operator, seed=args.seed)
    doc = {
        "schema_version": 1,
        "tool": {"name": "symlab", "version": __version__},
        "input": {"digest": operator_digest(op), "metadata": metadata},
        "annihilator": operator_to_json(
            result.operator, metadata={"annihilates": operator_digest(op)}
        ),
        "transcript": {
            "identity_ok": report.identity_ok,
            "kernel_checks": [
                {"xi": vector_to_json(xi), "ok": ok} for xi, ok in report.kernel_checks
            ],
            "kernels_match": report.kernels_match,
            "rank_checks": [
                {"xi": vector_to_json(xi), "ok": ok} for xi, ok in report.rank_checks
            ],
            "ranks_full": report.ranks_full,
        },
    }
    _write_json(doc, args.json_out)
    return EXIT_OK if report.identity_ok else EXIT_UNDECIDED


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    from .deciders import (
        verify_canceling,
        verify_cocanceling,
        verify_ellipticity,
        verify_spanning,
    )
    from .exact.matrix import kernel_basis, subspace_intersection
    from .io import (
        canceling_from_json,
        cocanceling_from_json,
        ellipticity_from_json,
        load_json,
        matrix_from_json,
        operator_from_json,
        spanning_from_json,
    )

    try:
        report = load_json(args.report)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read report: {exc}")
    if "operator" not in report or "verdicts" not in report:
        raise CliError("report lacks operator or verdicts")
    op, _, _ = operator_from_json(report["operator"])
    verdicts = report["verdicts"]
    results = {}
    ok_all = True
    if "ellipticity" in verdicts:
        v = ellipticity_from_json(verdicts["ellipticity"])
        good = (not v.certified) or verify_ellipticity(op, v)
        results["ellipticity"] = good
        ok_all &= good
    if "canceling" in verdicts:
        v = canceling_from_json(verdicts["canceling"], op.dim_e)
        good = verify_canceling(op, v)
        results["canceling"] = good
        ok_all &= good
    if "bb_spanning" in verdicts:
        v = spanning_from_json(verdicts["bb_spanning"])
        good = verify_spanning(op, v)
        results["bb_spanning"] = good
        ok_all &= good
    if "cocanceling" in verdicts:
        v = cocanceling_from_json(verdicts["cocanceling"], op.dim_v)
        good = verify_cocanceling(op, v)
        results["cocanceling"] = good
        ok_all &= good
    if "partial" in verdicts and "T" in report:
        t = matrix_from_json(report["T"], "T")
        doc = verdicts["partial"]
        from .io import rat_from_str

        samples = [tuple(rat_from_str(x) for x in xi) for xi in doc["samples"]]
        from .exact.matrix import column_space, full_space

        w = full_space(op.dim_e)
        for xi in samples:
            w = subspace_intersection(w, column_space(op.evaluate(xi)))
        constrained = subspace_intersection(w, kernel_basis(t))
        stated = doc["status"]
        good = (constrained.dim == 0) == (stated == "HOLDS")
        results["partial"] = good
        ok_all &= good
    _write_json({"verified": results, "all_ok": ok_all}, args.json_out)
    return EXIT_OK if ok_all else EXIT_UNDECIDED


# ---------------------------------------------------------------------------
# catalog


def cmd_catalog(args) -> int:
    from .catalog import catalog_entry, catalog_names

    if args.action == "list":
        from .catalog import regression_instances

        rows = []
        for name in catalog_names():
            entry = catalog_entry(name)
            rows.append(f"{name:24s} {entry.role:10s} params: {entry.param_doc or '-'}")
        sys.stdout.write("\n".join(rows) + "\n")
        return EXIT_OK
    # emit
    source = args.name if args.name.startswith("catalog:") else "catalog:" + args.name
    op, t, _meta = load_operator(source)
    from .io import matrix_to_json, operator_to_json

    doc = operator_to_json(op, metadata={"source": source})
    if t is not None:
        doc["T"] = matrix_to_json(t)
    _write_json(doc, args.json_out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# experiment


def cmd_experiment(args) -> int:
    from .io import operator_digest

    kind = args.kind
    seed = args.seed
    rows: list[dict]
    if kind == "blowup":
        from .numlab import blowup_experiment

        if not args.op:
            raise CliError("blowup needs --op")
        op, _t, _m = load_operator(args.op)
        spec = _parse_grid(args.grid, op.n, (1024, 4.0))
        scales = _parse_floats(args.scales or "4,8,16,32")
        e = _parse_rationals(args.direction, op.dim_e)
        try:
            rows, manifest = blowup_experiment(
                op, e, args.ell, scales, spec, seed=seed,
                digest=operator_digest(op),
            )
        except ValueError as exc:
            raise CliError(str(exc))
        flagged = any(
            not r["converged"] or not r["nyquist_margin_ok"] for r in rows
        )
    elif kind == "necessity":
        from .numlab import necessity_experiment

        spec = _parse_grid(args.grid, 2, (512, 40.0))
        exps = _parse_floats(args.scales or "1,0.5,0.3333333333333333,0.25")
        rows, manifest = necessity_experiment(
            args.field or "gaussian", exps, spec, seed=seed
        )
        flagged = any(r["scale_err"] > 0.02 for r in rows)
    elif kind == "duality":
        from .numlab import duality_experiment

        spec = _parse_grid(args.grid, 2, (512, 40.0))
        exps = _parse_floats(args.scales or "1,0.5,0.3333333333333333,0.25")
        rows, manifest = duality_experiment(
            args.field or "curl-potential", exps, spec, sigma=1.5, seed=seed
        )
        if args.op:
            op, _t, _m = load_operator(args.op)
            manifest["operator_digest"] = operator_digest(op)
        flagged = False
    elif kind == "inequality":
        from .numlab import INEQUALITY_FAMILIES, inequality_experiment

        family = args.family
        if family not in INEQUALITY_FAMILIES:
            raise CliError(
                f"--family must be one of {', '.join(INEQUALITY_FAMILIES)}"
            )
        rows, manifest = inequality_experiment(family, seed=seed)
        flagged = any(not r.get("converged", True) for r in rows)
    else:
        raise CliError(f"unknown experiment kind {kind!r}")

    csv_path = args.csv_out or f"{kind}.csv"
    _write_csv(rows, csv_path)
    manifest["csv"] = csv_path
    if not args.no_figure:
        fig = _render_figure(rows, csv_path, manifest.get("kind", kind))
        if fig:
            manifest["figure"] = fig
    _write_json(manifest, args.json_out or os.path.splitext(csv_path)[0] + ".json")
    return EXIT_UNDECIDED if flagged else EXIT_OK


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError as exc:
        raise CliError(f"bad numeric list {text!r}: {exc}")


def _parse_rationals(text: Optional[str], expected: int):
    from fractions import Fraction

    if not text:
        raise CliError("--e is required (comma-separated rationals)")
    try:
        vals = [Fraction(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad rational list {text!r}: {exc}")
    if len(vals) != expected:
        raise CliError(f"direction needs {expected} entries, got {len(vals)}")
    return vals


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symlab",
        description="Exact classification of differential operator symbols "
        "with certificates, plus a spectral experiment lab.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="classify an operator and emit a report")
    pa.add_argument("source", help="operator JSON path or catalog:<name>?<params>")
    pa.add_argument("--seed", type=int, default=0)
    pa.add_argument("--depth", type=int, default=24)
    pa.add_argument("--as", dest="as_role", choices=("operator", "constraint"),
                    default="operator")
    pa.add_argument("--json", dest="json_out", default=None)
    pa.set_defaults(fn=cmd_analyze)

    pc = sub.add_parser("compat", help="build and verify the annihilating symbol")
    pc.add_argument("source")
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--json", dest="json_out", default=None)
    pc.set_defaults(fn=cmd_compat)

    pv = sub.add_parser("verify", help="re-check every certificate in a report")
    pv.add_argument("report")
    pv.add_argument("--json", dest="json_out", default=None)
    pv.set_defaults(fn=cmd_verify)

    pk = sub.add_parser("catalog", help="list or emit built-in operators")
    pk.add_argument("action", choices=("list", "emit"))
    pk.add_argument("name", nargs="?", default="")
    pk.add_argument("--json", dest="json_out", default=None)
    pk.set_defaults(fn=cmd_catalog)

    pe = sub.add_parser("experiment", help="run a numerical experiment")
    pe.add_argument("kind", choices=("blowup", "inequality", "necessity", "duality"))
    pe.add_argument("--op", default=None)
    pe.add_argument("--e", dest="direction", default=None,
                    help="codomain direction (comma-separated rationals)")
    pe.add_argument("--ell", type=int, default=0,
                    help="derivative order measured in the blowup ratio")
    pe.add_argument("--lambda", dest="scales", default=None,
                    help="schedule (comma-separated)")
    pe.add_argument("--family", default=None, help="inequality family")
    pe.add_argument("--field", default=None, help="test field kind")
    pe.add_argument("--grid", default=None, help="N,T")
    pe.add_argument("--seed", type=int, default=0)
    pe.add_argument("--csv", dest="csv_out", default=None)
    pe.add_argument("--json", dest="json_out", default=None)
    pe.add_argument("--no-figure", action="store_true")
    pe.set_defaults(fn=cmd_experiment)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    _setup_threads()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
