"""Command-line front end for counting, enumeration, verification, and
Yang-Baxter analysis.

Exit codes: 0 when the requested command succeeds (and any check it ran
passed), 1 when a verification fails (the report carries a
counterexample), 2 on usage, input, or size-guard errors.  Randomized
suites take --seed (default 0), so runs are reproducible.  Output is
JSON with sorted keys; the tabular commands also accept --format csv.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from itertools import product

from .algebra import GF2, GF3, rank
from .eightvertex import (
    count_total,
    count_valid_boundaries,
    count_with_boundary,
    defect_map,
    enumerate_eight,
    is_admissible_eight,
)
from .forms_rect import (
    antiderivative,
    count_colorings,
    count_six,
    coloring_from_form,
    enumerate_closed,
    enumerate_six,
    exterior_derivative,
    form_from_coloring,
    is_admissible_six,
    random_closed_form,
    random_proper_coloring,
    state_to_form,
)
from .grid import (
    GridShape,
    SIZE_GUARD_BITS,
    SizeGuardError,
    StateFormatError,
    boundary_of,
    deserialize_boundary,
    deserialize_state,
    edges_at_vertex,
    serialize_state,
)
from .toroidal import (
    CohomologyDecomposition,
    PeriodicField,
    ToroidalOneForm,
    decompose,
    enumerate_six_toroidal,
    is_closed_toroidal,
    reconstruct,
    sparse_fibers,
    toroidal_derivatives,
)
from .yangbaxter import (
    RESIDUALS28_LABELS,
    WeightFormatError,
    check_necessary_conditions,
    deserialize_weights,
    partition_function,
    residuals28,
    serialize_weights,
    solve_R,
    star_triangle_residuals,
    yb_commutator,
)


class CLIError(Exception):
    """Input or precondition problem that maps to exit code 2."""


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CLIError(f"cannot read {path}: {e.strerror or e}") from None


def _load_state(path: str):
    return deserialize_state(_read_text(path))


def _load_boundary(path: str, field):
    b = deserialize_boundary(_read_text(path))
    if b.field is not field:
        raise CLIError(
            f"boundary file {path} is over {b.field.name}, expected {field.name}"
        )
    return b


def _load_weights(path: str):
    return deserialize_weights(_read_text(path))


def _shape(args) -> GridShape:
    try:
        return GridShape(args.m, args.n)
    except ValueError as e:
        raise CLIError(str(e)) from None


def _check_shape(b, shape: GridShape, what: str) -> None:
    if b.shape != shape:
        raise CLIError(
            f"{what} is for shape ({b.shape.m}, {b.shape.n}), "
            f"requested ({shape.m}, {shape.n})"
        )


def _state_doc(state) -> dict:
    return json.loads(serialize_state(state))


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _edge_headers(shape: GridShape) -> list:
    heads = [f"f[{i}][{j}]" for i in range(1, shape.m + 1) for j in range(1, shape.n + 2)]
    heads += [f"g[{i}][{j}]" for i in range(1, shape.m + 2) for j in range(1, shape.n + 1)]
    return heads


def _emit_csv(header, rows) -> None:
    writer = csv.writer(sys.stdout)
    writer.writerow(header)
    writer.writerows(rows)


# -- count ------------------------------------------------------------


def cmd_count(args) -> int:
    shape = _shape(args)
    if args.model == "eight":
        if args.boundary is not None:
            b = _load_boundary(args.boundary, GF2)
            _check_shape(b, shape, "boundary")
            _emit({"count": count_with_boundary(b)})
        else:
            _emit({"total": count_total(shape)})
        return 0
    if args.model == "toroidal":
        if args.boundary is not None:
            raise CLIError("toroidal counting does not take a boundary file")
        _emit({"count": len(enumerate_six_toroidal(shape, force=args.force))})
        return 0
    if args.check_colorings:
        states = count_six(shape, force=args.force)
        colorings = count_colorings(shape.m + 1, shape.n + 1, force=args.force)
        _emit({
            "states": states,
            "colorings": colorings,
            "match": colorings == 3 * states,
        })
        return 0 if colorings == 3 * states else 1
    if args.boundary is not None:
        b = _load_boundary(args.boundary, GF3)
        _check_shape(b, shape, "boundary")
        key = b.edge_tuple()
        hits = sum(
            1
            for st in enumerate_six(shape, force=args.force)
            if boundary_of(st).edge_tuple() == key
        )
        _emit({"count": hits})
        return 0
    _emit({"count": count_six(shape, force=args.force)})
    return 0


# -- enumerate --------------------------------------------------------


def cmd_enumerate(args) -> int:
    shape = _shape(args)
    if args.model == "eight":
        boundary = None
        if args.boundary is not None:
            boundary = _load_boundary(args.boundary, GF2)
            _check_shape(boundary, shape, "boundary")
        states = enumerate_eight(shape, boundary=boundary, force=args.force)
    elif args.model == "toroidal":
        if args.boundary is not None:
            raise CLIError("toroidal enumeration does not take a boundary file")
        states = enumerate_six_toroidal(shape, force=args.force)
    else:
        states = enumerate_six(shape, force=args.force)
        if args.boundary is not None:
            b = _load_boundary(args.boundary, GF3)
            _check_shape(b, shape, "boundary")
            key = b.edge_tuple()
            states = [st for st in states if boundary_of(st).edge_tuple() == key]
    if args.format == "csv":
        _emit_csv(_edge_headers(shape), (st.edge_tuple() for st in states))
    else:
        _emit({"count": len(states), "states": [_state_doc(st) for st in states]})
    return 0


# -- verify suites ----------------------------------------------------


def _verify_poincare(args) -> tuple:
    shape = _shape(args)
    rng = random.Random(args.seed)
    basis_bits = 2 * (shape.m * shape.n + shape.m + shape.n)
    exhaustive = args.force or basis_bits <= SIZE_GUARD_BITS
    if exhaustive:
        forms = enumerate_closed(shape, force=args.force)
        mode = "exhaustive"
    else:
        forms = [random_closed_form(shape, rng) for _ in range(args.samples)]
        mode = "random"
    checked = 0
    for w in forms:
        dw = exterior_derivative(antiderivative(w))
        if (dw.fx, dw.gy) != (w.fx, w.gy):
            payload = {
                "suite": "poincare",
                "passed": False,
                "counterexample": {"fx": [list(r) for r in w.fx],
                                   "gy": [list(r) for r in w.gy]},
            }
            return payload, False
        checked += 1
    return {"suite": "poincare", "shape": [shape.m, shape.n], "mode": mode,
            "checked": checked, "passed": True}, True


def _verify_bijection(args) -> tuple:
    shape = _shape(args)
    rng = random.Random(args.seed)
    checked = 0
    for st in enumerate_six(shape, force=args.force):
        w = state_to_form(st)
        for t in (0, 1, 2):
            w2, t2 = form_from_coloring(coloring_from_form(w, t))
            if t2 != t or (w2.fx, w2.gy) != (w.fx, w.gy):
                return {"suite": "bijection", "passed": False,
                        "counterexample": _state_doc(st) | {"t": t}}, False
            checked += 1
    for _ in range(args.samples):
        c = random_proper_coloring(shape, rng)
        w, t = form_from_coloring(c)
        c2 = coloring_from_form(w, t)
        if c2.cells != c.cells:
            return {"suite": "bijection", "passed": False,
                    "counterexample": {"cells": [list(r) for r in c.cells]}}, False
        checked += 1
    return {"suite": "bijection", "shape": [shape.m, shape.n],
            "checked": checked, "passed": True}, True


def _iter_closed_toroidal(shape: GridShape):
    m, n = shape.m, shape.n
    for vals in product((0, 1, 2), repeat=2 * m * n):
        fx = tuple(tuple(vals[i * n + j] for j in range(n)) for i in range(m))
        gy = tuple(
            tuple(vals[m * n + i * n + j] for j in range(n)) for i in range(m)
        )
        w = ToroidalOneForm(shape=shape, fx=fx, gy=gy)
        if is_closed_toroidal(w):
            yield w


def _verify_cohomology(args) -> tuple:
    shape = _shape(args)
    try:
        PeriodicField(shape=shape, values=tuple((0,) * shape.n for _ in range(shape.m)))
    except ValueError as e:
        raise CLIError(str(e)) from None
    rng = random.Random(args.seed)
    m, n = shape.m, shape.n
    exhaustive = args.force or 4 * m * n <= SIZE_GUARD_BITS
    checked = 0
    if exhaustive:
        mode = "exhaustive"
        for w in _iter_closed_toroidal(shape):
            dec = decompose(w)
            w2 = reconstruct(dec)
            if (w2.fx, w2.gy) != (w.fx, w.gy) or dec.h.at(1, 1) != 0:
                return {"suite": "cohomology", "passed": False,
                        "counterexample": {"fx": [list(r) for r in w.fx],
                                           "gy": [list(r) for r in w.gy]}}, False
            checked += 1
        # uniqueness: no potential h makes r dx + s dy exact unless r = s = 0
        for r, s in product((0, 1, 2), repeat=2):
            if (r, s) == (0, 0):
                continue
            for hv in product((0, 1, 2), repeat=m * n):
                h = PeriodicField(
                    shape=shape,
                    values=tuple(tuple(hv[i * n + j] for j in range(n)) for i in range(m)),
                )
                dh = toroidal_derivatives(h)
                if all(x == r for row in dh.fx for x in row) and all(
                    x == s for row in dh.gy for x in row
                ):
                    return {"suite": "cohomology", "passed": False,
                            "counterexample": {"r": r, "s": s,
                                               "h": [list(rw) for rw in h.values]}}, False
    else:
        mode = "random"
        for _ in range(args.samples):
            vals = [[rng.randrange(3) for _ in range(n)] for _ in range(m)]
            vals[0][0] = 0
            h = PeriodicField(shape=shape, values=tuple(tuple(rw) for rw in vals))
            r, s = rng.randrange(3), rng.randrange(3)
            w = reconstruct(CohomologyDecomposition(r=r, s=s, h=h))
            dec = decompose(w)
            if (dec.r, dec.s, dec.h.values) != (r, s, h.values):
                return {"suite": "cohomology", "passed": False,
                        "counterexample": {"r": r, "s": s,
                                           "h": [list(rw) for rw in h.values]}}, False
            checked += 1
    return {"suite": "cohomology", "shape": [m, n], "mode": mode,
            "checked": checked, "passed": True}, True


def _verify_sparse_fibers(args) -> tuple:
    shape = _shape(args)
    try:
        entries = sparse_fibers(shape, force=args.force)
    except ValueError as e:
        raise CLIError(str(e)) from None
    total = len(enumerate_six_toroidal(shape, force=args.force))
    report = []
    seen = 0
    for fe in entries:
        report.append({
            "h": [list(r) for r in fe.h.values],
            "r_choices": list(fe.r_choices),
            "s_choices": list(fe.s_choices),
            "fiber_size": fe.fiber_size,
        })
        seen += fe.fiber_size
    passed = seen == total and all(
        fe.fiber_size == len(fe.r_choices) * len(fe.s_choices) for fe in entries
    )
    if args.format == "csv":
        _emit_csv(
            ["h", "r_choices", "s_choices", "fiber_size"],
            (
                [
                    json.dumps(e["h"]),
                    " ".join(map(str, e["r_choices"])),
                    " ".join(map(str, e["s_choices"])),
                    e["fiber_size"],
                ]
                for e in report
            ),
        )
    else:
        _emit({"suite": "sparse-fibers", "shape": [shape.m, shape.n],
               "fibers": report, "states": total, "passed": passed})
    return None, passed


def _verify_defect_rank(args) -> tuple:
    shape = _shape(args)
    rk = rank(defect_map(shape).matrix)
    expected = shape.m * shape.n
    total = count_total(shape)
    payload = {
        "suite": "defect-rank",
        "shape": [shape.m, shape.n],
        "rank": rk,
        "expected_rank": expected,
        "total_states": total,
        "valid_boundaries": count_valid_boundaries(shape),
    }
    passed = rk == expected
    if shape.edge_count <= SIZE_GUARD_BITS or args.force:
        brute = len(enumerate_eight(shape, method="brute", force=args.force))
        payload["brute_total"] = brute
        passed = passed and brute == total
    payload["passed"] = passed
    return payload, passed


def _verify_state(args) -> tuple:
    if args.infile is None:
        raise CLIError("verify state requires --in FILE")
    state = _load_state(args.infile)
    if args.model == "eight":
        admissible = is_admissible_eight(state)
    else:
        try:
            admissible = is_admissible_six(state)
        except ValueError as e:
            raise CLIError(str(e)) from None
    if admissible:
        return {"admissible": True}, True
    m, n = state.shape.m, state.shape.n
    bad = next(
        (i, j)
        for i in range(1, m + 1)
        for j in range(1, n + 1)
        if not _vertex_ok(state, i, j, args.model)
    )
    return {"admissible": False,
            "counterexample": {"vertex": list(bad),
                               "edges": list(edges_at_vertex(state, *bad))}}, False


def _vertex_ok(state, i: int, j: int, model: str) -> bool:
    left, top, right, bottom = edges_at_vertex(state, i, j)
    if model == "eight":
        return (left + top + right + bottom) % 2 == 0
    return (right - left) % 3 == (top - bottom) % 3


def cmd_verify(args) -> int:
    suites = {
        "poincare": _verify_poincare,
        "bijection": _verify_bijection,
        "cohomology": _verify_cohomology,
        "sparse-fibers": _verify_sparse_fibers,
        "defect-rank": _verify_defect_rank,
        "state": _verify_state,
    }
    payload, passed = suites[args.suite](args)
    if payload is not None:
        _emit(payload)
    return 0 if passed else 1


# -- ybe --------------------------------------------------------------


def cmd_ybe(args) -> int:
    if args.action in ("check", "residuals"):
        r = _load_weights(args.r)
        s = _load_weights(args.s)
        t = _load_weights(args.t)
    else:
        s = _load_weights(args.s)
        t = _load_weights(args.t)
    if args.action == "check":
        zero = yb_commutator(r, s, t).is_zero()
        _emit({"commutator_zero": zero})
        return 0 if zero else 1
    if args.action == "residuals":
        r64 = star_triangle_residuals(r, s, t)
        r28 = residuals28(r, s, t)
        if args.format == "csv":
            rows = [["star", i, "", str(v)] for i, v in enumerate(r64)]
            rows += [
                ["eq", i, RESIDUALS28_LABELS[i], str(v)] for i, v in enumerate(r28)
            ]
            _emit_csv(["kind", "index", "label", "value"], rows)
        else:
            _emit({
                "residuals64": [str(v) for v in r64],
                "residuals28": [
                    {"label": RESIDUALS28_LABELS[i], "value": str(v)}
                    for i, v in enumerate(r28)
                ],
                "all_zero": not any(r64) and not any(r28),
            })
        return 0
    if args.action == "conditions":
        try:
            report = check_necessary_conditions(s, t)
        except ValueError as e:
            raise CLIError(str(e)) from None
        _emit(report.as_dict())
        return 0 if report.all_hold else 1
    # solve
    report = solve_R(s, t, scan_range=args.scan_range)
    payload = {
        "dimension": report.dimension,
        "basis": [[str(x) for x in vec] for vec in report.basis],
        "scanned": report.scanned,
    }
    if report.witness is not None:
        payload["witness"] = json.loads(serialize_weights(report.witness))
        payload["witness_commutator_zero"] = yb_commutator(
            report.witness, s, t
        ).is_zero()
    else:
        payload["witness"] = None
        payload["message"] = "none found in scan"
    _emit(payload)
    return 0 if report.witness is not None else 1


# -- partition --------------------------------------------------------


def cmd_partition(args) -> int:
    shape = _shape(args)
    w = _load_weights(args.weights)
    boundary = None
    if args.boundary is not None:
        field = GF2 if args.model == "eight" else GF3
        boundary = _load_boundary(args.boundary, field)
        _check_shape(boundary, shape, "boundary")
    try:
        z = partition_function(w, shape, args.model, boundary=boundary, force=args.force)
    except ValueError as e:
        raise CLIError(str(e)) from None
    _emit({"value": str(z)})
    return 0


# -- parser -----------------------------------------------------------


def _add_shape_args(p) -> None:
    p.add_argument("--m", type=int, required=True, help="rows of vertices")
    p.add_argument("--n", type=int, required=True, help="columns of vertices")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vertexforms",
        description="Exact six- and eight-vertex model computations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count admissible states")
    _add_shape_args(p)
    p.add_argument("--model", choices=("six", "eight", "toroidal"), default="six")
    p.add_argument("--boundary", help="boundary JSON file to fix")
    p.add_argument("--check-colorings", action="store_true",
                   help="cross-check six-vertex count against 3-colorings")
    p.add_argument("--force", action="store_true", help="override the size guard")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list admissible states")
    _add_shape_args(p)
    p.add_argument("--model", choices=("six", "eight", "toroidal"), default="six")
    p.add_argument("--boundary", help="boundary JSON file to fix")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--force", action="store_true", help="override the size guard")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run a verification suite")
    vsub = p.add_subparsers(dest="suite", required=True)
    for name in ("poincare", "bijection", "cohomology", "sparse-fibers", "defect-rank"):
        vp = vsub.add_parser(name)
        _add_shape_args(vp)
        vp.add_argument("--seed", type=int, default=0)
        vp.add_argument("--samples", type=int, default=500,
                        help="random checks when exhaustive search is too large")
        vp.add_argument("--force", action="store_true", help="override the size guard")
        if name == "sparse-fibers":
            vp.add_argument("--format", choices=("json", "csv"), default="json")
        vp.set_defaults(func=cmd_verify)
    vp = vsub.add_parser("state")
    vp.add_argument("--in", dest="infile", required=True, help="state JSON file")
    vp.add_argument("--model", choices=("six", "eight"), default="six")
    vp.set_defaults(func=cmd_verify)

    p = sub.add_parser("ybe", help="Yang-Baxter checks and solving")
    ysub = p.add_subparsers(dest="action", required=True)
    for name in ("check", "residuals"):
        yp = ysub.add_parser(name)
        yp.add_argument("--r", required=True, help="R weights JSON file")
        yp.add_argument("--s", required=True, help="S weights JSON file")
        yp.add_argument("--t", required=True, help="T weights JSON file")
        if name == "residuals":
            yp.add_argument("--format", choices=("json", "csv"), default="json")
        yp.set_defaults(func=cmd_ybe)
    for name in ("conditions", "solve"):
        yp = ysub.add_parser(name)
        yp.add_argument("--s", required=True, help="S weights JSON file")
        yp.add_argument("--t", required=True, help="T weights JSON file")
        if name == "solve":
            yp.add_argument("--scan-range", type=int, default=2,
                            help="coefficient range for the nonzero-cd scan")
        yp.set_defaults(func=cmd_ybe)

    p = sub.add_parser("partition", help="exact partition function")
    _add_shape_args(p)
    p.add_argument("--weights", required=True, help="weights JSON file")
    p.add_argument("--model", choices=("six", "eight"), default="six")
    p.add_argument("--boundary", help="boundary JSON file to fix")
    p.add_argument("--force", action="store_true", help="override the size guard")
    p.set_defaults(func=cmd_partition)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (CLIError, SizeGuardError, StateFormatError, WeightFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
