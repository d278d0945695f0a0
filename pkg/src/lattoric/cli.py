"""Command-line front end.

Each subcommand reads a JSON problem (file argument or stdin), validates it
against the shipped schema and prints either text or, with --json, a JSON
report. Exit codes: 0 ok, 2 invalid input, 3 mathematical precondition
violated, 4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from functools import lru_cache
from importlib import resources

import jsonschema

from .code import (
    DEFAULT_BUDGET,
    SWEEP_BUDGET,
    BudgetExceeded,
    build_code,
    hirzebruch_params,
    minimum_distance_exhaustive,
    table_sweep,
)
from .field import FiniteField, field_from_json
from .intlat import IntMatrix, smith_normal_form
from .latideal import binomial_generators, hilbert_function, ideal_degree, regularity_bound, segment_mixed_volume
from .subgroup import (
    check_yq_correspondence,
    correct_lattice,
    count_points,
    enumerate_points,
    is_full_over,
    make_subgroup,
    parameterize,
    subgroup_from_z_coords,
)
from .toricvar import variety_from_json

EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_BUDGET = 0, 2, 3, 4

COMMANDS = ("snf", "count", "enumerate", "code", "table", "check", "correct-lattice", "hilbert", "degree")


class InputError(ValueError):
    pass


@lru_cache(maxsize=1)
def load_schema() -> dict:
    return json.loads(resources.files("lattoric").joinpath("schema.json").read_text())


def _path(err: jsonschema.ValidationError) -> str:
    out = "$"
    for part in err.absolute_path:
        out += f"[{part}]" if isinstance(part, int) else f".{part}"
    return out


def validate(command: str, problem) -> None:
    schema = load_schema()
    sub = dict(schema["commands"][command])
    sub["$defs"] = schema["$defs"]
    errors = sorted(jsonschema.Draft202012Validator(sub).iter_errors(problem), key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise InputError(f"{_path(err)}: {err.message}")


# --------------------------------------------------------------------------
# problem decoding


def _subgroup(problem: dict):
    x = variety_from_json(problem["variety"])
    lat = problem["lattice"]
    if "in_u_coords" in lat:
        s = make_subgroup(x, IntMatrix.from_json(lat["in_u_coords"]))
    else:
        s = subgroup_from_z_coords(x, [[int(v) for v in row] for row in lat["in_z_coords"]])
    return x, s


def _finite(data: dict) -> FiniteField:
    f = field_from_json(data)
    if not isinstance(f, FiniteField):
        raise InputError("a finite field is required")
    return f


def _matrix_text(name: str, m: IntMatrix) -> str:
    rows = [[str(v) for v in r] for r in m.tolist()]
    width = max((len(v) for r in rows for v in r), default=1)
    body = "\n".join("  [" + " ".join(v.rjust(width) for v in r) + "]" for r in rows)
    return f"{name} =\n{body}"


# --------------------------------------------------------------------------
# reports: each returns (json report, text)


def cmd_snf(problem: dict, args) -> tuple[dict, str]:
    b = IntMatrix.from_json(problem["matrix"])
    sd = smith_normal_form(b)
    report = {
        "A": sd.a.to_json(),
        "D": sd.d.to_json(),
        "C": sd.c.to_json(),
        "invariant_factors": list(sd.invariant_factors),
        "verified": sd.verify(b),
    }
    text = "\n".join(
        [_matrix_text("A", sd.a), _matrix_text("D", sd.d), _matrix_text("C", sd.c)]
        + [f"invariant factors: {tuple(sd.invariant_factors)}"]
    )
    return report, text


def cmd_count(problem: dict, args) -> tuple[dict, str]:
    _, s = _subgroup(problem)
    fields = problem.get("fields") or [problem["field"]]
    counts = []
    lines = [f"invariant factors: {tuple(s.invariant_factors)}"]
    for fd in fields:
        f = field_from_json(fd)
        n = count_points(s, f)
        entry = {"field": f.to_json(), "count": n}
        if isinstance(f, FiniteField):
            entry["full_over"] = is_full_over(s, f.q)
        counts.append(entry)
        lines.append(f"{f!r}: {n}")
    return {"invariant_factors": list(s.invariant_factors), "counts": counts}, "\n".join(lines)


def cmd_enumerate(problem: dict, args) -> tuple[dict, str]:
    _, s = _subgroup(problem)
    f = _finite(problem["field"])
    pm = parameterize(s, f)
    pts = enumerate_points(s, f)
    report = {
        "field": f.to_json(),
        "invariant_factors": list(s.invariant_factors),
        "parameterization": pm.to_json(),
        "count": len(pts),
        "points": [p.to_json() for p in pts],
    }
    lines = [_matrix_text("Q", pm.q_matrix), f"{len(pts)} points:"] + [f"  {p!r}" for p in pts]
    return report, "\n".join(lines)


def cmd_code(problem: dict, args) -> tuple[dict, str]:
    x, s = _subgroup(problem)
    f = _finite(problem["field"])
    c = build_code(x, s, f, problem["alpha"])
    report = c.to_json()
    if c.K == 0:
        report["zero_code"] = True
        text = f"alpha = {tuple(c.alpha)}: zero code, N = {c.N}, K = 0"
        return report, text
    minimum_distance_exhaustive(c, problem.get("budget", DEFAULT_BUDGET), threads=args.threads)
    report["delta"] = c.delta
    diag = s.ml.tolist()
    if x.hirzebruch_l is not None and len(c.alpha) == 2 and diag[0][1] == 0 and diag[1][0] == 0:
        c1, c2 = diag[0][0], diag[1][1]
        try:
            p = hirzebruch_params(x.hirzebruch_l, abs(c1), abs(c2), f.q, c.alpha)
            report["closed_form"] = {"N": p.N, "K": p.K, "delta": p.delta}
        except ValueError:
            pass
    return report, f"alpha = {tuple(c.alpha)}: [N, K, delta] = [{c.N}, {c.K}, {c.delta}]"


def _table_text(rows) -> str:
    cells = [(f"({r.alpha[0]}, {r.alpha[1]})", f"[{r.N}, {r.K}, {r.delta}]", r.method) for r in rows]
    w0 = max(len("alpha"), *(len(c[0]) for c in cells))
    w1 = max(len("[N, K, delta]"), *(len(c[1]) for c in cells))
    lines = [f"{'alpha'.ljust(w0)}  {'[N, K, delta]'.ljust(w1)}  method"]
    lines += [f"{a.ljust(w0)}  {b.ljust(w1)}  {m}" for a, b, m in cells]
    return "\n".join(lines)


def cmd_table(problem: dict, args) -> tuple[list, str]:
    rows = table_sweep(
        problem["l"],
        problem["c1"],
        problem["c2"],
        problem["q"],
        threads=args.threads,
        budget=problem.get("budget", SWEEP_BUDGET),
    )
    bad = [r for r in rows if r.mismatch]
    if bad:
        raise AssertionError(
            "closed form and brute force disagree at " + ", ".join(f"{r.alpha}: {r.closed} vs {r.brute}" for r in bad)
        )
    return [r.to_json() for r in rows], _table_text(rows)


def cmd_check(problem: dict, args) -> tuple[dict, str]:
    x = variety_from_json(problem["variety"])
    rep = check_yq_correspondence(x, IntMatrix.from_json(problem["Q"]), problem["q"])
    report = rep.to_json()
    lines = [
        f"L_Q inside L_beta: {rep.lq_in_lbeta}",
        f"image lattice saturated at q-1: {rep.saturated}",
        _matrix_text("ML of (L_Q cap L_beta) + (q-1)L_beta", rep.spec.ml),
        _matrix_text("ML of the vanishing lattice of Y_Q", rep.vanishing.ml),
    ]
    return report, "\n".join(lines)


def cmd_correct_lattice(problem: dict, args) -> tuple[dict, str]:
    _, s = _subgroup(problem)
    q = problem["q"]
    sp = correct_lattice(s, q)
    report = {"q": q, "original": s.to_json(), "corrected": sp.to_json(), "full_over": is_full_over(sp, q)}
    text = "\n".join(
        [
            f"original factors: {tuple(s.invariant_factors)}",
            f"corrected factors: {tuple(sp.invariant_factors)}",
            _matrix_text("ML'", sp.ml),
        ]
    )
    return report, text


def cmd_hilbert(problem: dict, args) -> tuple[dict, str]:
    _, s = _subgroup(problem)
    alphas = problem.get("alphas") or [problem["alpha"]]
    values = [{"alpha": list(a), "value": hilbert_function(s, a)} for a in alphas]
    text = "\n".join(f"H({tuple(v['alpha'])}) = {v['value']}" for v in values)
    return {"values": values}, text


def cmd_degree(problem: dict, args) -> tuple[dict, str]:
    x, s = _subgroup(problem)
    gens = binomial_generators(s)
    report = {
        "degree": ideal_degree(s),
        "mixed_volume": segment_mixed_volume(s),
        "invariant_factors": list(s.invariant_factors),
        **gens.to_json(),
    }
    ml = s.ml.tolist()
    if x.hirzebruch_l is not None and ml[0][1] == 0 and ml[1][0] == 0:
        report["regularity_bound"] = list(regularity_bound(x, abs(ml[0][0]), abs(ml[1][1])))
    lines = [
        f"degree: {report['degree']}",
        f"mixed volume: {report['mixed_volume']}",
        f"binomials ({'complete intersection' if gens.complete_intersection else 'sub-ideal'}):",
    ] + [f"  {b}" for b in gens]
    return report, "\n".join(lines)


HANDLERS = {
    "snf": cmd_snf,
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "code": cmd_code,
    "table": cmd_table,
    "check": cmd_check,
    "correct-lattice": cmd_correct_lattice,
    "hilbert": cmd_hilbert,
    "degree": cmd_degree,
}


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--threads", type=int, default=1, help="worker threads for the distance search")
    parser = argparse.ArgumentParser(prog="lattoric", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "table":
            p.add_argument("args", nargs="*", help="l c1 c2 q, or a JSON file (stdin if omitted)")
        else:
            p.add_argument("input", nargs="?", help="JSON problem file (stdin if omitted)")
    return parser


def _read_json(path: str | None, stdin) -> object:
    try:
        if path is None or path == "-":
            return json.load(stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_problem(args, stdin) -> object:
    if args.command != "table":
        return _read_json(args.input, stdin)
    vals = args.args
    if len(vals) == 4:
        try:
            l, c1, c2, q = (int(v) for v in vals)
        except ValueError:
            raise InputError("table expects four integers: l c1 c2 q") from None
        return {"l": l, "c1": c1, "c2": c2, "q": q}
    if len(vals) <= 1:
        return _read_json(vals[0] if vals else None, stdin)
    raise InputError("table expects four integers l c1 c2 q, or one JSON file")


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.threads < 1:
            raise InputError("--threads must be at least 1")
        problem = load_problem(args, stdin)
        validate(args.command, problem)
        report, text = HANDLERS[args.command](problem, args)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=stderr)
        return EXIT_BUDGET
    except ValueError as exc:  # every library precondition error derives from ValueError
        print(f"precondition violated: {exc}", file=stderr)
        return EXIT_MATH
    except AssertionError as exc:
        print(f"internal consistency check failed: {exc}", file=stderr)
        return 1
    if args.json:
        print(json.dumps(report), file=stdout)
    else:
        print(text, file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
