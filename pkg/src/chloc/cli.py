"""Command-line front end.

Subcommands::

    chloc chain analyze A1 .. AN
    chloc ifunction A1 .. AN --k-max K [--verify-pf] [--limit]
    chloc classes (hodge|general|identity|tautrel) --job FILE [--q-max Q]

Exit codes: 0 when every check passes, 1 for usage or input/schema errors,
2 when the computation completed but reported a mathematical failure
(non-convergence, a failed identity, a failed Picard-Fuchs coefficient).

Reports are byte-deterministic for identical inputs.  The environment
variable ``CHLOC_Q_MAX`` overrides the default series truncation order for
``classes`` jobs (a ``--q-max`` flag or a ``q_max`` entry in the job file
takes precedence).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from random import Random

from .chains import chain_solve, grading_element, is_calabi_yau, symmetry_group, weight_sequence
from .charclasses import KClass, euler_identity_check
from .classexpr import parse_class_expr
from .ifunction import i_coefficient, nonequivariant_limit, picard_fuchs_check
from .localize import LocInput, crosscheck_factors, hodge_product, localization_product
from .rings import Ring
from .sampling import sample_kclass, sample_weight


class JobError(ValueError):
    """Schema violation in a job file, carrying the JSON path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"schema error at {path}: {message}")


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the contract here is 1.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _tuple_str(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


# -- chain analyze --------------------------------------------------------------


def _cmd_chain_analyze(args) -> int:
    chain = chain_solve(args.exponents)
    lines = [
        f"chain: {chain.polynomial_str()}",
        f"exponents: {_tuple_str(chain.exponents)}",
        f"weights: {_tuple_str(chain.weights)}",
        f"degree: {chain.degree}",
        f"charges: {_tuple_str(chain.charges)}",
        f"calabi_yau: {'true' if is_calabi_yau(chain) else 'false'}",
        f"aut_order: {len(symmetry_group(chain))}",
        f"grading_element: {grading_element(chain)}",
        f"q_weights: {_tuple_str(weight_sequence(chain))}",
    ]
    print("\n".join(lines))
    return 0


# -- ifunction -------------------------------------------------------------------


def _cmd_ifunction(args) -> int:
    chain = chain_solve(args.exponents)
    if not is_calabi_yau(chain):
        raise ValueError(
            f"chain {_tuple_str(chain.exponents)} is not Calabi-Yau "
            f"(degree {chain.degree} != weight sum {sum(chain.weights)})"
        )
    if args.k_max < 1:
        raise ValueError("--k-max must be a positive integer")
    lines = [
        f"chain: {_tuple_str(chain.exponents)}  degree {chain.degree}"
        f"  weights {_tuple_str(chain.weights)}"
    ]
    for k in range(1, args.k_max + 1):
        ic = i_coefficient(chain, k)
        kind = "broad" if ic.is_broad else "narrow"
        lines.append(f"I_{k} = {ic.value}  [sector {ic.sector}, {kind}]")
        if args.limit:
            lines.append(f"limit I_{k} = {nonequivariant_limit(ic)}")
    status = 0
    if args.verify_pf:
        report = picard_fuchs_check(chain, args.k_max + chain.degree)
        for item in report.items:
            if item.ok:
                lines.append(f"pf t^{item.m}: pass")
            else:
                lines.append(f"pf t^{item.m}: FAIL  residual {item.residual}")
        good = sum(1 for item in report.items if item.ok)
        lines.append(f"pf: {good}/{len(report.items)} pass")
        if good != len(report.items):
            status = 2
    print("\n".join(lines))
    return status


# -- classes: job file handling -----------------------------------------------------


def _require(cond: bool, path: str, message: str):
    if not cond:
        raise JobError(path, message)


def _load_job(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise JobError("$", f"cannot read job file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise JobError("$", f"invalid JSON: {exc}") from exc
    _require(isinstance(doc, dict), "$", "job document must be an object")
    return doc


def _build_ring(doc: dict, q_max_flag: int | None) -> Ring:
    _require("chow" in doc, "chow", "missing section")
    chow = doc["chow"]
    _require(isinstance(chow, dict), "chow", "must be an object")
    gens = chow.get("generators")
    _require(isinstance(gens, list), "chow.generators", "must be a list")
    pairs = []
    for i, g in enumerate(gens):
        p = f"chow.generators[{i}]"
        _require(isinstance(g, dict), p, "must be an object")
        _require(isinstance(g.get("name"), str), f"{p}.name", "must be a string")
        _require(
            isinstance(g.get("degree"), int) and g["degree"] > 0,
            f"{p}.degree",
            "must be a positive integer",
        )
        pairs.append((g["name"], g["degree"]))
    trunc = chow.get("truncation")
    _require(
        isinstance(trunc, int) and trunc >= 0,
        "chow.truncation",
        "must be a non-negative integer",
    )
    if q_max_flag is not None:
        q_max = q_max_flag
    elif "q_max" in chow:
        _require(isinstance(chow["q_max"], int), "chow.q_max", "must be an integer")
        q_max = chow["q_max"]
    elif os.environ.get("CHLOC_Q_MAX"):
        try:
            q_max = int(os.environ["CHLOC_Q_MAX"])
        except ValueError as exc:
            raise JobError("$", "CHLOC_Q_MAX must be an integer") from exc
    else:
        q_max = None
    try:
        return Ring(pairs, trunc, q_max)
    except ValueError as exc:
        raise JobError("chow", str(exc)) from exc


def _build_classes(doc: dict, ring: Ring) -> dict[str, KClass]:
    out: dict[str, KClass] = {}
    entries = doc.get("classes", [])
    _require(isinstance(entries, list), "classes", "must be a list")
    for i, entry in enumerate(entries):
        p = f"classes[{i}]"
        _require(isinstance(entry, dict), p, "must be an object")
        name = entry.get("name")
        _require(isinstance(name, str) and bool(name), f"{p}.name", "must be a string")
        _require(name not in out, f"{p}.name", f"duplicate class name {name!r}")
        rank = entry.get("rank")
        _require(isinstance(rank, int), f"{p}.rank", "must be an integer")
        ch_map = entry.get("ch", {})
        _require(isinstance(ch_map, dict), f"{p}.ch", "must be an object")
        ch = [ring.zero() for _ in range(ring.truncation)]
        for key, expr in ch_map.items():
            kp = f"{p}.ch.{key}"
            _require(key.isdigit() and int(key) >= 1, kp, "key must be a degree >= 1")
            l = int(key)
            _require(l <= ring.truncation, kp, "degree exceeds the truncation order")
            _require(isinstance(expr, str), kp, "must be a class-expression string")
            try:
                ch[l - 1] = parse_class_expr(expr, ring)
            except ValueError as exc:
                raise JobError(kp, str(exc)) from exc
        try:
            out[name] = KClass(ring, rank, ch)
        except ValueError as exc:
            raise JobError(p, str(exc)) from exc
    return out


def _resolve_class(name, classes: dict[str, KClass], ring: Ring, path: str) -> KClass:
    if name is None:
        return KClass.zero(ring)
    _require(isinstance(name, str), path, "must be a class name")
    _require(name in classes, path, f"unresolved class name {name!r}")
    return classes[name]


def _weighted_list(doc, classes, ring, path) -> list[tuple[KClass, int]]:
    _require(isinstance(doc, list), path, "must be a list")
    out = []
    for i, item in enumerate(doc):
        p = f"{path}[{i}]"
        _require(isinstance(item, dict), p, "must be an object")
        x = _resolve_class(item.get("class"), classes, ring, f"{p}.class")
        w = item.get("weight")
        _require(isinstance(w, int) and w != 0, f"{p}.weight", "must be a nonzero integer")
        out.append((x, w))
    return out


def _series_lines(result) -> list[str]:
    lines = [f"series: {result.series}"]
    lines.append(f"convergent: {'true' if result.convergent else 'false'}")
    for e, c in result.relations:
        lines.append(f"relation {e} {c}")
    if result.convergent:
        lines.append(f"limit = {result.limit}")
    return lines


def _cmd_classes(args) -> int:
    doc = _load_job(args.job)
    ring = _build_ring(doc, args.q_max)
    classes = _build_classes(doc, ring)
    chain = None
    if "chain" in doc:
        _require(
            isinstance(doc["chain"], list)
            and all(isinstance(x, int) for x in doc["chain"]),
            "chain",
            "must be a list of integers",
        )
        try:
            chain = chain_solve(doc["chain"])
        except ValueError as exc:
            raise JobError("chain", str(exc)) from exc
    job = doc.get("job", {})
    _require(isinstance(job, dict), "job", "must be an object")

    lines = [
        f"mode: {args.mode}",
        f"q_max: {ring.q_max}",
        "job: " + json.dumps(job, sort_keys=True, separators=(", ", ": ")),
    ]
    status = 0

    if args.mode == "identity":
        items: list[tuple[str, KClass, int]] = []
        if "pairs" in job:
            for i, pair in enumerate(
                job["pairs"] if isinstance(job["pairs"], list) else ()
            ):
                p = f"job.pairs[{i}]"
                _require(isinstance(pair, dict), p, "must be an object")
                x = _resolve_class(pair.get("class"), classes, ring, f"{p}.class")
                w = pair.get("weight")
                _require(
                    isinstance(w, int) and w != 0,
                    f"{p}.weight",
                    "must be a nonzero integer",
                )
                items.append((f"{pair['class']}@{w}", x, w))
        else:
            _require(
                isinstance(job.get("seed"), int), "job.seed", "must be an integer"
            )
            _require(
                isinstance(job.get("count"), int) and job["count"] > 0,
                "job.count",
                "must be a positive integer",
            )
            rng = Random(job["seed"])
            for i in range(job["count"]):
                x = sample_kclass(rng, ring)
                w = sample_weight(rng)
                items.append((f"sample[{i}]@{w}", x, w))
        good = 0
        for label, x, w in items:
            check = euler_identity_check(x, w)
            if check.equal:
                good += 1
                lines.append(f"identity {label}: equal")
            else:
                lines.append(f"identity {label}: DIFFER  {check.difference}")
        lines.append(f"identity: {good}/{len(items)} equal")
        if good != len(items):
            status = 2

    elif args.mode == "hodge":
        hodge = _resolve_class(job.get("hodge"), classes, ring, "job.hodge")
        if chain is not None and "pushed_names" in job:
            names = job["pushed_names"]
            _require(
                isinstance(names, list), "job.pushed_names", "must be a list of names"
            )
            pushed_cls = [
                _resolve_class(nm, classes, ring, f"job.pushed_names[{i}]")
                for i, nm in enumerate(names)
            ]
            try:
                inp = LocInput.for_chain(ring, hodge, pushed_cls, chain)
            except ValueError as exc:
                raise JobError("job", str(exc)) from exc
        else:
            pushed = _weighted_list(job.get("pushed", []), classes, ring, "job.pushed")
            hw = job.get("hodge_weight")
            _require(
                isinstance(hw, int) and hw != 0,
                "job.hodge_weight",
                "must be a nonzero integer",
            )
            try:
                inp = LocInput(ring=ring, hodge=hodge, hodge_weight=hw, pushed=tuple(pushed))
            except ValueError as exc:
                raise JobError("job", str(exc)) from exc
        result = hodge_product(inp)
        lines += _series_lines(result)
        if not result.convergent:
            status = 2

    elif args.mode == "general":
        hodge = _resolve_class(job.get("hodge"), classes, ring, "job.hodge")
        hw = job.get("hodge_weight")
        _require(
            isinstance(hw, int) and hw != 0,
            "job.hodge_weight",
            "must be a nonzero integer",
        )
        v = _weighted_list(job.get("v", []), classes, ring, "job.v")
        t = _weighted_list(job.get("t", []), classes, ring, "job.t")
        n = _weighted_list(job.get("n", []), classes, ring, "job.n")
        try:
            result = localization_product(hodge, hw, v, t, n)
        except ValueError as exc:
            raise JobError("job", str(exc)) from exc
        lines += _series_lines(result)
        if not result.convergent:
            status = 2

    elif args.mode == "tautrel":
        if "factors" in job:
            factors = _weighted_list(job["factors"], classes, ring, "job.factors")
        else:
            _require(
                isinstance(job.get("seed"), int), "job.seed", "must be an integer"
            )
            _require(
                isinstance(job.get("count"), int) and job["count"] > 0,
                "job.count",
                "must be a positive integer",
            )
            rng = Random(job["seed"])
            factors = [
                (sample_kclass(rng, ring), sample_weight(rng))
                for _ in range(job["count"])
            ]
        report = crosscheck_factors(ring, factors)
        lines.append(f"euler_convergent: {'true' if report.euler_convergent else 'false'}")
        lines.append(
            f"hirzebruch_convergent: {'true' if report.hirzebruch_convergent else 'false'}"
        )
        for e, c in report.side_euler.negative_part():
            lines.append(f"relation euler {e} {c}")
        for e, c in report.side_hirzebruch.negative_part():
            lines.append(f"relation hirzebruch {e} {c}")
        if report.limits_equal is None:
            lines.append("limits_equal: n/a")
        else:
            lines.append(f"limits_equal: {'true' if report.limits_equal else 'false'}")
            lines.append(f"limit = {report.limit_euler}")
        lines.append(
            "span euler_in_hirzebruch: "
            + ("true" if report.span_euler_in_hirzebruch else "false")
        )
        lines.append(
            "span hirzebruch_in_euler: "
            + ("true" if report.span_hirzebruch_in_euler else "false")
        )
        lines.append(f"tautrel: {'pass' if report.passed else 'FAIL'}")
        if not report.passed:
            status = 2

    print("\n".join(lines))
    return status


# -- entry point -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chloc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    chain_p = sub.add_parser("chain", help="chain polynomial combinatorics")
    chain_sub = chain_p.add_subparsers(dest="subcommand", required=True)
    analyze = chain_sub.add_parser("analyze", help="solve and describe a chain")
    analyze.add_argument("exponents", nargs="+", type=int)
    analyze.set_defaults(func=_cmd_chain_analyze)

    ifun = sub.add_parser("ifunction", help="equivariant small I-function")
    ifun.add_argument("exponents", nargs="+", type=int)
    ifun.add_argument("--k-max", type=int, required=True)
    ifun.add_argument("--verify-pf", action="store_true")
    ifun.add_argument("--limit", action="store_true")
    ifun.set_defaults(func=_cmd_ifunction)

    classes = sub.add_parser("classes", help="characteristic-class jobs")
    classes.add_argument("mode", choices=["hodge", "general", "identity", "tautrel"])
    classes.add_argument("--job", required=True)
    classes.add_argument("--q-max", type=int, default=None)
    classes.set_defaults(func=_cmd_classes)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except JobError as exc:
        print(f"chloc: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        print(f"chloc: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
