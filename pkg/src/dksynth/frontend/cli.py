"""Command-line driver.

Exit codes: 0 success, 1 input/format error, 2 unsupported radix,
3 verification failure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import warnings
from pathlib import Path

from .. import __version__
from ..cascade import (
    canonical_cell_count,
    count_cells,
    expression,
    format_word,
    upper_bound,
)
from ..dihedral import cayley_table, check_axioms, check_radix, make_group
from ..errors import InvalidRadixError, SizeError, SpecFormatError
from ..pipeline import VerificationError, synthesize
from ..simulate import verify
from ..spectral import TruthVector
from . import io
from .draw import render

EXIT_OK, EXIT_INPUT, EXIT_RADIX, EXIT_VERIFY = 0, 1, 2, 3
SWEEP_LIMIT = 3**8


def _fail(code: int, msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def cmd_synth(args) -> int:
    spec = io.load_function_spec(args.spec, strict=args.strict_fields)
    F = spec.truth_vector()
    result = synthesize(
        F,
        optimize_cascade=not args.no_opt,
        preserve_permutation=args.preserve_permutation,
        strict=args.strict_controls,
    )
    name = spec.name or Path(args.spec).stem
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    signed = args.signed
    provenance = {
        "tool": f"dksynth {__version__}",
        "source": str(args.spec),
        "passes": result.report.log(),
    }
    metrics = result.metrics()
    metrics["bound"] = upper_bound(F.n, F.k)
    files = {
        f"{name}.cascade.json": io.dump_cascade(result.cascade, signed),
        f"{name}.circuit.json": io.dump_circuit(result.circuit, provenance),
        f"{name}.metrics.json": json.dumps(metrics, indent=2) + "\n",
    }
    for fname, text in files.items():
        (out / fname).write_text(text)

    c = result.cascade
    print(f"spectrum:  {list(result.spectrum.signed() if signed else result.spectrum.w)}")
    print(f"canonical: {format_word(result.canonical, signed)}")
    print(f"word:      {expression(c, signed)}")
    print(f"cells:     {format_word(c, signed)}  (init {','.join(map(str, c.init))}; output rail {c.output_rail})")
    print(f"circuit:   {metrics['circuit_gates']} gates, {metrics['circuit_rail_gates']} on rails; "
          f"cells {metrics['cells']} <= bound {metrics['bound']}")
    print(f"verified:  {1 << F.n}/{1 << F.n} inputs")
    for fname in files:
        print(f"wrote {out / fname}")
    return EXIT_OK


def cmd_verify(args) -> int:
    circ, _ = io.load_circuit(args.circuit, strict=args.strict_fields)
    spec = io.load_function_spec(args.spec, strict=args.strict_fields)
    F = spec.truth_vector()
    if (circ.k, circ.n) != (F.k, F.n):
        return _fail(EXIT_INPUT, f"circuit is (n={circ.n}, k={circ.k}) but spec is (n={F.n}, k={F.k})")
    report = verify(circ, F)
    if report:
        print(f"equal: all {1 << F.n} inputs match")
        return EXIT_OK
    print(f"mismatch: {report.describe()}")
    return EXIT_VERIFY


def _functions(n: int, k: int, sample, seed):
    if sample is None:
        for values in itertools.product(range(k), repeat=1 << n):
            yield TruthVector(k=k, n=n, values=values)
        return
    rng = random.Random(seed)
    for _ in range(sample):
        yield TruthVector(k=k, n=n, values=[rng.randrange(k) for _ in range(1 << n)])


def sweep(n: int, k: int, sample=None, seed=0) -> dict:
    """Synthesise (and verify) every function, or ``sample`` random ones."""
    stats = {"functions": 0, "max_cells": 0, "sum_cells": 0, "max_gates": 0, "sum_gates": 0,
             "max_rail_gates": 0, "sum_rail_gates": 0}
    for F in _functions(n, k, sample, seed):
        result = synthesize(F)
        cells = count_cells(result.cascade).total
        m = result.circuit.metrics()
        stats["functions"] += 1
        for key, v in (("cells", cells), ("gates", m["gates"]), ("rail_gates", m["rail_gates"])):
            stats[f"max_{key}"] = max(stats[f"max_{key}"], v)
            stats[f"sum_{key}"] += v
    count = max(stats["functions"], 1)
    return {
        "functions": stats["functions"],
        "verified": stats["functions"],
        **{f"{stat}_{key}": (stats[f"max_{key}"] if stat == "max" else stats[f"sum_{key}"] / count)
           for key in ("cells", "gates", "rail_gates") for stat in ("max", "mean")},
    }


def cmd_bound(args) -> int:
    n, k = args.n, args.k
    check_radix(k)
    if n < 1:
        return _fail(EXIT_INPUT, f"n must be >= 1, got {n}")
    bound = upper_bound(n, k)
    print(f"n={n} k={k}")
    print(f"canonical cells (unmerged): {canonical_cell_count(n)}")
    print(f"canonical cells (merged):   {2 ** (n + 1)}")
    print(f"bound (optimized cells):    {bound}")
    if not (args.sweep or args.sample):
        return EXIT_OK
    if args.sample is None:
        total = k ** (1 << n)
        if total > SWEEP_LIMIT:
            return _fail(EXIT_INPUT, f"exhaustive sweep needs {total} functions (limit {SWEEP_LIMIT}); "
                                     f"use --sample N for random sampling")
    stats = sweep(n, k, args.sample, args.seed)
    mode = "sample" if args.sample is not None else "sweep"
    print(f"{mode}: {stats['functions']} functions, all verified")
    print(f"cells:      max {stats['max_cells']}  mean {stats['mean_cells']:.3f}")
    print(f"gates:      max {stats['max_gates']}  mean {stats['mean_gates']:.3f}")
    print(f"rail gates: max {stats['max_rail_gates']}  mean {stats['mean_rail_gates']:.3f}")
    if stats["max_cells"] > bound:
        return _fail(EXIT_VERIFY, f"bound violated: {stats['max_cells']} > {bound}")
    print(f"max cells {stats['max_cells']} <= bound {bound}")
    return EXIT_OK


def format_cayley(k: int) -> str:
    group = make_group(k)
    labels = group.labels()
    table = cayley_table(group)
    width = max(len(s) for s in labels) + 1
    lines = [" " * width + "|" + "".join(s.rjust(width) for s in labels)]
    lines.append("-" * width + "+" + "-" * (width * len(labels)))
    for label, row in zip(labels, table):
        lines.append(label.rjust(width) + "|" + "".join(labels[j].rjust(width) for j in row))
    return "\n".join(lines) + "\n"


def cmd_cayley(args) -> int:
    check_radix(args.k)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        group = make_group(args.k)
    print(f"D_{args.k}: order {group.order}; row x, column y -> x then y")
    print(format_cayley(args.k), end="")
    if not args.check:
        return EXIT_OK
    results = check_axioms(group)
    for name, ok in results.items():
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_OK if all(results.values()) else EXIT_VERIFY


def cmd_draw(args) -> int:
    circ, _ = io.load_circuit(args.circuit, strict=args.strict_fields)
    print(render(circ), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dksynth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"dksynth {__version__}")
    parser.add_argument("--strict-fields", action="store_true",
                        help="reject unknown fields in input files instead of warning")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesise a function spec into a cascade and circuit")
    p.add_argument("spec")
    p.add_argument("-o", "--output", default=".", help="output directory (default: .)")
    p.add_argument("--no-opt", action="store_true", help="skip cascade rewrites and circuit cleanups")
    p.add_argument("--preserve-permutation", action="store_true",
                   help="only use rewrites that keep the full rail permutation")
    p.add_argument("--signed", action=argparse.BooleanOptionalAction, default=True,
                   help="print exponents in -(k//2)..k//2 (default) or 0..k-1")
    p.add_argument("--strict-controls", action="store_true",
                   help="keep NOTs so every control wire ends un-inverted")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check a circuit document against a function spec")
    p.add_argument("circuit")
    p.add_argument("spec")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="cell-count bound, optionally checked by sweep")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--sweep", action="store_true", help="enumerate every function")
    p.add_argument("--sample", type=int, default=None, metavar="N", help="check N random functions")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("cayley", help="print the Cayley table of D_k")
    p.add_argument("k", type=int)
    p.add_argument("--check", action="store_true", help="run the group axiom suite")
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser("draw", help="ASCII diagram of a circuit document")
    p.add_argument("circuit")
    p.set_defaults(func=cmd_draw)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidRadixError as exc:
        return _fail(EXIT_RADIX, str(exc))
    except (SpecFormatError, SizeError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    except VerificationError as exc:
        return _fail(EXIT_VERIFY, str(exc))


if __name__ == "__main__":
    sys.exit(main())
