"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import functools
import itertools
import random
import sys
import warnings

import numpy as np
import pytest

from dksynth.cascade import (
    build_canonical,
    count_cells,
    expression,
    parse_word,
    truth_vector_of,
    upper_bound,
)
from dksynth.dihedral import compose, make_group, power
from dksynth.lowering import (
    Circuit,
    CSwap,
    Not,
    Swap,
    absorb_leading_swaps,
    compile_cascade,
    fold_sandwich,
    lower,
    peephole,
)
from dksynth.rewrite import RULES, optimize
from dksynth.simulate import output_function, run_circuit
from dksynth.spectral import TruthVector, spectrum, walsh_inverse_scalar, walsh_matrix

from helpers import random_cascade

CRITERIA = {}
RESULTS = {}


def criterion(number, title):
    def register(fn):
        CRITERIA[number] = (title, fn)
        return fn

    return register


def run(number):
    """Evaluate one criterion; returns (ok, summary, failures)."""
    title, fn = CRITERIA[number]
    failures, summary = fn()
    RESULTS[number] = (title, not failures, summary)
    return not failures, summary, failures


def status_line(number):
    title, ok, summary = RESULTS[number]
    return f"{'PASS' if ok else 'FAIL'} [{number}] {title}: {summary}"


EXAMPLES = {
    "increment": ([1, 2], 3),
    "xor": ([0, 1, 1, 0], 3),
    "adder": ([0, 1, 1, 2, 1, 2, 2, 0], 3),
}

SWEEPS = [(2, 3), (3, 3), (2, 5), (1, 7)]


@criterion(1, "golden spectra")
def golden_spectra():
    expected = {
        "increment": [0, 1],
        "xor": [-1 % 3, 0, 0, 1],
        "adder": [0, 1, 1, 0, 1, 0, 0, 0],
    }
    failures = []
    for name, (values, k) in EXAMPLES.items():
        got = list(spectrum(TruthVector.of(values, k)).w)
        if got != expected[name]:
            failures.append(f"{name}: {got} != {expected[name]}")
    return failures, f"{len(expected) - len(failures)}/{len(expected)} exact"


@criterion(2, "golden cascade words")
def golden_words():
    expected = {
        "increment": "g^{x1} a^1",
        "xor": "a^{-1} g^{x1+x2} a^1",
        "adder": "g^{x3} a^1 g^{x2+x3} a^1 g^{x1+x2} a^1",
    }
    failures = []
    for name, (values, k) in EXAMPLES.items():
        F = TruthVector.of(values, k)
        c, _ = optimize(build_canonical(spectrum(F)))
        word = expression(c)
        if word.split() != expected[name].split():
            failures.append(f"{name}: {word!r}")
        if truth_vector_of(c) != F:
            failures.append(f"{name}: optimized cascade is wrong")
        if name == "xor" and c.output_rail == 0:
            failures.append("xor: output not retargeted")
    return failures, f"{len(expected) * 2 - len(failures)}/{len(expected) * 2} checks"


@criterion(3, "golden simulation tables")
def golden_tables():
    tables = {
        "g^{x1} a^1": {(0,): (1, 0, 2), (1,): (2, 0, 1)},
        "g^{x1} a^1 g^{x1}": {(0,): (1, 0, 2), (1,): (2, 1, 0)},
    }
    failures = []
    rows = 0
    for word, table in tables.items():
        circ = lower(parse_word(word, 3, 1))
        for x, want in table.items():
            rows += 1
            got = run_circuit(circ, x)
            if got != want:
                failures.append(f"{word} x={x}: {got} != {want}")
    return failures, f"{rows - len(failures)}/{rows} rows exact"


@functools.lru_cache(maxsize=None)
def sweep_records(n, k):
    """(truth vector ok, optimized cells, unmerged canonical cells) per function."""
    records = []
    for values in itertools.product(range(k), repeat=2**n):
        F = TruthVector(k=k, n=n, values=values)
        w = spectrum(F)
        c, _ = optimize(build_canonical(w))
        circ = compile_cascade(c)
        ok = output_function(circ) == F
        records.append((ok, count_cells(c).total, len(build_canonical(w, merge=False))))
    return records


@criterion(4, "exhaustive soundness sweeps")
def soundness_sweeps():
    failures, parts = [], []
    for n, k in SWEEPS:
        recs = sweep_records(n, k)
        good = sum(ok for ok, _, _ in recs)
        parts.append(f"(n={n},k={k}) {good}/{len(recs)}")
        if good != len(recs) or len(recs) != k ** (2**n):
            failures.append(parts[-1])
    return failures, "; ".join(parts)


@criterion(5, "rewrite preservation")
def rewrite_preservation():
    rng = random.Random(20240611)
    failures, total = [], 0
    for n in range(1, 5):
        for k in (3, 5, 7):
            for _ in range(1000):
                total += 1
                c = random_cascade(rng, n, k)
                tv = truth_vector_of(c)
                for name, rule in RULES:
                    if truth_vector_of(rule(c)[0]) != tv:
                        failures.append(f"{name} on n={n} k={k}")
                opt, _ = optimize(c)
                if truth_vector_of(opt) != tv:
                    failures.append(f"optimize on n={n} k={k}")
                if optimize(opt)[0] != opt:
                    failures.append(f"optimize not idempotent on n={n} k={k}")
    return failures[:5], f"{total} cascades, {len(RULES)} rules + fixpoint, {len(failures)} violations"


@criterion(6, "cell-count bound")
def bound_property():
    failures, parts = [], []
    for n, k in SWEEPS:
        recs = sweep_records(n, k)
        worst = max(cells for _, cells, _ in recs)
        canon = {pre for _, _, pre in recs}
        parts.append(f"(n={n},k={k}) max {worst}<={upper_bound(n, k)}")
        if worst > upper_bound(n, k):
            failures.append(parts[-1])
        if canon != {3 * 2**n - 2}:
            failures.append(f"(n={n},k={k}) canonical counts {sorted(canon)}")
    ten = len(build_canonical(spectrum(TruthVector.of([0, 1, 1, 0], 3)), merge=False))
    if ten != 10:
        failures.append(f"n=2 canonical has {ten} cells")
    return failures, "; ".join(parts) + f"; n=2 canonical {ten} cells"


@criterion(7, "algebraic identities")
def algebraic_identities():
    failures, checks = [], 0
    for k in (3, 5, 7, 9, 11):
        grp = make_group(k)
        checks += 2 + k
        if power(grp.a, k) != grp.identity:
            failures.append(f"a^{k} != e")
        if power(grp.g, 2) != grp.identity:
            failures.append(f"g^2 != e (k={k})")
        for m in range(k):
            if compose(compose(grp.g, power(grp.a, m)), grp.g) != power(grp.a, -m):
                failures.append(f"g a^{m} g != a^-{m} (k={k})")
    for n in range(1, 11):
        checks += 1
        w = walsh_matrix(n)
        if not np.array_equal(w @ w, (2**n) * np.eye(2**n, dtype=np.int64)):
            failures.append(f"W_{n}^2 != 2^n I")
    for k in range(3, 100, 2):
        for n in range(1, 17):
            checks += 1
            if walsh_inverse_scalar(n, k) * 2**n % k != 1:
                failures.append(f"scalar (n={n}, k={k})")
    return failures, f"{checks - len(failures)}/{checks} identities hold"


@criterion(8, "peephole golden")
def peephole_golden():
    sandwich = Circuit(
        k=3, n=1,
        gates=(CSwap(0, 0, 1), Not(0), CSwap(0, 0, 1), CSwap(0, 0, 2)),
        init=(0, 2, 1), output_rail=0,
    )
    failures = []
    target = output_function(sandwich)
    if target.values != (1, 2):
        failures.append(f"source circuit computes {target.values}")
    folded = fold_sandwich(sandwich)
    if folded.gates != (Swap(0, 1), Not(0), CSwap(0, 0, 2)):
        failures.append(f"sandwich fold gave {folded.gates}")
    absorbed = absorb_leading_swaps(folded)
    if absorbed.init != (2, 0, 1):
        failures.append(f"absorbed init {absorbed.init}")
    final = peephole(sandwich)
    cswaps = [g for g in final.gates if isinstance(g, CSwap)]
    if final.init != (2, 0, 1) or len(final.gates) != 1 or len(cswaps) != 1:
        failures.append(f"final circuit {final}")
    for circ in (folded, absorbed, final):
        if output_function(circ) != target:
            failures.append("functional mismatch")
    summary = f"{len(sandwich.gates)} -> {len(folded.gates)} -> {len(final.gates)} gates, init {final.init}"
    return failures, summary


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, summary, failures = run(number)
    assert ok, f"{summary}: {failures}"


if __name__ == "__main__":
    warnings.filterwarnings("ignore", message=r"k=\d+ is composite")
    for number in sorted(CRITERIA):
        run(number)
        print(status_line(number), flush=True)
    sys.exit(0 if all(ok for _, ok, _ in RESULTS.values()) else 1)
