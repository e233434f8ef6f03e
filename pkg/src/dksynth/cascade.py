"""Cascade IR: words over shift cells a^w and controlled reflections g^S.

A g-cell stores its controls as a bitmask with bit ``i - 1`` standing for
x_i, plus a constant bit, and realises g^(const + sum of controlled x_i).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from . import kernels
from .dihedral import GroupElement, make_group
from .errors import ArityError, SpecFormatError, StructuralError
from .spectral import Spectrum, TruthVector, bits_of, signed_residue


@dataclass(frozen=True)
class AGate:
    exp: int


@dataclass(frozen=True)
class GGate:
    controls: int
    const: bool = False

    @property
    def variables(self) -> tuple[int, ...]:
        """1-based indices of the controlling variables, ascending."""
        return tuple(i + 1 for i in range(self.controls.bit_length()) if self.controls >> i & 1)

    @property
    def unconditional(self) -> bool:
        return self.controls == 0

    def active(self, bits) -> bool:
        parity = int(self.const)
        for v in self.variables:
            parity ^= bits[v - 1]
        return bool(parity)

    @classmethod
    def on(cls, *variables: int, const: bool = False) -> GGate:
        mask = 0
        for v in variables:
            mask ^= 1 << (v - 1)
        return cls(mask, const)


Cell = Union[AGate, GGate]


def canonical_init(k: int) -> tuple[int, ...]:
    """Rail constants (0, k-1, ..., 1): a^f then routes value f onto rail 0."""
    return tuple((k - i) % k for i in range(k))


@dataclass(frozen=True)
class Cascade:
    k: int
    n: int
    cells: tuple[Cell, ...] = ()
    init: tuple[int, ...] = None
    output_rail: int = 0

    def __post_init__(self):
        if self.init is None:
            object.__setattr__(self, "init", canonical_init(self.k))
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "init", tuple(int(v) for v in self.init))
        if sorted(self.init) != list(range(self.k)):
            raise StructuralError(f"init {self.init} is not a permutation of 0..{self.k - 1}")
        if not 0 <= self.output_rail < self.k:
            raise StructuralError(f"output_rail {self.output_rail} outside 0..{self.k - 1}")
        for pos, cell in enumerate(self.cells):
            if isinstance(cell, AGate):
                if not 0 <= cell.exp < self.k:
                    raise StructuralError(f"cell {pos}: exponent {cell.exp} outside 0..{self.k - 1}")
            elif isinstance(cell, GGate):
                if cell.controls < 0 or cell.controls >> self.n:
                    raise StructuralError(f"cell {pos}: controls reference variables beyond x{self.n}")
            else:
                raise StructuralError(f"cell {pos}: unknown cell {cell!r}")

    def with_cells(self, cells, **changes) -> Cascade:
        return replace(self, cells=tuple(cells), **changes)

    def __len__(self):
        return len(self.cells)


def _coeff_word(coeffs, n: int, var: int, cells: list):
    # F = F_a g^{x_var} F_b g^{x_var}, with F_a, F_b over x_{var+1}..x_n
    if var > n:
        cells.append(AGate(next(coeffs)))
        return
    for _ in range(2):
        _coeff_word(coeffs, n, var + 1, cells)
        cells.append(GGate.on(var))


def merge_g_runs(cells) -> list[Cell]:
    """Collapse every run of adjacent g-cells into one (g^2 = e, so controls XOR)."""
    out: list[Cell] = []
    run = None
    for cell in cells:
        if isinstance(cell, GGate):
            run = cell if run is None else GGate(run.controls ^ cell.controls, run.const ^ cell.const)
            continue
        if run is not None and (run.controls or run.const):
            out.append(run)
        run = None
        out.append(cell)
    if run is not None and (run.controls or run.const):
        out.append(run)
    return out


def build_canonical(w: Spectrum, merge: bool = True) -> Cascade:
    """Canonical cascade a^{w_1} g^{S_1} ... a^{w_N} g^{S_N} for a spectrum.

    With ``merge=False`` the raw recursive expansion (3*2^n - 2 cells) is
    returned, before abutting g-cells are combined.
    """
    cells: list[Cell] = []
    _coeff_word(iter(w.w), w.n, 1, cells)
    if merge:
        cells = merge_g_runs(cells)
    return Cascade(k=w.k, n=w.n, cells=tuple(cells))


def _check_assignment(c: Cascade, x) -> tuple[int, ...]:
    x = tuple(int(b) & 1 for b in x)
    if len(x) != c.n:
        raise ArityError(f"assignment has {len(x)} variables, cascade has n={c.n}")
    return x


def fold(c: Cascade, x) -> tuple[int, int]:
    """Reduce the word at assignment ``x`` to (s, p) with word = a^s g^p.

    Pushing each active g to the right past a^w turns it into a^-w, so every
    a-exponent is negated once per active g to its left.
    """
    x = _check_assignment(c, x)
    shift, parity = 0, 0
    for cell in c.cells:
        if isinstance(cell, AGate):
            shift += -cell.exp if parity else cell.exp
        elif cell.active(x):
            parity ^= 1
    return shift % c.k, parity


def _read(c: Cascade, shift: int, parity: int) -> int:
    # a^s g^p sends rail i to (-1)^p (i + s); find the rail feeding output_rail
    o = c.output_rail
    src = ((-o if parity else o) - shift) % c.k
    return c.init[src]


def evaluate_group(c: Cascade, x) -> int:
    return _read(c, *fold(c, x))


def signs(c: Cascade, x) -> list[int]:
    """+-1 multiplier of each a-cell's exponent at assignment ``x``."""
    x = _check_assignment(c, x)
    out, parity = [], 0
    for cell in c.cells:
        if isinstance(cell, AGate):
            out.append(-1 if parity else 1)
        elif cell.active(x):
            parity ^= 1
    return out


def kernel_arrays(c: Cascade):
    """(kinds, exps, masks) in the layout of ``kernels.fold_cascade_all``."""
    kinds, exps, masks = [], [], []
    for cell in c.cells:
        if isinstance(cell, AGate):
            kinds.append(0)
            exps.append(cell.exp)
            masks.append(0)
        else:
            m = sum(1 << (c.n - v) for v in cell.variables)
            if cell.const:
                m |= 1 << c.n
            kinds.append(1)
            exps.append(0)
            masks.append(m)
    return kinds, exps, masks


def truth_vector_of(c: Cascade) -> TruthVector:
    folded = kernels.fold_cascade_all(*kernel_arrays(c), c.n, c.k)
    o = c.output_rail
    src = np.where(folded[:, 1] == 1, -o, o) - folded[:, 0]
    init = np.asarray(c.init, dtype=np.int64)
    return TruthVector(k=c.k, n=c.n, values=tuple(int(v) for v in init[src % c.k]))


def cell_element(cell: Cell, k: int, x=None) -> GroupElement:
    """Rail permutation of one cell; ``x`` is required for controlled g-cells."""
    group = make_group(k)
    if isinstance(cell, AGate):
        return group.rotation(cell.exp)
    if cell.unconditional:
        return group.g if cell.const else group.identity
    if x is None:
        raise ValueError("controlled g-cell needs an assignment")
    return group.g if cell.active(x) else group.identity


@dataclass(frozen=True)
class CellCount:
    a_cells: int
    g_cells: int
    total: int


def count_cells(c: Cascade) -> CellCount:
    a = sum(isinstance(cell, AGate) for cell in c.cells)
    return CellCount(a_cells=a, g_cells=len(c.cells) - a, total=len(c.cells))


def canonical_cell_count(n: int) -> int:
    """Length of the unmerged canonical word: C(m) = 2 C(m-1) + 2, C(0) = 1."""
    return 3 * 2**n - 2


def upper_bound(n: int, k: int) -> int:
    """Cells in any optimised canonical cascade: 2^n a-cells + 2^n g-cells - trailing g."""
    return 2 ** (n + 1) - 1


# text form -----------------------------------------------------------------

def _exp_text(v: int) -> str:
    return str(v) if 0 <= v <= 9 else "{%d}" % v


def format_a(exp: int, k: int, signed: bool = True) -> str:
    return "a^" + _exp_text(signed_residue(exp, k) if signed else exp % k)


def format_g(cell: GGate) -> str:
    terms = (["1"] if cell.const else []) + [f"x{v}" for v in cell.variables]
    if not cell.controls:
        return "g" if cell.const else "I"
    return "g^{" + "+".join(terms) + "}"


def format_cell(cell: Cell, k: int, signed: bool = True) -> str:
    return format_a(cell.exp, k, signed) if isinstance(cell, AGate) else format_g(cell)


def format_word(c: Cascade, signed: bool = True) -> str:
    """Cell word as written, e.g. ``g^{x3} a^1 g^{x2+x3}``; ``I`` when empty."""
    return " ".join(format_cell(cell, c.k, signed) for cell in c.cells) or "I"


def frame_offsets(c: Cascade) -> tuple[int, int, int]:
    """(m, p, t) such that c computes the same function as a^m g^p . word . a^t
    started from the canonical rail constants and read on rail 0."""
    group = make_group(c.k)
    canon = canonical_init(c.k)
    for m in range(c.k):
        for p, elem in ((0, group.rotation(m)), (1, group.reflection(m))):
            if elem.apply_to(canon) == c.init:
                return m, p, (-c.output_rail) % c.k
    raise ValueError(f"init {c.init} is not a dihedral rearrangement of {canon}")


def expression(c: Cascade, signed: bool = True) -> str:
    """Algebraic form a^{f(x)} = ... in the canonical frame (rails (0, k-1, ..., 1),
    output on rail 0): rail rearrangements and output moves show up as leading
    and trailing constant cells."""
    m, p, t = frame_offsets(c)
    tokens = []
    if m:
        tokens.append(format_a(m, c.k, signed))
    if p:
        tokens.append("g")
    tokens.extend(format_cell(cell, c.k, signed) for cell in c.cells)
    if t:
        tokens.append(format_a(t, c.k, signed))
    return " ".join(tokens) or "I"


_TOKEN = re.compile(r"^(?:a\^(?:\{(-?\d+)\}|(-?\d+))|g(?:\^\{([^}]*)\}|\^x(\d+))?|I|e)$")


def parse_word(text: str, k: int, n: int, **cascade_fields) -> Cascade:
    """Inverse of ``format_word``; accepts ``a^2``, ``a^{-1}``, ``g``, ``g^{1+x1+x3}``."""
    cells: list[Cell] = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise SpecFormatError(f"cannot parse cell {tok!r}")
        braced, bare, gterms, gsingle = m.groups()
        if tok in ("I", "e"):
            continue
        if tok.startswith("a"):
            cells.append(AGate(int(braced if braced is not None else bare) % k))
        elif gsingle is not None:
            cells.append(GGate.on(int(gsingle)))
        elif gterms is None:
            cells.append(GGate(0, True))
        else:
            mask, const = 0, False
            for term in gterms.split("+"):
                term = term.strip()
                if term == "1":
                    const = not const
                elif re.fullmatch(r"x\d+", term):
                    mask ^= 1 << (int(term[1:]) - 1)
                else:
                    raise SpecFormatError(f"bad g exponent term {term!r} in {tok!r}")
            cells.append(GGate(mask, const))
    return Cascade(k=k, n=n, cells=tuple(cells), **cascade_fields)


def all_assignments(n: int):
    return (bits_of(i, n) for i in range(1 << n))
