"""Local transformations on cascades and the fixed-point driver.

Rules preserve the value read on the output rail for every input. Two of
them (``drop_trailing`` and ``retarget_output``) change the full rail
permutation and are switched off by ``preserve_permutation=True``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cascade import AGate, Cascade, cell_element, count_cells, merge_g_runs
from .dihedral import make_group


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    position: int
    cells_before: int
    cells_after: int


@dataclass
class RewriteReport:
    applications: list[RuleApplication] = field(default_factory=list)
    initial_cells: int = 0
    final_cells: int = 0
    iterations: int = 0

    def log(self) -> list[str]:
        return [
            f"{app.rule}@{app.position}: {app.cells_before}->{app.cells_after}"
            for app in self.applications
        ]


def _merge(c: Cascade):
    cells = merge_g_runs(c.cells)
    if tuple(cells) == c.cells:
        return c, None
    first = next(
        (i for i, (x, y) in enumerate(zip(c.cells, cells)) if x != y), len(cells)
    )
    return c.with_cells(cells), first


def _drop_identity(c: Cascade):
    positions = [i for i, cell in enumerate(c.cells) if isinstance(cell, AGate) and cell.exp == 0]
    if not positions:
        return c, None
    drop = set(positions)
    return c.with_cells(cell for i, cell in enumerate(c.cells) if i not in drop), positions[0]


def _fixes_output(cell, c: Cascade) -> bool:
    o = c.output_rail
    if isinstance(cell, AGate):
        return cell.exp == 0
    if cell.unconditional and not cell.const:
        return True
    # a controlled g is either g or e; both must fix the output rail
    return make_group(c.k).g(o) == o


def _drop_trailing(c: Cascade):
    cells = list(c.cells)
    while cells and _fixes_output(cells[-1], c):
        cells.pop()
    if len(cells) == len(c.cells):
        return c, None
    return c.with_cells(cells), len(cells)


def _is_constant(cell) -> bool:
    return isinstance(cell, AGate) or cell.unconditional


def _retarget(c: Cascade):
    if not c.cells or not _is_constant(c.cells[-1]):
        return c, None
    elem = cell_element(c.cells[-1], c.k)
    return c.with_cells(c.cells[:-1], output_rail=elem.inverse()(c.output_rail)), len(c.cells) - 1


def _absorb(c: Cascade):
    if not c.cells or not _is_constant(c.cells[0]):
        return c, None
    elem = cell_element(c.cells[0], c.k)
    return c.with_cells(c.cells[1:], init=elem.apply_to(c.init)), 0


def merge_adjacent_g(c: Cascade) -> Cascade:
    return _merge(c)[0]


def drop_identity_a(c: Cascade) -> Cascade:
    return _drop_identity(c)[0]


def drop_trailing(c: Cascade) -> Cascade:
    return _drop_trailing(c)[0]


def retarget_output(c: Cascade) -> Cascade:
    """Remove a trailing constant cell by reading the rail it would have moved
    onto the output rail."""
    return _retarget(c)[0]


def absorb_leading(c: Cascade) -> Cascade:
    """Fold a leading constant cell into the rail constants."""
    return _absorb(c)[0]


RULES = (
    ("merge_adjacent_g", _merge),
    ("drop_identity_a", _drop_identity),
    ("drop_trailing", _drop_trailing),
    ("retarget_output", _retarget),
    ("absorb_leading", _absorb),
)

PERMUTATION_CHANGING = frozenset({"drop_trailing", "retarget_output"})


def iteration_limit(c: Cascade) -> int:
    return 3 * 2**c.n + c.k + len(c.cells)


def optimize(c: Cascade, *, preserve_permutation: bool = False, boundary: bool = True):
    """Run the rules in order until nothing changes.

    ``boundary=False`` skips retarget_output and absorb_leading, leaving the
    reduced word on the canonical rails. Returns ``(cascade, RewriteReport)``.
    """
    rules = [
        (name, fn)
        for name, fn in RULES
        if not (preserve_permutation and name in PERMUTATION_CHANGING)
        and (boundary or name not in ("retarget_output", "absorb_leading"))
    ]
    report = RewriteReport(initial_cells=count_cells(c).total)
    for _ in range(iteration_limit(c)):
        report.iterations += 1
        changed = False
        for name, fn in rules:
            new, pos = fn(c)
            if pos is not None:
                report.applications.append(
                    RuleApplication(name, pos, len(c.cells), len(new.cells))
                )
                c, changed = new, True
        if not changed:
            break
    else:
        raise RuntimeError("rewrite did not reach a fixed point")
    report.final_cells = count_cells(c).total
    return c, report
