"""Gate-level circuits over n binary control wires and k value rails.

Control wire ``c`` carries x_{c+1}. NOT acts on control wires only; SWAP and
CSWAP (Fredkin) act on rails. No ancillas are introduced.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union

from .cascade import AGate, Cascade
from .dihedral import DihedralGroup, GroupElement, make_group
from .errors import StructuralError


@dataclass(frozen=True)
class Not:
    ctrl: int


@dataclass(frozen=True)
class Swap:
    r1: int
    r2: int

    def __post_init__(self):
        if self.r1 == self.r2:
            raise StructuralError(f"swap of rail {self.r1} with itself")
        if self.r1 > self.r2:
            r1, r2 = self.r2, self.r1
            object.__setattr__(self, "r1", r1)
            object.__setattr__(self, "r2", r2)


@dataclass(frozen=True)
class CSwap:
    ctrl: int
    r1: int
    r2: int

    def __post_init__(self):
        if self.r1 == self.r2:
            raise StructuralError(f"controlled swap of rail {self.r1} with itself")
        if self.r1 > self.r2:
            r1, r2 = self.r2, self.r1
            object.__setattr__(self, "r1", r1)
            object.__setattr__(self, "r2", r2)


Gate = Union[Not, Swap, CSwap]


def rails_of(gate: Gate) -> tuple[int, ...]:
    return () if isinstance(gate, Not) else (gate.r1, gate.r2)


def wire_of(gate: Gate):
    return None if isinstance(gate, Swap) else gate.ctrl


@dataclass(frozen=True)
class Circuit:
    k: int
    n: int
    gates: tuple[Gate, ...]
    init: tuple[int, ...]
    output_rail: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "init", tuple(int(v) for v in self.init))
        if sorted(self.init) != list(range(self.k)):
            raise StructuralError(f"init {self.init} is not a permutation of 0..{self.k - 1}")
        if not 0 <= self.output_rail < self.k:
            raise StructuralError(f"output_rail {self.output_rail} outside 0..{self.k - 1}")
        for pos, gate in enumerate(self.gates):
            if not isinstance(gate, (Not, Swap, CSwap)):
                raise StructuralError(f"gate {pos}: unknown gate {gate!r}")
            for r in rails_of(gate):
                if not 0 <= r < self.k:
                    raise StructuralError(f"gate {pos}: rail {r} outside 0..{self.k - 1}")
            c = wire_of(gate)
            if c is not None and not 0 <= c < self.n:
                raise StructuralError(f"gate {pos}: control wire {c} outside 0..{self.n - 1}")

    def with_gates(self, gates, **changes) -> Circuit:
        return replace(self, gates=tuple(gates), **changes)

    @property
    def ctrl_polarity_note(self) -> tuple[int, ...]:
        """Control wires left inverted at circuit end (odd number of NOTs)."""
        parity = [0] * self.n
        for g in self.gates:
            if isinstance(g, Not):
                parity[g.ctrl] ^= 1
        return tuple(c for c in range(self.n) if parity[c])

    @property
    def rail_gate_count(self) -> int:
        return sum(not isinstance(g, Not) for g in self.gates)

    @property
    def not_count(self) -> int:
        return sum(isinstance(g, Not) for g in self.gates)

    def metrics(self) -> dict:
        return {
            "gates": len(self.gates),
            "rail_gates": self.rail_gate_count,
            "not": self.not_count,
            "swap": sum(isinstance(g, Swap) for g in self.gates),
            "cswap": sum(isinstance(g, CSwap) for g in self.gates),
        }


# lowering -------------------------------------------------------------------

def transpositions(perm: GroupElement) -> list[tuple[int, int]]:
    """Swaps that, applied in order, move rail contents as ``perm`` does.

    Each cycle (r0 -> r1 -> ... -> r_{L-1}) starting at its smallest rail
    becomes (r0, r1), (r0, r2), ..., (r0, r_{L-1}).
    """
    seen = [False] * perm.k
    out = []
    for start in range(perm.k):
        if seen[start]:
            continue
        seen[start] = True
        r = perm(start)
        while r != start:
            seen[r] = True
            out.append((start, r))
            r = perm(r)
    return out


def lower_a(exp: int, group: DihedralGroup, control: int | None = None) -> list[Gate]:
    pairs = transpositions(group.rotation(exp % group.k))
    if control is None:
        return [Swap(p, q) for p, q in pairs]
    return [CSwap(control, p, q) for p, q in pairs]


def g_pairs(k: int) -> list[tuple[int, int]]:
    return [(i, k - i) for i in range(1, k // 2 + 1)]


def lower_g(controls: int, group: DihedralGroup, const: bool = False) -> list[Gate]:
    """g^(const + sum x_v): one block of k//2 swaps per term, constant first."""
    gates: list[Gate] = []
    pairs = g_pairs(group.k)
    if const or controls == 0:
        if const:
            gates.extend(Swap(p, q) for p, q in pairs)
        if controls == 0:
            return gates
    for bit in range(controls.bit_length()):
        if controls >> bit & 1:
            gates.extend(CSwap(bit, p, q) for p, q in pairs)
    return gates


def lower(c: Cascade) -> Circuit:
    group = make_group(c.k)
    gates: list[Gate] = []
    for cell in c.cells:
        if isinstance(cell, AGate):
            gates.extend(lower_a(cell.exp, group))
        else:
            gates.extend(lower_g(cell.controls, group, cell.const))
    return Circuit(k=c.k, n=c.n, gates=tuple(gates), init=c.init, output_rail=c.output_rail)


# conjugation fusion ---------------------------------------------------------

def _rotation_of(swaps, k: int):
    """Exponent w if the swap run composes to a^w, else None."""
    contents = list(range(k))
    for s in swaps:
        contents[s.r1], contents[s.r2] = contents[s.r2], contents[s.r1]
    # contents[r] is the rail whose content now sits on r
    w = (0 - contents[0]) % k
    return w if all(contents[r] == (r - w) % k for r in range(k)) else None


def _g_block_wires(run, k: int) -> set[int]:
    """Wires whose CSWAPs in ``run`` compose to a full controlled g."""
    full = set(g_pairs(k))
    per_wire: dict[int, set] = {}
    for gate in run:
        per_wire.setdefault(gate.ctrl, set()).symmetric_difference_update({(gate.r1, gate.r2)})
    return {c for c, pairs in per_wire.items() if pairs == full}


def _remove_block(run, wire: int, k: int) -> list[Gate]:
    todo = set(g_pairs(k))
    out = []
    for gate in run:
        key = (gate.r1, gate.r2)
        if gate.ctrl == wire and key in todo:
            todo.discard(key)
        else:
            out.append(gate)
    return out


def _fused_block(wire: int, pairs) -> list[Gate]:
    # x=1: T_m..T_2 T_1 = (a^w)^-1 = g a^w g ; x=0: T_1 then (after NOT) T_2..T_m = a^w
    head, rest = pairs[0], pairs[1:]
    return (
        [CSwap(wire, p, q) for p, q in reversed(rest)]
        + [Swap(*head), Not(wire)]
        + [CSwap(wire, p, q) for p, q in rest]
        + [Not(wire)]
    )


def _is_gpair_cswap(gate, k: int) -> bool:
    return isinstance(gate, CSwap) and gate.r1 + gate.r2 == k


def _fuse_once(circ: Circuit):
    gates = list(circ.gates)
    k = circ.k
    group = make_group(k)
    i = 0
    while i < len(gates):
        if not isinstance(gates[i], Swap):
            i += 1
            continue
        end = i
        while end < len(gates) and isinstance(gates[end], Swap):
            end += 1
        w = _rotation_of(gates[i:end], k)
        start = i
        while start > 0 and _is_gpair_cswap(gates[start - 1], k):
            start -= 1
        stop = end
        while stop < len(gates) and _is_gpair_cswap(gates[stop], k):
            stop += 1
        before, after = gates[start:i], gates[end:stop]
        if w:
            pairs = transpositions(group.rotation(w))
            common = sorted(_g_block_wires(before, k) & _g_block_wires(after, k))
            removed = 2 * len(g_pairs(k)) + (end - i)
            added = 2 * len(pairs) - 1
            if common and added < removed:
                wire = common[0]
                new = (
                    gates[:start]
                    + _remove_block(before, wire, k)
                    + _fused_block(wire, pairs)
                    + _remove_block(after, wire, k)
                    + gates[stop:]
                )
                return circ.with_gates(new), True
        i = end
    return circ, False


def conjugation_fuse(circ: Circuit) -> Circuit:
    """Rewrite lowered g^x a^w g^x into "a^w if x=0, a^-w if x=1".

    CSWAPs on the g rail pairs (i, k-i) commute with each other, so a g-block
    on wire x is found anywhere in the CSWAP runs flanking a SWAP run. Each
    fusion saves one rail gate; the rail permutation is unchanged for every
    input and the control wire is restored.
    """
    changed = True
    while changed:
        circ, changed = _fuse_once(circ)
    return circ


# peephole -------------------------------------------------------------------

def commutes(g1: Gate, g2: Gate) -> bool:
    r1, r2 = rails_of(g1), rails_of(g2)
    if set(r1) & set(r2):
        # swaps of one rail pair are each either e or the same transposition
        return r1 == r2
    if isinstance(g1, Not) != isinstance(g2, Not):
        return wire_of(g1) != wire_of(g2)
    return True


def cancel_pairs(circ: Circuit) -> Circuit:
    """Cancel two identical self-inverse gates separated only by gates that
    commute with them (NOT pairs with nothing controlled between included)."""
    gates = list(circ.gates)
    i = 0
    while i < len(gates):
        j = i + 1
        while j < len(gates):
            if gates[j] == gates[i]:
                del gates[j]
                del gates[i]
                i = max(i - 1, 0)
                break
            if not commutes(gates[i], gates[j]):
                i += 1
                break
            j += 1
        else:
            i += 1
    return circ.with_gates(gates)


def fold_sandwich(circ: Circuit) -> Circuit:
    """CSWAP(c;a,b) NOT(c) CSWAP(c;a,b) -> SWAP(a,b) NOT(c): exactly one of the
    two controlled swaps fires for either control value."""
    gates = list(circ.gates)
    i = 0
    while i < len(gates):
        first = gates[i]
        if isinstance(first, CSwap):
            j = i + 1
            while j < len(gates) and gates[j] != Not(first.ctrl) and commutes(first, gates[j]):
                j += 1
            if j < len(gates) and gates[j] == Not(first.ctrl):
                l = j + 1
                while l < len(gates) and gates[l] != first and commutes(first, gates[l]):
                    l += 1
                if l < len(gates) and gates[l] == first:
                    gates = gates[:i] + gates[i + 1:j] + [Swap(first.r1, first.r2), gates[j]] + gates[j + 1:l] + gates[l + 1:]
                    continue
        i += 1
    return circ.with_gates(gates)


def absorb_leading_swaps(circ: Circuit) -> Circuit:
    """Fold every SWAP that commutes to the front into the rail constants."""
    gates = list(circ.gates)
    init = list(circ.init)
    i = 0
    while i < len(gates):
        gate = gates[i]
        if isinstance(gate, Swap) and all(commutes(gate, g) for g in gates[:i]):
            init[gate.r1], init[gate.r2] = init[gate.r2], init[gate.r1]
            del gates[i]
            continue
        i += 1
    return circ.with_gates(gates, init=tuple(init))


def drop_trailing_gates(circ: Circuit) -> Circuit:
    """Remove rail gates after which nothing reaches the output rail; a trailing
    SWAP on the output rail is removed by reading its partner rail instead."""
    gates = list(circ.gates)
    out = circ.output_rail
    i = len(gates) - 1
    while i >= 0:
        gate = gates[i]
        if not isinstance(gate, Not) and all(commutes(gate, g) for g in gates[i + 1:]):
            if out not in rails_of(gate):
                del gates[i]
            elif isinstance(gate, Swap):
                out = gate.r2 if out == gate.r1 else gate.r1
                del gates[i]
        i -= 1
    return circ.with_gates(gates, output_rail=out)


def retarget_inverted(circ: Circuit) -> Circuit:
    """NOT(c) ... CSWAP(c;p,q) as the last gate reaching output rail p:
    an inverted-control swap is SWAP . CSWAP, so drop the NOT and read q."""
    gates = list(circ.gates)
    out = circ.output_rail
    for q in range(len(gates) - 1, -1, -1):
        gate = gates[q]
        if isinstance(gate, CSwap) and out in rails_of(gate) and all(commutes(gate, g) for g in gates[q + 1:]):
            if any(wire_of(g) == gate.ctrl for g in gates[q + 1:]):
                return circ
            p = q - 1
            while p >= 0 and wire_of(gates[p]) != gate.ctrl:
                p -= 1
            if p >= 0 and isinstance(gates[p], Not):
                del gates[p]
                new_out = gate.r2 if out == gate.r1 else gate.r1
                return circ.with_gates(gates, output_rail=new_out)
            return circ
        if out in rails_of(gate):
            return circ
    return circ


def strip_dangling_nots(circ: Circuit) -> Circuit:
    """Drop NOTs that no later gate observes."""
    gates = list(circ.gates)
    i = len(gates) - 1
    while i >= 0:
        gate = gates[i]
        if isinstance(gate, Not) and not any(wire_of(g) == gate.ctrl for g in gates[i + 1:]):
            del gates[i]
        i -= 1
    return circ.with_gates(gates)


def restore_controls(circ: Circuit) -> Circuit:
    """Append a NOT for every control wire the circuit leaves inverted."""
    return circ.with_gates(circ.gates + tuple(Not(c) for c in circ.ctrl_polarity_note))


def peephole_rules(preserve_permutation: bool = False):
    rules = [cancel_pairs, fold_sandwich, absorb_leading_swaps]
    if not preserve_permutation:
        rules += [drop_trailing_gates, retarget_inverted]
    rules.append(strip_dangling_nots)
    return rules


def peephole(circ: Circuit, *, preserve_permutation: bool = False, strict: bool = False) -> Circuit:
    """Apply the circuit cleanups until fixpoint.

    Control wires left inverted are reported by ``ctrl_polarity_note``;
    ``strict`` appends NOTs so every control wire leaves as it entered.
    """
    rules = peephole_rules(preserve_permutation)
    while True:
        before = circ
        for rule in rules:
            circ = rule(circ)
        if circ == before:
            break
    return restore_controls(circ) if strict else circ


def compile_cascade(c: Cascade, *, optimize: bool = True, preserve_permutation: bool = False,
                    strict: bool = False) -> Circuit:
    circ = lower(c)
    if optimize:
        circ = conjugation_fuse(circ)
        circ = peephole(circ, preserve_permutation=preserve_permutation, strict=strict)
    return circ
