"""Exhaustive classical simulation: the ground truth for every other stage."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import kernels
from ._kernels_py import CSWAP, NOT, SWAP
from .cascade import Cascade, truth_vector_of
from .errors import ArityError, DimensionError, SizeError, StructuralError
from .lowering import Circuit, CSwap, Not, Swap, lower
from .spectral import MAX_VARIABLES, TruthVector, bits_of

RailState = tuple[int, ...]


def run_circuit(circ: Circuit, x) -> RailState:
    """Rail contents after running ``circ`` on control bits ``x`` = (x_1..x_n)."""
    bits = [int(b) & 1 for b in x]
    if len(bits) != circ.n:
        raise ArityError(f"assignment has {len(bits)} bits, circuit has n={circ.n}")
    rails = list(circ.init)
    for pos, gate in enumerate(circ.gates):
        if isinstance(gate, Not):
            bits[gate.ctrl] ^= 1
        elif isinstance(gate, Swap) or (isinstance(gate, CSwap) and bits[gate.ctrl]):
            try:
                rails[gate.r1], rails[gate.r2] = rails[gate.r2], rails[gate.r1]
            except IndexError:
                raise StructuralError(f"gate {pos} references a rail outside 0..{circ.k - 1}") from None
    return tuple(rails)


def gate_arrays(circ: Circuit):
    """(ops, ctrl, r1, r2) in the layout of ``kernels.run_circuit_all``."""
    ops, ctrl, r1, r2 = [], [], [], []
    for gate in circ.gates:
        if isinstance(gate, Not):
            ops.append(NOT), ctrl.append(gate.ctrl), r1.append(0), r2.append(0)
        elif isinstance(gate, Swap):
            ops.append(SWAP), ctrl.append(0), r1.append(gate.r1), r2.append(gate.r2)
        else:
            ops.append(CSWAP), ctrl.append(gate.ctrl), r1.append(gate.r1), r2.append(gate.r2)
    return ops, ctrl, r1, r2


def rail_states(circ: Circuit) -> np.ndarray:
    """Final rail contents for all 2^n inputs, shape (2^n, k), row = truth-vector index."""
    if circ.n > MAX_VARIABLES:
        raise SizeError(f"exhaustive simulation limited to n <= {MAX_VARIABLES}")
    return kernels.run_circuit_all(*gate_arrays(circ), circ.init, circ.n, circ.k)


def output_function(circ: Circuit) -> TruthVector:
    col = rail_states(circ)[:, circ.output_rail]
    return TruthVector(k=circ.k, n=circ.n, values=tuple(int(v) for v in col))


@dataclass(frozen=True)
class VerifyReport:
    equal: bool
    mismatch_index: Optional[int] = None
    inputs: Optional[tuple[int, ...]] = None
    expected: Optional[int] = None
    got: Optional[int] = None

    def __bool__(self):
        return self.equal

    def describe(self) -> str:
        if self.equal:
            return "equal"
        x = ",".join(str(b) for b in self.inputs)
        return f"mismatch at x=({x}): expected {self.expected}, got {self.got}"


def verify(obj: Union[Cascade, Circuit], F: TruthVector) -> VerifyReport:
    if obj.k != F.k or obj.n != F.n:
        raise DimensionError(f"object is (n={obj.n}, k={obj.k}), spec is (n={F.n}, k={F.k})")
    got = truth_vector_of(obj) if isinstance(obj, Cascade) else output_function(obj)
    for i, (want, have) in enumerate(zip(F.values, got.values)):
        if want != have:
            return VerifyReport(False, i, bits_of(i, F.n), want, have)
    return VerifyReport(True)


def oracle_equiv(c: Cascade) -> bool:
    """Group-level fold and gate-level simulation agree on every input."""
    return truth_vector_of(c) == output_function(lower(c))
