"""JSON file formats: function specs, circuit documents, cascade documents."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from ..cascade import AGate, Cascade, GGate, expression, format_word
from ..dihedral import check_radix
from ..errors import SpecFormatError, StructuralError
from ..lowering import Circuit, CSwap, Not, Swap
from ..spectral import MAX_VARIABLES, TruthVector

SPEC_FIELDS = ("k", "n", "outputs", "name")
CIRCUIT_FIELDS = ("k", "n", "init", "output_rail", "gates", "ctrl_polarity_note", "provenance")
GATE_FIELDS = {"not": ("ctrl",), "swap": ("r1", "r2"), "cswap": ("ctrl", "r1", "r2")}


@dataclass(frozen=True)
class FunctionSpec:
    k: int
    n: int
    outputs: tuple[int, ...]
    name: Optional[str] = None

    def truth_vector(self) -> TruthVector:
        return TruthVector(k=self.k, n=self.n, values=self.outputs)


def _parse_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _read(path) -> tuple[str, str]:
    path = Path(path)
    try:
        return path.read_text(), str(path)
    except OSError as exc:
        raise SpecFormatError(f"{path}: {exc.strerror}") from None


def _int_field(doc: dict, key: str, source: str) -> int:
    if key not in doc:
        raise SpecFormatError(f"{source}: missing field '{key}'")
    value = doc[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise SpecFormatError(f"{source}: field '{key}' must be an integer, got {value!r}")
    return value


def _int_list(doc: dict, key: str, source: str) -> list[int]:
    if key not in doc:
        raise SpecFormatError(f"{source}: missing field '{key}'")
    value = doc[key]
    if not isinstance(value, list):
        raise SpecFormatError(f"{source}: field '{key}' must be an array")
    for i, v in enumerate(value):
        if not isinstance(v, int) or isinstance(v, bool):
            raise SpecFormatError(f"{source}: field '{key}[{i}]' must be an integer, got {v!r}")
    return value


def _check_unknown(doc: dict, known, source: str, strict: bool):
    extra = sorted(set(doc) - set(known))
    if not extra:
        return
    msg = f"{source}: unknown field(s) {', '.join(extra)}"
    if strict:
        raise SpecFormatError(msg)
    warnings.warn(msg + " (ignored)", stacklevel=3)


def parse_function_spec(text: str, source: str = "<spec>", strict: bool = False) -> FunctionSpec:
    doc = _parse_json(text, source)
    if not isinstance(doc, dict):
        raise SpecFormatError(f"{source}: top level must be an object")
    _check_unknown(doc, SPEC_FIELDS, source, strict)
    k = _int_field(doc, "k", source)
    n = _int_field(doc, "n", source)
    if not 1 <= n <= MAX_VARIABLES:
        raise SpecFormatError(f"{source}: field 'n' must be in 1..{MAX_VARIABLES}, got {n}")
    check_radix(k)
    outputs = _int_list(doc, "outputs", source)
    if len(outputs) != 1 << n:
        raise SpecFormatError(f"{source}: field 'outputs' has {len(outputs)} entries, n={n} needs {1 << n}")
    for i, v in enumerate(outputs):
        if not 0 <= v < k:
            raise SpecFormatError(f"{source}: field 'outputs[{i}]' = {v} outside 0..{k - 1}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise SpecFormatError(f"{source}: field 'name' must be a string")
    return FunctionSpec(k=k, n=n, outputs=tuple(outputs), name=name)


def load_function_spec(path, strict: bool = False) -> FunctionSpec:
    text, source = _read(path)
    return parse_function_spec(text, source, strict)


def dump_function_spec(spec: FunctionSpec) -> str:
    doc: dict[str, Any] = {"k": spec.k, "n": spec.n, "outputs": list(spec.outputs)}
    if spec.name is not None:
        doc["name"] = spec.name
    return json.dumps(doc) + "\n"


# circuits ---------------------------------------------------------------------

def gate_to_dict(gate) -> dict:
    if isinstance(gate, Not):
        return {"op": "not", "ctrl": gate.ctrl}
    if isinstance(gate, Swap):
        return {"op": "swap", "r1": gate.r1, "r2": gate.r2}
    return {"op": "cswap", "ctrl": gate.ctrl, "r1": gate.r1, "r2": gate.r2}


def gate_from_dict(doc, where: str):
    if not isinstance(doc, dict):
        raise SpecFormatError(f"{where}: gate must be an object")
    op = doc.get("op")
    if op not in GATE_FIELDS:
        raise SpecFormatError(f"{where}: field 'op' must be one of not, swap, cswap; got {op!r}")
    fields = GATE_FIELDS[op]
    extra = sorted(set(doc) - set(fields) - {"op"})
    if extra:
        raise SpecFormatError(f"{where}: unexpected field(s) {', '.join(extra)} for {op}")
    args = [_int_field(doc, f, where) for f in fields]
    try:
        return {"not": Not, "swap": Swap, "cswap": CSwap}[op](*args)
    except StructuralError as exc:
        raise SpecFormatError(f"{where}: {exc}") from None


def circuit_to_document(circ: Circuit, provenance: Optional[dict] = None) -> dict:
    return {
        "k": circ.k,
        "n": circ.n,
        "init": list(circ.init),
        "output_rail": circ.output_rail,
        "gates": [gate_to_dict(g) for g in circ.gates],
        "ctrl_polarity_note": list(circ.ctrl_polarity_note),
        "provenance": provenance if provenance is not None else {},
    }


def dump_circuit(circ: Circuit, provenance: Optional[dict] = None) -> str:
    return json.dumps(circuit_to_document(circ, provenance), indent=2) + "\n"


def parse_circuit(text: str, source: str = "<circuit>", strict: bool = False) -> tuple[Circuit, dict]:
    """Returns the circuit and its provenance block."""
    doc = _parse_json(text, source)
    if not isinstance(doc, dict):
        raise SpecFormatError(f"{source}: top level must be an object")
    _check_unknown(doc, CIRCUIT_FIELDS, source, strict)
    k = _int_field(doc, "k", source)
    n = _int_field(doc, "n", source)
    init = _int_list(doc, "init", source)
    output_rail = _int_field(doc, "output_rail", source)
    note = _int_list(doc, "ctrl_polarity_note", source) if "ctrl_polarity_note" in doc else []
    if not isinstance(doc.get("gates"), list):
        raise SpecFormatError(f"{source}: field 'gates' must be an array")
    gates = [gate_from_dict(g, f"{source}: gates[{i}]") for i, g in enumerate(doc["gates"])]
    provenance = doc.get("provenance", {})
    if not isinstance(provenance, dict):
        raise SpecFormatError(f"{source}: field 'provenance' must be an object")
    if k < 2:
        raise SpecFormatError(f"{source}: field 'k' must be >= 2, got {k}")
    try:
        circ = Circuit(k=k, n=n, gates=tuple(gates), init=tuple(init), output_rail=output_rail)
    except StructuralError as exc:
        raise SpecFormatError(f"{source}: {exc}") from None
    if "ctrl_polarity_note" in doc and tuple(sorted(note)) != circ.ctrl_polarity_note:
        raise SpecFormatError(
            f"{source}: field 'ctrl_polarity_note' {note} disagrees with the gates "
            f"(inverted wires {list(circ.ctrl_polarity_note)})"
        )
    return circ, provenance


def load_circuit(path, strict: bool = False) -> tuple[Circuit, dict]:
    text, source = _read(path)
    return parse_circuit(text, source, strict)


# cascades ---------------------------------------------------------------------

def cell_to_dict(cell) -> dict:
    if isinstance(cell, AGate):
        return {"op": "a", "exp": cell.exp}
    return {"op": "g", "controls": list(cell.variables), "const": cell.const}


def cascade_to_document(c: Cascade, signed: bool = True) -> dict:
    return {
        "k": c.k,
        "n": c.n,
        "init": list(c.init),
        "output_rail": c.output_rail,
        "cells": [cell_to_dict(cell) for cell in c.cells],
        "word": format_word(c, signed),
        "expression": expression(c, signed),
    }


def dump_cascade(c: Cascade, signed: bool = True) -> str:
    return json.dumps(cascade_to_document(c, signed), indent=2) + "\n"


def parse_cascade(text: str, source: str = "<cascade>") -> Cascade:
    doc = _parse_json(text, source)
    if not isinstance(doc, dict) or not isinstance(doc.get("cells"), list):
        raise SpecFormatError(f"{source}: expected an object with a 'cells' array")
    cells = []
    for i, cell in enumerate(doc["cells"]):
        where = f"{source}: cells[{i}]"
        if not isinstance(cell, dict):
            raise SpecFormatError(f"{where}: cell must be an object")
        if cell.get("op") == "a":
            cells.append(AGate(_int_field(cell, "exp", where)))
        elif cell.get("op") == "g":
            controls = _int_list(cell, "controls", where)
            cells.append(GGate.on(*controls, const=bool(cell.get("const", False))))
        else:
            raise SpecFormatError(f"{where}: field 'op' must be 'a' or 'g'")
    try:
        return Cascade(
            k=_int_field(doc, "k", source),
            n=_int_field(doc, "n", source),
            cells=tuple(cells),
            init=tuple(_int_list(doc, "init", source)),
            output_rail=_int_field(doc, "output_rail", source),
        )
    except StructuralError as exc:
        raise SpecFormatError(f"{source}: {exc}") from None
