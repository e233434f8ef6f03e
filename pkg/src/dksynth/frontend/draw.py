"""ASCII circuit diagrams: control wires on top, value rails below, one
column per gate.

    *  control      N  inverter      x  swap endpoint      |  crossing
"""

from ..lowering import Circuit, CSwap, Not


def _column(gate, nwires: int, n: int) -> list[str]:
    col = ["-"] * nwires
    if isinstance(gate, Not):
        col[gate.ctrl] = "N"
        return col
    ends = [n + gate.r1, n + gate.r2]
    if isinstance(gate, CSwap):
        ends.append(gate.ctrl)
    lo, hi = min(ends), max(ends)
    for w in range(lo, hi + 1):
        col[w] = "|"
    col[n + gate.r1] = col[n + gate.r2] = "x"
    if isinstance(gate, CSwap):
        col[gate.ctrl] = "*"
    return col


def render(circ: Circuit) -> str:
    n = circ.n
    nwires = n + circ.k
    labels = [f"x{c + 1}" for c in range(n)] + [f"r{r}={circ.init[r]}" for r in range(circ.k)]
    width = max(len(s) for s in labels)
    rows = [label.ljust(width) + " -" for label in labels]
    for gate in circ.gates:
        for w, sym in enumerate(_column(gate, nwires, n)):
            rows[w] += "-" + sym + "-"
    rows = [row + "-" for row in rows]
    rows[n + circ.output_rail] += " f"
    for c in circ.ctrl_polarity_note:
        rows[c] += " (inverted)"
    return "\n".join(rows) + "\n"
