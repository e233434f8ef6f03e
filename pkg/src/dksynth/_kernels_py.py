"""Pure-Python kernels; same signatures and results as the compiled ``_kernels``."""

import numpy as np

NOT, SWAP, CSWAP = 0, 1, 2


def fwht_mod(values, k):
    """Unnormalised Walsh-Hadamard transform (Sylvester order) reduced mod k."""
    v = [int(x) % k for x in values]
    size = len(v)
    h = 1
    while h < size:
        for start in range(0, size, 2 * h):
            for i in range(start, start + h):
                u, w = v[i], v[i + h]
                v[i] = (u + w) % k
                v[i + h] = (u - w) % k
        h *= 2
    return np.array(v, dtype=np.int64)


def run_circuit_all(ops, ctrl, r1, r2, init, n, k):
    """Final rail contents for every control assignment, shape (2**n, k).

    Control wire c carries bit (n - 1 - c) of the assignment index.
    """
    ops, ctrl, r1, r2 = list(ops), list(ctrl), list(r1), list(r2)
    init = [int(v) for v in init]
    out = np.empty((1 << n, k), dtype=np.int64)
    for idx in range(1 << n):
        bits = [(idx >> (n - 1 - c)) & 1 for c in range(n)]
        rails = init[:]
        for op, c, p, q in zip(ops, ctrl, r1, r2):
            if op == NOT:
                bits[c] ^= 1
            elif op == SWAP or bits[c]:
                rails[p], rails[q] = rails[q], rails[p]
        out[idx] = rails
    return out


def fold_cascade_all(kinds, exps, masks, n, k):
    """Fold a cascade word for every assignment into (shift, parity).

    ``kinds`` is 0 for an a-cell, 1 for a g-cell; ``masks`` is the g-cell
    activation mask over assignment-index bits, with bit ``n`` standing for a
    constant term. The word equals a^shift g^parity in apply order.
    """
    kinds, exps, masks = list(kinds), list(exps), list(masks)
    out = np.empty((1 << n, 2), dtype=np.int64)
    for idx in range(1 << n):
        probe = idx | (1 << n)
        shift, parity = 0, 0
        for kind, e, m in zip(kinds, exps, masks):
            if kind == 0:
                shift += -e if parity else e
            else:
                parity ^= bin(probe & m).count("1") & 1
        out[idx, 0] = shift % k
        out[idx, 1] = parity
    return out
