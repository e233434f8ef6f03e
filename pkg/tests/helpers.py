from dksynth.cascade import AGate, Cascade, GGate
from dksynth.dihedral import compose, make_group

def random_cell(rng, n, k):
    if rng.random() < 0.5:
        return AGate(rng.randrange(k))
    return GGate(rng.randrange(1 << n), rng.random() < 0.15)


def random_cascade(rng, n, k, max_len=None, canonical_rails=False):
    max_len = 3 * 2**n if max_len is None else max_len
    cells = [random_cell(rng, n, k) for _ in range(rng.randrange(max_len + 1))]
    if canonical_rails:
        return Cascade(k=k, n=n, cells=cells)
    init = list(range(k))
    rng.shuffle(init)
    return Cascade(k=k, n=n, cells=cells, init=init, output_rail=rng.randrange(k))


def permutation_value(c, x):
    """Oracle for a cascade: compose each cell's rail permutation, then read
    the output rail. Independent of the sign-folding evaluator."""
    group = make_group(c.k)
    total = group.identity
    for cell in c.cells:
        if isinstance(cell, AGate):
            elem = group.rotation(cell.exp)
        else:
            elem = group.g if cell.active(x) else group.identity
        total = compose(total, elem)
    return total.apply_to(c.init)[c.output_rail]


def brute_force_spectrum(values, k):
    """Every w with W_n w = F (mod k), by exhaustive search over k^(2^n) vectors."""
    from itertools import product

    size = len(values)
    hits = []
    for w in product(range(k), repeat=size):
        ok = True
        for row in range(size):
            acc = sum(w[j] * (-1) ** bin(row & j).count("1") for j in range(size))
            if acc % k != values[row]:
                ok = False
                break
        if ok:
            hits.append(list(w))
    return hits


def final_rails(c, x):
    """Full rail contents after the cascade runs on input x."""
    group = make_group(c.k)
    total = group.identity
    for cell in c.cells:
        if isinstance(cell, AGate):
            total = compose(total, group.rotation(cell.exp))
        elif cell.active(x):
            total = compose(total, group.g)
    return total.apply_to(c.init)
