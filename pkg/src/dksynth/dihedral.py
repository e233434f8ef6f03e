"""The dihedral group D_k acting on k value rails.

Elements are rail permutations: ``image[i]`` is the rail that the content of
rail ``i`` moves to. Composition runs left to right, in the same order as gates
in a cascade, so ``compose(a, g)`` means "apply a, then g".
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

from .errors import DimensionError, InvalidRadixError


@dataclass(frozen=True)
class GroupElement:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"not a permutation of 0..{len(image) - 1}: {image}")
        object.__setattr__(self, "image", image)

    @property
    def k(self) -> int:
        return len(self.image)

    def __call__(self, rail: int) -> int:
        return self.image[rail]

    @classmethod
    def identity(cls, k: int) -> GroupElement:
        return cls(tuple(range(k)))

    def inverse(self) -> GroupElement:
        inv = [0] * self.k
        for src, dst in enumerate(self.image):
            inv[dst] = src
        return GroupElement(tuple(inv))

    def is_identity(self) -> bool:
        return self.image == tuple(range(self.k))

    def apply_to(self, contents):
        """Move rail contents: the value on rail i ends up on rail image[i]."""
        out = [None] * self.k
        for src, dst in enumerate(self.image):
            out[dst] = contents[src]
        return tuple(out)


def compose(first: GroupElement, second: GroupElement) -> GroupElement:
    """Apply ``first`` then ``second``."""
    if first.k != second.k:
        raise DimensionError(f"cannot compose elements over k={first.k} and k={second.k}")
    return GroupElement(tuple(second.image[r] for r in first.image))


def power(e: GroupElement, m: int) -> GroupElement:
    if m < 0:
        e, m = e.inverse(), -m
    result = GroupElement.identity(e.k)
    base = e
    while m:
        if m & 1:
            result = compose(result, base)
        base = compose(base, base)
        m >>= 1
    return result


def check_radix(k: int) -> int:
    """Validate an output radix; odd k >= 3 is required for the Walsh inverse."""
    if not isinstance(k, int) or isinstance(k, bool):
        raise InvalidRadixError(f"radix must be an integer, got {k!r}")
    if k < 3 or k % 2 == 0:
        raise InvalidRadixError(
            f"radix k={k} unsupported: k must be odd and >= 3, because 2^n must be "
            f"invertible modulo k for the Walsh spectrum to exist"
        )
    return k


def _is_prime(k: int) -> bool:
    return k >= 2 and all(k % p for p in range(2, int(k**0.5) + 1))


@dataclass(frozen=True)
class DihedralGroup:
    k: int
    a: GroupElement
    g: GroupElement
    identity: GroupElement

    @property
    def order(self) -> int:
        return 2 * self.k

    def rotation(self, m: int) -> GroupElement:
        """a^m."""
        return GroupElement(tuple((i + m) % self.k for i in range(self.k)))

    def reflection(self, m: int) -> GroupElement:
        """a^m g (apply a^m, then g)."""
        return GroupElement(tuple((-(i + m)) % self.k for i in range(self.k)))

    def elements(self) -> list[GroupElement]:
        """Canonical enumeration [a^0, ..., a^{k-1}, g, ag, ..., a^{k-1}g]."""
        return [self.rotation(m) for m in range(self.k)] + [
            self.reflection(m) for m in range(self.k)
        ]

    def labels(self) -> list[str]:
        def rot(m):
            return "" if m == 0 else ("a" if m == 1 else f"a^{m}")

        return ["e"] + [rot(m) for m in range(1, self.k)] + [
            rot(m) + "g" for m in range(self.k)
        ]

    def index(self, e: GroupElement) -> int:
        """Position of ``e`` in the canonical enumeration."""
        if e.k != self.k:
            raise DimensionError(f"element over k={e.k} in D_{self.k}")
        shift = (e.image[0]) % self.k
        if e == self.rotation(shift):
            return shift
        shift = (-e.image[0]) % self.k
        if e == self.reflection(shift):
            return self.k + shift
        raise ValueError(f"{e.image} is not an element of D_{self.k}")

    def decompose(self, e: GroupElement) -> tuple[int, int]:
        """Return (m, p) with e = a^m g^p."""
        idx = self.index(e)
        return (idx, 0) if idx < self.k else (idx - self.k, 1)


@lru_cache(maxsize=None)
def make_group(k: int) -> DihedralGroup:
    check_radix(k)
    if not _is_prime(k):
        warnings.warn(
            f"k={k} is composite; the construction is valid for any odd k but the "
            "method's claims are stated for odd primes",
            stacklevel=2,
        )
    a = GroupElement(tuple((i + 1) % k for i in range(k)))
    g = GroupElement(tuple((k - i) % k for i in range(k)))
    return DihedralGroup(k=k, a=a, g=g, identity=GroupElement.identity(k))


def cayley_table(group: DihedralGroup) -> list[list[int]]:
    """table[i][j] = index of compose(element_i, element_j)."""
    elems = group.elements()
    return [[group.index(compose(x, y)) for y in elems] for x in elems]


def check_axioms(group: DihedralGroup) -> dict[str, bool]:
    """Exhaustive group-axiom checks, used by ``cayley --check``."""
    k, a, g, e = group.k, group.a, group.g, group.identity
    elems = group.elements()
    table = cayley_table(group)
    n = len(elems)
    results = {
        "a^k = e": power(a, k) == e,
        "g^2 = e": power(g, 2) == e,
        "g a^m g = a^-m": all(
            compose(compose(g, power(a, m)), g) == power(a, -m) for m in range(k)
        ),
        "|D_k| = 2k": len(set(elems)) == 2 * k,
        "identity row": table[0] == list(range(n)),
        "latin square": all(sorted(row) == list(range(n)) for row in table)
        and all(sorted(col) == list(range(n)) for col in zip(*table)),
        "associativity": all(
            table[table[i][j]][l] == table[i][table[j][l]]
            for i in range(n)
            for j in range(n)
            for l in range(n)
        ),
        "non-abelian": group.index(compose(a, g)) != group.index(compose(g, a)),
    }
    return results
