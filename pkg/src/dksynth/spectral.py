"""Walsh matrices and modular Walsh spectra of k-valued truth vectors.

Truth-vector index ``i`` encodes the assignment (x_1, ..., x_n) with x_1 as the
most significant bit, so for n=2 the order is f(0,0), f(0,1), f(1,0), f(1,1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .dihedral import check_radix
from .errors import DimensionError, NoModularInverseError, SizeError

MAX_MATRIX_ORDER = 20
MAX_VARIABLES = 24


def bits_of(index: int, n: int) -> tuple[int, ...]:
    """Assignment (x_1, ..., x_n) for a truth-vector index."""
    return tuple((index >> (n - 1 - i)) & 1 for i in range(n))


def index_of(bits) -> int:
    idx = 0
    for b in bits:
        idx = (idx << 1) | (int(b) & 1)
    return idx


def _infer_n(length: int) -> int:
    n = length.bit_length() - 1
    if length < 2 or 1 << n != length:
        raise DimensionError(f"truth vector length {length} is not 2^n with n >= 1")
    return n


def signed_residue(v: int, k: int) -> int:
    """Map a residue into -(k//2)..k//2 for display."""
    v %= k
    return v - k if v > k // 2 else v


@dataclass(frozen=True)
class TruthVector:
    k: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if self.k < 2:
            raise DimensionError(f"radix must be >= 2, got {self.k}")
        if self.n < 1 or self.n > MAX_VARIABLES:
            raise SizeError(f"n={self.n} outside 1..{MAX_VARIABLES}")
        if len(values) != 1 << self.n:
            raise DimensionError(f"expected {1 << self.n} values for n={self.n}, got {len(values)}")
        for i, v in enumerate(values):
            if not 0 <= v < self.k:
                raise DimensionError(f"values[{i}]={v} outside 0..{self.k - 1}")
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, values, k: int) -> TruthVector:
        values = tuple(values)
        return cls(k=k, n=_infer_n(len(values)), values=values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, index):
        return self.values[index]

    def at(self, bits) -> int:
        if len(bits) != self.n:
            raise DimensionError(f"assignment of length {len(bits)} for n={self.n}")
        return self.values[index_of(bits)]


@dataclass(frozen=True)
class Spectrum:
    k: int
    n: int
    w: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(v) % self.k for v in self.w)
        if len(w) != 1 << self.n:
            raise DimensionError(f"expected {1 << self.n} coefficients for n={self.n}, got {len(w)}")
        object.__setattr__(self, "w", w)

    @classmethod
    def of(cls, w, k: int) -> Spectrum:
        w = tuple(w)
        return cls(k=k, n=_infer_n(len(w)), w=w)

    def signed(self) -> tuple[int, ...]:
        return tuple(signed_residue(v, self.k) for v in self.w)


def walsh_matrix(n: int) -> np.ndarray:
    """Sylvester-ordered +-1 matrix W_n = W_1 (x) ... (x) W_1."""
    if not 1 <= n <= MAX_MATRIX_ORDER:
        raise SizeError(f"Walsh matrix order n={n} outside 1..{MAX_MATRIX_ORDER}")
    w1 = np.array([[1, 1], [1, -1]], dtype=np.int64)
    w = w1
    for _ in range(n - 1):
        w = np.kron(w1, w)
    return w


def walsh_inverse_scalar(n: int, k: int) -> int:
    """s = (2^n)^-1 mod k, so that W_n^-1 = s * W_n (mod k)."""
    if k % 2 == 0:
        raise NoModularInverseError(
            f"2^{n} has no inverse modulo even k={k}: the output radix must be odd"
        )
    return pow(2, -n, k)


def spectrum(F: TruthVector) -> Spectrum:
    if F.k % 2 == 0:
        raise NoModularInverseError(
            f"no Walsh spectrum modulo even k={F.k}: the output radix must be odd"
        )
    check_radix(F.k)
    s = walsh_inverse_scalar(F.n, F.k)
    w = kernels.fwht_mod(F.values, F.k)
    return Spectrum(k=F.k, n=F.n, w=tuple(int(v) * s for v in w))


def reconstruct(w: Spectrum) -> TruthVector:
    values = kernels.fwht_mod(w.w, w.k)
    return TruthVector(k=w.k, n=w.n, values=tuple(int(v) for v in values))
