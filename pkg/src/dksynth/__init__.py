"""Synthesis of binary-input, odd-radix-output functions into dihedral-group
cascades of NOT, SWAP and Fredkin gates."""

from .cascade import (
    AGate,
    Cascade,
    GGate,
    build_canonical,
    count_cells,
    evaluate_group,
    expression,
    format_word,
    parse_word,
    truth_vector_of,
    upper_bound,
)
from .dihedral import DihedralGroup, GroupElement, cayley_table, compose, make_group, power
from .errors import (
    ArityError,
    DimensionError,
    InvalidRadixError,
    NoModularInverseError,
    SizeError,
    SpecFormatError,
    StructuralError,
    SynthError,
)
from .kernels import BACKEND
from .lowering import Circuit, CSwap, Not, Swap, compile_cascade, conjugation_fuse, lower, peephole
from .pipeline import SynthResult, VerificationError, synthesize
from .rewrite import optimize
from .simulate import oracle_equiv, output_function, run_circuit, verify
from .spectral import Spectrum, TruthVector, reconstruct, spectrum, walsh_inverse_scalar, walsh_matrix

__version__ = "0.1.0"

__all__ = [
    "AGate",
    "ArityError",
    "BACKEND",
    "build_canonical",
    "Cascade",
    "cayley_table",
    "Circuit",
    "compile_cascade",
    "compose",
    "conjugation_fuse",
    "count_cells",
    "CSwap",
    "DihedralGroup",
    "DimensionError",
    "evaluate_group",
    "expression",
    "format_word",
    "GGate",
    "GroupElement",
    "InvalidRadixError",
    "lower",
    "make_group",
    "NoModularInverseError",
    "Not",
    "optimize",
    "oracle_equiv",
    "output_function",
    "parse_word",
    "peephole",
    "power",
    "reconstruct",
    "run_circuit",
    "SizeError",
    "SpecFormatError",
    "Spectrum",
    "spectrum",
    "StructuralError",
    "Swap",
    "SynthError",
    "synthesize",
    "SynthResult",
    "truth_vector_of",
    "TruthVector",
    "upper_bound",
    "VerificationError",
    "verify",
    "walsh_inverse_scalar",
    "walsh_matrix",
]
