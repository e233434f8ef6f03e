"""spec -> spectrum -> canonical cascade -> rewrite -> circuit -> verification."""

from __future__ import annotations

from dataclasses import dataclass

from .cascade import Cascade, build_canonical, count_cells
from .errors import SynthError
from .lowering import Circuit, compile_cascade
from .rewrite import RewriteReport, optimize
from .simulate import VerifyReport, verify
from .spectral import Spectrum, TruthVector, spectrum


class VerificationError(SynthError):
    def __init__(self, stage: str, report: VerifyReport):
        super().__init__(f"{stage} failed verification: {report.describe()}")
        self.stage = stage
        self.report = report


@dataclass(frozen=True)
class SynthResult:
    spec: TruthVector
    spectrum: Spectrum
    canonical: Cascade
    cascade: Cascade
    report: RewriteReport
    circuit: Circuit

    def metrics(self) -> dict:
        cells = count_cells(self.cascade)
        return {
            "canonical_cells_unmerged": count_cells(build_canonical(self.spectrum, merge=False)).total,
            "canonical_cells": count_cells(self.canonical).total,
            "cells": cells.total,
            "a_cells": cells.a_cells,
            "g_cells": cells.g_cells,
            **{f"circuit_{key}": value for key, value in self.circuit.metrics().items()},
        }


def synthesize(F: TruthVector, *, optimize_cascade: bool = True, preserve_permutation: bool = False,
               strict: bool = False) -> SynthResult:
    """Run the whole pipeline; both the cascade and the circuit are verified
    against ``F`` by exhaustive simulation before returning."""
    w = spectrum(F)
    canonical = build_canonical(w)
    if optimize_cascade:
        cascade, report = optimize(canonical, preserve_permutation=preserve_permutation)
    else:
        cascade, report = canonical, RewriteReport(initial_cells=len(canonical), final_cells=len(canonical))
    circuit = compile_cascade(
        cascade, optimize=optimize_cascade, preserve_permutation=preserve_permutation, strict=strict
    )
    for stage, obj in (("cascade", cascade), ("circuit", circuit)):
        result = verify(obj, F)
        if not result:
            raise VerificationError(stage, result)
    return SynthResult(F, w, canonical, cascade, report, circuit)
