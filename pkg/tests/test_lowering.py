import math

import pytest
from hypothesis import given, settings

from dksynth.cascade import build_canonical, parse_word, truth_vector_of
from dksynth.dihedral import make_group, power
from dksynth.errors import StructuralError
from dksynth.lowering import (
    Circuit,
    CSwap,
    Not,
    Swap,
    absorb_leading_swaps,
    cancel_pairs,
    commutes,
    compile_cascade,
    conjugation_fuse,
    drop_trailing_gates,
    fold_sandwich,
    lower,
    lower_a,
    lower_g,
    peephole,
    restore_controls,
    retarget_inverted,
    strip_dangling_nots,
    transpositions,
)
from dksynth.simulate import output_function, rail_states, run_circuit
from dksynth.spectral import TruthVector, spectrum

from strategies import cascades, circuits

SANDWICH = Circuit(
    k=3, n=1,
    gates=(CSwap(0, 0, 1), Not(0), CSwap(0, 0, 1), CSwap(0, 0, 2)),
    init=(0, 2, 1), output_rail=0,
)


def contents_after(gates, k):
    rails = list(range(k))
    for g in gates:
        rails[g.r1], rails[g.r2] = rails[g.r2], rails[g.r1]
    return rails


@pytest.mark.parametrize("k", [3, 5, 7, 9])
@pytest.mark.parametrize("exp", range(0, 9))
def test_lower_a_realizes_rotation(k, exp):
    group = make_group(k)
    gates = lower_a(exp, group)
    assert len(gates) == k - math.gcd(exp, k)
    # content of rail i lands on rail a^exp(i)
    after = contents_after(gates, k)
    rot = power(group.a, exp)
    assert all(after[rot(i)] == i for i in range(k))


def test_lower_a_k3():
    assert lower_a(1, make_group(3)) == [Swap(0, 1), Swap(0, 2)]


def test_lower_a_k5_square():
    group = make_group(5)
    gates = lower_a(2, group)
    after = contents_after(gates, 5)
    assert all(after[power(group.a, 2)(i)] == i for i in range(5))


def test_transpositions_of_reflection():
    assert transpositions(make_group(5).g) == [(1, 4), (2, 3)]


def test_lower_g():
    group = make_group(5)
    assert lower_g(0b01, group) == [CSwap(0, 1, 4), CSwap(0, 2, 3)]
    assert lower_g(0b110, group, const=True) == [
        Swap(1, 4), Swap(2, 3), CSwap(1, 1, 4), CSwap(1, 2, 3), CSwap(2, 1, 4), CSwap(2, 2, 3),
    ]
    assert lower_g(0, group) == []


def test_increment_lowering_table():
    circ = lower(parse_word("g^{x1} a^1", 3, 1))
    assert run_circuit(circ, (0,)) == (1, 0, 2)
    assert run_circuit(circ, (1,)) == (2, 0, 1)


def test_conjugated_rotation_table():
    circ = lower(parse_word("g^{x1} a^1 g^{x1}", 3, 1))
    assert run_circuit(circ, (0,)) == (1, 0, 2)
    assert run_circuit(circ, (1,)) == (2, 1, 0)
    fused = conjugation_fuse(circ)
    assert fused.rail_gate_count < circ.rail_gate_count
    assert run_circuit(fused, (0,)) == (1, 0, 2)
    assert run_circuit(fused, (1,)) == (2, 1, 0)


def test_fuse_skips_without_pair():
    circ = lower(parse_word("g^{x1} a^1 g^{x2}", 3, 2))
    assert conjugation_fuse(circ) == circ


@settings(max_examples=200, deadline=None)
@given(cascades(max_n=3))
def test_lowering_and_fusion_keep_every_rail(c):
    circ = lower(c)
    assert output_function(circ) == truth_vector_of(c)
    fused = conjugation_fuse(circ)
    assert (rail_states(fused) == rail_states(circ)).all()
    assert fused.rail_gate_count <= circ.rail_gate_count
    assert fused.ctrl_polarity_note == ()


def test_fusion_on_canonical_cascades_saves_gates():
    F = TruthVector.of([0, 1, 1, 2, 1, 2, 2, 0], 3)
    circ = lower(build_canonical(spectrum(F)))
    fused = conjugation_fuse(circ)
    assert fused.rail_gate_count < circ.rail_gate_count
    assert output_function(fused) == F


def test_commutes():
    assert commutes(CSwap(0, 0, 1), Swap(0, 1))
    assert not commutes(Swap(0, 1), Swap(1, 2))
    assert commutes(Swap(0, 1), CSwap(1, 2, 3))
    assert not commutes(Not(0), CSwap(0, 1, 2))
    assert commutes(Not(1), CSwap(0, 1, 2))
    assert commutes(Not(0), Not(0))


def test_cancel_pairs():
    circ = Circuit(k=3, n=2, gates=(CSwap(0, 1, 2), Not(1), CSwap(0, 1, 2)), init=(0, 2, 1))
    assert cancel_pairs(circ).gates == (Not(1),)
    blocked = Circuit(k=3, n=1, gates=(CSwap(0, 1, 2), Not(0), CSwap(0, 1, 2)), init=(0, 2, 1))
    assert cancel_pairs(blocked).gates == blocked.gates


def test_sandwich_folds_to_swap_and_not():
    folded = fold_sandwich(SANDWICH)
    assert folded.gates == (Swap(0, 1), Not(0), CSwap(0, 0, 2))
    assert output_function(folded) == output_function(SANDWICH)


def test_leading_swap_absorbed_and_inverter_retargeted():
    folded = fold_sandwich(SANDWICH)
    absorbed = absorb_leading_swaps(folded)
    assert absorbed.init == (2, 0, 1)
    assert absorbed.gates == (Not(0), CSwap(0, 0, 2))
    final = retarget_inverted(absorbed)
    assert final.gates == (CSwap(0, 0, 2),)
    assert final.output_rail == 2
    assert output_function(final).values == (1, 2)


def test_peephole_reduces_sandwich():
    out = peephole(SANDWICH)
    assert out.gates == (CSwap(0, 0, 2),)
    assert out.init == (2, 0, 1)
    assert out.output_rail == 2
    assert out.ctrl_polarity_note == ()
    assert output_function(out) == output_function(SANDWICH)


def test_drop_trailing_gates():
    circ = Circuit(k=3, n=1, gates=(CSwap(0, 0, 1), Swap(1, 2), Swap(0, 2)), init=(0, 2, 1))
    out = drop_trailing_gates(circ)
    assert out.gates == (CSwap(0, 0, 1),)
    # rail 0 <- rail 2 <- rail 1
    assert out.output_rail == 1
    assert output_function(out) == output_function(circ)


def test_strip_dangling_nots():
    circ = Circuit(k=3, n=2, gates=(Not(0), CSwap(0, 1, 2), Not(1), Not(0)), init=(0, 2, 1))
    assert strip_dangling_nots(circ).gates == (Not(0), CSwap(0, 1, 2))


def test_polarity_note_and_restore():
    circ = Circuit(k=3, n=2, gates=(Not(0), CSwap(0, 1, 2), Not(1), Not(1)), init=(0, 2, 1))
    assert circ.ctrl_polarity_note == (0,)
    fixed = restore_controls(circ)
    assert fixed.gates[-1] == Not(0)
    assert fixed.ctrl_polarity_note == ()


@settings(max_examples=300, deadline=None)
@given(circuits())
def test_peephole_sound_and_shrinking(circ):
    out = peephole(circ)
    assert output_function(out) == output_function(circ)
    assert len(out.gates) <= len(circ.gates)
    assert peephole(out) == out


@settings(max_examples=200, deadline=None)
@given(circuits())
def test_peephole_preserve_permutation(circ):
    out = peephole(circ, preserve_permutation=True)
    assert (rail_states(out) == rail_states(circ)).all()


@settings(max_examples=200, deadline=None)
@given(circuits())
def test_strict_peephole_restores_controls(circ):
    out = peephole(circ, strict=True)
    assert out.ctrl_polarity_note == ()
    assert output_function(out) == output_function(circ)


def test_adder_counts():
    F = TruthVector.of([0, 1, 1, 2, 1, 2, 2, 0], 3)
    from dksynth.rewrite import optimize

    c, _ = optimize(build_canonical(spectrum(F)))
    relaxed = compile_cascade(c)
    strict = compile_cascade(c, strict=True)
    assert output_function(relaxed) == F == output_function(strict)
    assert relaxed.rail_gate_count == strict.rail_gate_count == 7
    assert strict.not_count == 4 and strict.ctrl_polarity_note == ()


def test_circuit_validation():
    with pytest.raises(StructuralError):
        Swap(1, 1)
    with pytest.raises(StructuralError):
        Circuit(k=3, n=1, gates=(CSwap(1, 0, 1),), init=(0, 1, 2))
    with pytest.raises(StructuralError):
        Circuit(k=3, n=1, gates=(Swap(0, 3),), init=(0, 1, 2))
    assert Swap(2, 0) == Swap(0, 2)
