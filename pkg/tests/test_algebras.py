import itertools

import pytest

from reesseq.algebras import (custom_presentation, is_equigenerated, is_linear_type,
                              linear_type_witness, rees_ideal, substitution_check, sym_ideal)
from reesseq.families import corpus, cycle_path_ideal
from reesseq.ideals import Ideal
from reesseq.parse import parse_ring
from reesseq.polyring import Ring, RingError


def cycle_relations(P, n=5):
    """x_{i-2} y_i - x_i y_{i+1}, indices mod n (1-based in the formula)."""
    S = P.ring
    x = [S.var(i) for i in range(n)]
    y = [S.var(n + i) for i in range(n)]
    return [x[(i - 2) % n] * y[i] - x[i] * y[(i + 1) % n] for i in range(n)]


def test_sym_examples():
    R = Ring(["x1", "x2"])
    x1, x2 = R.gens()
    P = sym_ideal([x1, x2])
    y1, y2 = P.ring.var("y1"), P.ring.var("y2")
    X1, X2 = P.ring.var("x1"), P.ring.var("x2")
    assert P.ideal.equals(Ideal([X2 * y1 - X1 * y2], P.ring))
    assert sym_ideal([x1 * x2 + x2 ** 2]).ideal.is_zero()
    with pytest.raises(ValueError):
        sym_ideal([])


def test_cycle_sym_and_rees_match_relations():
    m = cycle_path_ideal(5, 3)
    P = sym_ideal(m)
    # the variable order in the formula: m_i = x_i x_{i+1} x_{i+2}
    want = Ideal(cycle_relations(P), P.ring)
    assert P.ideal.equals(want)
    assert rees_ideal(m).ideal.equals(want)


def test_rees_examples():
    R = Ring(["x1", "x2"])
    x1, x2 = R.gens()
    P = rees_ideal([x1, x2])
    S = P.ring
    assert P.ideal.equals(Ideal([S("x1*y2 - x2*y1")], S))
    P = rees_ideal([x1 ** 2, x2 ** 2, x1 * x2])
    Sy = sym_ideal([x1 ** 2, x2 ** 2, x1 * x2])
    assert Sy.ideal.is_subset(P.ideal)
    assert not P.ideal.is_subset(Sy.ideal)
    assert any(g.bidegrees() == {(0, 2)} for g in P.gens)


def test_linear_type_examples():
    R = Ring(["x1", "x2", "x3"])
    x1, x2, x3 = R.gens()
    assert is_linear_type([x1 * x2, x2 * x3, x1 * x3])
    S = Ring(["x1", "x2"])
    a, b = S.gens()
    assert not is_linear_type([a ** 2, b ** 2, a * b])
    w = linear_type_witness([a ** 2, b ** 2, a * b])
    assert w is not None and str(w) == "y1*y2 - y3^2"
    assert is_linear_type(cycle_path_ideal(5, 3))


def corpus_seqs():
    for entry in corpus():
        if entry.skip:
            continue
        doc = entry.document()
        if doc.ring.relations:
            continue
        yield entry.id, doc.statements[0].polys


@pytest.mark.parametrize("eid,seq", list(corpus_seqs()))
def test_presentation_invariants(eid, seq):
    R = rees_ideal(seq)
    Sy = sym_ideal(seq)
    assert substitution_check(R)
    assert Sy.ideal.is_subset(R.ideal)
    # degree-one part of the Rees ideal generates Sym
    lin = [g for g in R.gens if all(b[1] == 1 for b in g.bidegrees())]
    assert Ideal(lin, R.ring).equals(Sy.ideal) or not lin and Sy.ideal.is_zero()
    if is_equigenerated(seq):
        assert R.is_bihomogeneous() and Sy.is_bihomogeneous()


def test_linear_type_permutation_invariant():
    R = Ring(["x1", "x2", "x3"])
    seq = [R("x1*x2"), R("x2*x3"), R("x1*x3"), R("x1^2")]
    answers = {is_linear_type(list(p)) for p in itertools.permutations(seq)}
    assert len(answers) == 1


def test_non_equigenerated_flagged():
    R = Ring(["x1", "x2"])
    P = rees_ideal([R("x1"), R("x2^2")])
    assert P.notes and "equigenerated" in P.notes[0]
    assert substitution_check(P)


def test_quotient_base_refused():
    A = parse_ring("ring QQ[x1] mod x1^2;")
    with pytest.raises(RingError):
        rees_ideal([A.var(0)], A)


def test_presentation_json():
    R = Ring(["x1", "x2"])
    js = rees_ideal([R("x1"), R("x2")]).to_json()
    assert set(js) == {"ambient", "bidegrees", "gens", "provenance"}
    assert js["bidegrees"]["y1"] == [0, 1]
    S = parse_ring("ring QQ[x1, x2, y1, y2] ydeg y*;")
    P = custom_presentation(S, [S("x1*y2 - x2*y1")], 2)
    assert P.provenance == "custom" and P.yvars == [2, 3]
