"""Acceptance criteria, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines are repeated in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import os
import random
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from reesseq.algebras import is_equigenerated, is_linear_type, rees_ideal
from reesseq.families import check_entry, corpus, cycle_path_ideal, pfaffian_sequence
from reesseq.groebner import buchberger
from reesseq.ideals import Ideal
from reesseq.resolve import betti, check_complex, check_exactness, free_resolution, reg_xy
from reesseq.sequences import (is_c_sequence, is_d_sequence, is_m_sequence,
                               is_unconditioned_d, msequence_c_criterion)

LOG = []

# every resolution computed for criteria 1-6 is re-checked by criterion 8
RESOLUTIONS = {}

# the corpus keeps the claimed height of the Pfaffian ideal; it is 3
# (see the decisions ledger), so that single check is expected to fail
KNOWN_BAD = {("pfaffian5", "height")}


def report(criterion, label, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {label}"
    if detail:
        line += f" ({detail})"
    LOG.append(line)
    print(line)
    return ok


def resolve(tag, source):
    if tag not in RESOLUTIONS:
        RESOLUTIONS[tag] = free_resolution(source)
    return RESOLUTIONS[tag]


def rees_reg_y(tag, gens):
    return reg_xy(resolve(tag, rees_ideal(gens)))[1]


def entries():
    return [e for e in corpus()]


# --- 1. corpus regression ---------------------------------------------------

CORPUS_SECONDS = []


def _entry_params():
    out = []
    for e in entries():
        keys = sorted(e.expect)
        plain = [k for k in keys if (e.id, k) not in KNOWN_BAD]
        out.append(pytest.param(e, plain, id=e.id))
        for k in keys:
            if (e.id, k) in KNOWN_BAD:
                out.append(pytest.param(e, [k], id=f"{e.id}:{k}",
                                        marks=pytest.mark.xfail(strict=True,
                                                                reason="claimed value is wrong; see ledger")))
    return out


@pytest.mark.parametrize("entry,keys", _entry_params())
def test_criterion_1_corpus(entry, keys):
    if entry.skip:
        report(1, f"{entry.id} skipped", True, entry.skip)
        pytest.skip(entry.skip)
    t = time.perf_counter()
    rows = [r for r in check_entry(entry) if r[0].split(":")[0] in keys]
    CORPUS_SECONDS.append(time.perf_counter() - t)
    bad = [f"{k}: expected {w}, got {g}" for k, w, g, ok in rows if not ok]
    split_off = len(keys) == 1 and (entry.id, keys[0]) in KNOWN_BAD
    label = f"{entry.id} {keys[0]}" if split_off else entry.id
    report(1, label, not bad, "; ".join(bad) or ", ".join(r[0] for r in rows))
    assert rows and not bad


def test_criterion_1_budget():
    total = sum(CORPUS_SECONDS)
    report(1, "corpus runtime under 2 minutes", total < 120, f"{total:.1f} s")
    assert total < 120


# --- 2. path ideals of cycles -------------------------------------------------

def test_criterion_2_n5():
    m = cycle_path_ideal(5, 3)
    lt = is_linear_type(m)
    ry = rees_reg_y("rees C5", m)
    ok = lt and ry >= 1
    report(2, "n = 5: linear type and reg_y(Rees) >= 1", ok, f"linear type {lt}, reg_y {ry}")
    assert ok


@pytest.mark.slow
def test_criterion_2_n7():
    m = cycle_path_ideal(7, 5)
    ry = rees_reg_y("rees C7", m)
    report(2, "n = 7: reg_y(Rees) >= 2", ry >= 2, f"reg_y {ry}")
    assert ry >= 2


# --- 3. d-/c-sequences give reg_y = 0 -------------------------------------------

def test_criterion_3():
    checked, bad = [], []
    for e in entries():
        if e.skip:
            continue
        doc = e.document()
        if doc.ring.relations:
            continue
        s = doc.statements[0].polys
        if not is_equigenerated(s):
            continue
        if len(Ideal(s, doc.ring).minimal_generators()) != len(s):
            continue
        if not (is_d_sequence(s, doc.ring) or is_c_sequence(s, doc.ring)):
            continue
        ry = rees_reg_y(f"rees {e.id}", s)
        checked.append(e.id)
        if ry != 0:
            bad.append(f"{e.id}: reg_y {ry}")
    ok = bool(checked) and not bad
    report(3, "d-seq or c-seq => reg_y(Rees) = 0", ok,
           "; ".join(bad) or "checked " + ", ".join(checked))
    assert ok


# --- 4. Pfaffians ---------------------------------------------------------------

def test_criterion_4_natural_order():
    v = is_d_sequence(pfaffian_sequence(2))
    report(4, "Pfaffians are a d-sequence in the natural order", v.result)
    assert v


@pytest.mark.slow
def test_criterion_4_unconditioned():
    v = is_unconditioned_d(pfaffian_sequence(2))
    report(4, "Pfaffians are a d-sequence in all 120 orders", v.result,
           f"{v.extra.get('permutations')} permutations")
    assert v and v.extra["permutations"] == 120


# --- 5. divisibility criterion versus c-sequence ----------------------------------

def test_criterion_5():
    compared, bad = [], []
    for e in entries():
        if e.skip:
            continue
        doc = e.document()
        s = doc.statements[0].polys
        if doc.ring.relations or not all(p.is_monomial() for p in s):
            continue
        if not is_m_sequence(s, doc.ring):
            continue
        a = msequence_c_criterion(s, doc.ring).result
        b = is_c_sequence(s, doc.ring).result
        compared.append(f"{e.id}={a}")
        if a != b:
            bad.append(e.id)
    ok = bool(compared) and not bad
    report(5, "criterion agrees with c-seq on monomial M-sequences", ok,
           ", ".join(bad) or ", ".join(compared))
    assert ok


# --- 6. resolution shape -----------------------------------------------------------

def test_criterion_6_betti():
    m = cycle_path_ideal(5, 3)
    table = betti(resolve("S/P3(C5)", Ideal(m)))
    want = {(0, (0, 0)): 1, (1, (3, 0)): 5, (2, (4, 0)): 5, (3, (5, 0)): 1}
    report(6, "Betti table of B/P3(C5) is 1, 5, 5, 1 at x-degrees 0, 3, 4, 5", table == want)
    assert table == want


def test_criterion_6_rees():
    m = cycle_path_ideal(5, 3)
    P = rees_ideal(m)
    S = P.ring
    x = [S.var(i) for i in range(5)]
    y = [S.var(5 + i) for i in range(5)]
    rel = [x[(i - 2) % 5] * y[i] - x[i] * y[(i + 1) % 5] for i in range(5)]
    ok = P.ideal.equals(Ideal(rel, S))
    report(6, "Rees ideal of P3(C5) is generated by x_{i-2}y_i - x_i y_{i+1}", ok)
    assert ok


# --- 7. oracle equivalence ------------------------------------------------------------

def test_criterion_7():
    import test_oracle
    t = time.perf_counter()
    counts, total = test_oracle.run_all()
    secs = time.perf_counter() - t
    ok = total >= 200 and all(v == total for v in counts.values()) and secs < 300
    report(7, "membership/colon/intersection/division agree with the oracle", ok,
           f"{counts} of {total} instances, {secs:.1f} s")
    assert ok


# --- 8. structural invariants -------------------------------------------------------------

def test_criterion_8_resolutions():
    # make sure the corpus resolutions are included even when run in isolation
    for e in entries():
        if e.skip or e.document().ring.relations:
            continue
        s = e.document().statements[0].polys
        if "reg_y_rees" in e.expect or "reg_y_rees_min" in e.expect:
            resolve(f"rees {e.id}", rees_ideal(s))
        if "betti_x" in e.expect:
            resolve(f"S/I {e.id}", Ideal(s))
    resolve("rees C5", rees_ideal(cycle_path_ideal(5, 3)))
    resolve("S/P3(C5)", Ideal(cycle_path_ideal(5, 3)))
    bad = [tag for tag, res in sorted(RESOLUTIONS.items())
           if not (check_complex(res) and check_exactness(res))]
    report(8, "d o d = 0 and exactness ranks", not bad,
           ", ".join(bad) or f"{len(RESOLUTIONS)} resolutions")
    assert not bad


def test_criterion_8_canonical_gb():
    rng = random.Random(8)
    bad = []
    n = 0
    for e in entries():
        if e.skip:
            continue
        doc = e.document()
        gens = doc.statements[0].polys + list(doc.ring.relations)
        G = buchberger(gens)
        for _ in range(5):
            perm = gens[:]
            rng.shuffle(perm)
            n += 1
            if buchberger(perm) != G:
                bad.append(e.id)
    report(8, "reduced GB invariant under generator permutation", not bad,
           ", ".join(bad) or f"{n} permutations")
    assert not bad


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
