"""Deciders for sequence properties: d-, c-, weak relative regular, almost regular,
regular, linear type, s-, M- and interval-type sequences."""

from __future__ import annotations

from itertools import permutations

from .algebras import is_linear_type, linear_type_witness, sym_ideal
from .ideals import Ideal
from .polyring import MonomialOrder, RingError, mono_divides

UNCONDITIONED_MAX = 7


class Verdict:
    """Outcome of a sequence check; ``witnesses`` holds the ideals at the failing step."""

    def __init__(self, prop, result, fail_index=None, colon=None, intersection=None,
                 expected=None, notes=(), extra=None):
        self.prop = prop
        self.result = bool(result)
        self.fail_index = fail_index
        self.colon = colon
        self.intersection = intersection
        self.expected = expected
        self.notes = list(notes)
        self.extra = extra or {}

    def __bool__(self):
        return self.result

    def __repr__(self):
        s = f"Verdict({self.prop}: {self.result}"
        if self.fail_index is not None:
            s += f", fails at {self.fail_index}"
        return s + ")"

    def to_json(self, quiet=False):
        def gens(I):
            if I is None:
                return None
            return [str(g) for g in I.reduced_gens()]
        out = {"property": self.prop, "result": self.result, "fail_index": self.fail_index,
               "notes": list(self.notes)}
        if not quiet:
            out["witnesses"] = {"colon": gens(self.colon),
                                "intersection": gens(self.intersection),
                                "expected": gens(self.expected)}
            if self.extra:
                out["extra"] = self.extra
        return out


# --- helpers -------------------------------------------------------------

def _ring_of(seq, ring):
    if ring is not None:
        return ring
    if not seq:
        raise ValueError("ring required for an empty sequence")
    return seq[0].ring


def _base_notes(seq, ring):
    notes = []
    p = ring.field.characteristic
    if p:
        notes.append(f"valid in characteristic {p}")
    zero = Ideal([], ring)
    for i, a in enumerate(seq, 1):
        if not a or (ring.relations and zero.contains(a)):
            notes.append(f"element {i} is zero in the base ring")
    return notes


def _prefix(seq, i, ring):
    """I_{i-1} = <a_1, ..., a_{i-1}> (1-based i)."""
    return Ideal(seq[:i - 1], ring)


def _nzd_note(seq, ring, notes):
    if seq and seq[0]:
        c = Ideal([], ring).colon(seq[0])
        if not c.equals(Ideal([], ring)):
            notes.append("a_1 is a zero-divisor: (0 : a_1) != 0; checked explicitly at i = 1")


def _vacuous(prop, notes):
    return Verdict(prop, True, notes=notes + ["vacuous: empty sequence"])


def _need_polynomial_base(ring, prop):
    if ring.relations:
        raise RingError(f"{prop} needs a polynomial base ring")


# --- colon-type sequence checks -------------------------------------------

def is_regular_sequence(seq, ring=None):
    ring = _ring_of(seq, ring)
    notes = _base_notes(seq, ring)
    if not seq:
        return _vacuous("regular", notes)
    for i, a in enumerate(seq, 1):
        prev = _prefix(seq, i, ring)
        if not a:
            return Verdict("regular", False, i, expected=prev, notes=notes)
        col = prev.colon(a)
        if not col.equals(prev):
            return Verdict("regular", False, i, colon=col, expected=prev, notes=notes)
    I = Ideal(seq, ring)
    if I.is_unit():
        return Verdict("regular", False, len(seq), expected=I,
                       notes=notes + ["the sequence generates the unit ideal"])
    return Verdict("regular", True, notes=notes)


def _colon_check(prop, seq, ring, with_product):
    notes = _base_notes(seq, ring)
    if not seq:
        return _vacuous(prop, notes)
    _nzd_note(seq, ring, notes)
    I = Ideal(seq, ring)
    for i, a in enumerate(seq, 1):
        prev = _prefix(seq, i, ring)
        if not a:
            continue
        inner = prev * I if with_product else prev
        col = inner.colon(a)
        inter = col.intersect(I)
        if not inter.equals(prev):
            return Verdict(prop, False, i, col, inter, prev, notes)
    return Verdict(prop, True, notes=notes)


def is_d_sequence(seq, ring=None):
    """(I_{i-1} : a_i) ∩ I = I_{i-1} for all i."""
    return _colon_check("d-seq", seq, _ring_of(seq, ring), False)


def is_weak_rel_reg(seq, ring=None):
    """(I_{i-1} I : a_i) ∩ I = I_{i-1} for all i."""
    return _colon_check("wrr", seq, _ring_of(seq, ring), True)


def is_c_sequence(seq, ring=None, direct_k=None):
    """Linear type plus weak relative regular; ``direct_k`` also tests the powers k <= direct_k."""
    ring = _ring_of(seq, ring)
    _need_polynomial_base(ring, "c-seq")
    notes = _base_notes(seq, ring)
    if not seq:
        return _vacuous("c-seq", notes)
    w = linear_type_witness(seq)
    if w is not None:
        return Verdict("c-seq", False, notes=notes + ["not linear type"],
                       extra={"rees_relation": str(w)})
    v = is_weak_rel_reg(seq, ring)
    v.prop = "c-seq"
    if direct_k and v.result:
        d = c_sequence_direct(seq, direct_k, ring)
        if not d.result:
            d.notes.append("direct power check disagrees with the linear-type reduction")
            return d
    return v


def c_sequence_direct(seq, kmax, ring=None):
    """(I_{i-1} I^k : a_i) ∩ I^k = I_{i-1} I^{k-1} for 1 <= k <= kmax."""
    ring = _ring_of(seq, ring)
    notes = _base_notes(seq, ring)
    I = Ideal(seq, ring)
    for k in range(1, kmax + 1):
        Ik = I.power(k)
        Ik1 = I.power(k - 1)
        for i, a in enumerate(seq, 1):
            prev = _prefix(seq, i, ring)
            col = (prev * Ik).colon(a)
            inter = col.intersect(Ik)
            want = prev * Ik1
            if not inter.equals(want):
                return Verdict("c-seq", False, i, col, inter, want,
                               notes + [f"fails for power k = {k}"])
    return Verdict("c-seq", True, notes=notes + [f"direct check for k <= {kmax}"])


def is_seq_linear_type(seq, ring=None):
    ring = _ring_of(seq, ring)
    _need_polynomial_base(ring, "seq-lt")
    notes = _base_notes(seq, ring)
    if not seq:
        return _vacuous("seq-lt", notes)
    for i in range(1, len(seq) + 1):
        if not is_linear_type(seq[:i]):
            return Verdict("seq-lt", False, i, expected=Ideal(seq[:i], ring),
                           notes=notes + [f"I_{i} is not of linear type"])
    return Verdict("seq-lt", True, notes=notes)


def block_ideal(ring, block="all"):
    """Ideal of all variables, or of the x-block / y-block by bidegree."""
    if block == "all":
        idx = range(ring.nvars)
    elif block == "x":
        idx = [i for i, b in enumerate(ring.bidegrees) if b[1] == 0]
    elif block == "y":
        idx = [i for i, b in enumerate(ring.bidegrees) if b[1] > 0]
    else:
        raise ValueError(f"unknown block {block!r}")
    return Ideal([ring.var(i) for i in idx], ring)


def is_almost_regular(seq, ring=None, block="all"):
    """(I_{i-1} : a_i) ⊆ (I_{i-1} : B^∞) for every i."""
    ring = _ring_of(seq, ring)
    notes = _base_notes(seq, ring)
    prop = "almost-reg" if block == "all" else f"almost-reg-{block}"
    if not seq:
        return _vacuous(prop, notes)
    B = block_ideal(ring, block)
    steps = []
    for i, a in enumerate(seq, 1):
        prev = _prefix(seq, i, ring)
        if not a:
            continue
        col = prev.colon(a)
        sat, k = prev.saturate(B, with_steps=True)
        steps.append(k)
        if not col.is_subset(sat):
            return Verdict(prop, False, i, colon=col, intersection=sat, expected=prev,
                           notes=notes + ["colon not contained in the saturation"],
                           extra={"saturation_steps": steps})
    return Verdict(prop, True, notes=notes, extra={"saturation_steps": steps})


# --- s-sequences ------------------------------------------------------------

def _mono_ideal_min(monos):
    monos = sorted(set(monos), key=lambda m: (sum(m), m))
    out = []
    for m in monos:
        if not any(mono_divides(u, m) for u in out):
            out.append(m)
    return sorted(out)


def is_s_sequence(seq, strong=False, ring=None):
    """in(J) = <in(L_i) y_i> for the symmetric ideal J (y-dominant order, y_1 < ... < y_n)."""
    ring = _ring_of(seq, ring)
    _need_polynomial_base(ring, "s-seq")
    prop = "s-seq-strong" if strong else "s-seq"
    notes = _base_notes(seq, ring)
    if not seq:
        return _vacuous(prop, notes)
    P = sym_ideal(seq)
    S = P.ring
    nx = ring.nvars
    ys = list(range(nx, S.nvars))
    order = MonomialOrder("ydom", S.nvars, yvars=ys)
    inJ = _mono_ideal_min(P.ideal.gb(order).leading_monomials) if P.gens else []
    Ls = [_prefix(seq, i, ring).colon(a) for i, a in enumerate(seq, 1)]
    expect = []
    for i, L in enumerate(Ls):
        for g in L.gb().polys:
            m = g.leading_monomial()
            y = [0] * len(seq)
            y[i] = 1
            expect.append(tuple(m) + tuple(y))
    expect = _mono_ideal_min(expect)
    extra = {"initial_ideal": [str(S.monomial(m)) for m in inJ],
             "expected": [str(S.monomial(m)) for m in expect]}
    if inJ != expect:
        return Verdict(prop, False, notes=notes + ["in(J) differs from <in(L_i) y_i>"], extra=extra)
    if strong:
        for i in range(1, len(Ls)):
            if not Ls[i - 1].is_subset(Ls[i]):
                return Verdict(prop, False, i + 1, colon=Ls[i], expected=Ls[i - 1],
                               notes=notes + [f"L_{i} is not contained in L_{i + 1}"], extra=extra)
    return Verdict(prop, True, notes=notes, extra=extra)


# --- monomial sequences ------------------------------------------------------

def _exponents(seq):
    out = []
    for m in seq:
        if not m.is_monomial():
            raise ValueError(f"{m} is not a monomial")
        out.append(next(iter(m.terms)))
    return out


def _m_order(i, E):
    """An order on supp(m_i), smallest first, satisfying the M-condition, or None."""
    mi = E[i]
    supp = [v for v, e in enumerate(mi) if e]
    later = E[i + 1:]

    def ok(suffix):
        # suffix lists variables from the chosen one upwards
        x = suffix[0]
        for mj in later:
            if mj[x] and not all(mj[v] >= mi[v] for v in suffix):
                return False
        return True

    def search(suffix, left):
        if not left:
            return suffix
        for x in left:
            cand = [x] + suffix
            if ok(cand):
                found = search(cand, [v for v in left if v != x])
                if found is not None:
                    return found
        return None

    return search([], supp)


def is_m_sequence(seq, ring=None):
    ring = _ring_of(seq, ring)
    notes = _base_notes(seq, ring)
    if not seq:
        return _vacuous("m-seq", notes)
    E = _exponents(seq)
    orders = []
    for i in range(len(E)):
        o = _m_order(i, E)
        if o is None:
            return Verdict("m-seq", False, i + 1, notes=notes + [f"no admissible order for m_{i + 1}"])
        orders.append(" < ".join(ring.names[v] for v in o))
    return Verdict("m-seq", True, notes=notes, extra={"orders": orders})


def is_interval_type(seq, ring=None):
    ring = _ring_of(seq, ring)
    notes = _base_notes(seq, ring)
    if not seq:
        return _vacuous("interval", notes)
    E = _exponents(seq)
    s = len(E)
    for i in range(s):
        for j in range(i + 1, s):
            for x in range(ring.nvars):
                if E[i][x] and E[j][x]:
                    for k in range(i, j + 1):
                        if E[i][x] > E[k][x]:
                            return Verdict("interval", False, j + 1, notes=notes + [
                                f"O_{ring.names[x]}(m_{i + 1}) > O_{ring.names[x]}(m_{k + 1})"])
    return Verdict("interval", True, notes=notes)


def _gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def _mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def msequence_c_criterion(seq, ring=None):
    """Divisibility criterion for a monomial M-sequence to be a c-sequence.

    For 1 <= j <= s-1 and k < j there must be l <= j with
    m_l gcd(m_k, m_j) | m_k gcd(m_l, m_{j+1}).
    """
    ring = _ring_of(seq, ring)
    notes = _base_notes(seq, ring)
    if not seq:
        return _vacuous("mseq-c", notes)
    if not is_m_sequence(seq, ring):
        raise ValueError("criterion needs an M-sequence")
    E = _exponents(seq)
    s = len(E)
    for j in range(1, s):
        for k in range(1, j):
            if not any(mono_divides(_mul(E[l - 1], _gcd(E[k - 1], E[j - 1])),
                                    _mul(E[k - 1], _gcd(E[l - 1], E[j])))
                       for l in range(1, j + 1)):
                return Verdict("mseq-c", False, j + 1,
                               notes=notes + [f"no l works for j = {j}, k = {k}"])
    return Verdict("mseq-c", True, notes=notes)


# --- unconditioned d-sequences ------------------------------------------------

def is_unconditioned_d(seq, ring=None):
    """d-sequence in every order; steps are cached by (set of predecessors, element)."""
    ring = _ring_of(seq, ring)
    notes = _base_notes(seq, ring)
    n = len(seq)
    if n > UNCONDITIONED_MAX:
        raise ValueError(f"unconditioned check limited to {UNCONDITIONED_MAX} elements")
    if not seq:
        return _vacuous("uncond-d", notes)
    I = Ideal(seq, ring)
    cache = {}

    def step(before, e):
        key = (before, e)
        if key not in cache:
            prev = Ideal([seq[k] for k in sorted(before)], ring)
            col = prev.colon(seq[e])
            inter = col.intersect(I)
            cache[key] = (inter.equals(prev), col, inter, prev)
        return cache[key]

    count = 0
    for perm in permutations(range(n)):
        count += 1
        before = frozenset()
        for pos, e in enumerate(perm, 1):
            ok, col, inter, prev = step(before, e)
            if not ok:
                return Verdict("uncond-d", False, pos, col, inter, prev, notes,
                               extra={"permutation": [k + 1 for k in perm]})
            before = before | {e}
    return Verdict("uncond-d", True, notes=notes,
                   extra={"permutations": count, "colon_checks": len(cache)})


DECIDERS = {
    "d-seq": is_d_sequence,
    "c-seq": is_c_sequence,
    "wrr": is_weak_rel_reg,
    "almost-reg": is_almost_regular,
    "regular": is_regular_sequence,
    "seq-lt": is_seq_linear_type,
    "s-seq": lambda s, ring=None: is_s_sequence(s, False, ring),
    "s-seq-strong": lambda s, ring=None: is_s_sequence(s, True, ring),
    "m-seq": is_m_sequence,
    "interval": is_interval_type,
    "uncond-d": is_unconditioned_d,
    "mseq-c": msequence_c_criterion,
}
