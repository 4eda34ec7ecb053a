"""Division, Buchberger's algorithm and syzygies.

The engine works on raw term dicts ``{exponent tuple: coefficient}``; the
public functions wrap and unwrap :class:`~reesseq.polyring.Polynomial`.
"""

from __future__ import annotations

from heapq import heapify, heappop, heappush

from .polyring import (Polynomial, RingError, check_exponents, mono_divides,
                       mono_lcm)

# divide() re-verifies f = sum q_i g_i + r on every call when this is set
# (the test suite turns it on).
CHECK_DIVISION = False


def _mask(m):
    k = 0
    for i, e in enumerate(m):
        if e:
            k |= 1 << i
    return k


def _addmul(target, src, u, c):
    """target += c * x^u * src   (in place, dict polynomials)."""
    for m, a in src.items():
        nm = tuple(x + y for x, y in zip(m, u))
        v = target.get(nm)
        if v is None:
            target[nm] = a * c
        else:
            v = v + a * c
            if v:
                target[nm] = v
            else:
                del target[nm]


def _scaled(src, c):
    return {m: a * c for m, a in src.items()}


class _Elem:
    """A monic basis element with cached leading data."""

    __slots__ = ("lm", "mask", "tail", "poly", "sugar", "rep")

    def __init__(self, poly, lm, sugar, rep=None):
        self.poly = poly
        self.lm = lm
        self.mask = _mask(lm)
        self.tail = [(m, c) for m, c in poly.items() if m != lm]
        self.sugar = sugar
        self.rep = rep


def _reduce(f, reducers, order, quot=None):
    """Fully reduce dict ``f`` by monic ``reducers`` (list of _Elem).

    If ``quot`` is a list (one dict per reducer) the quotients are accumulated
    there.  Returns the remainder dict.
    """
    negkey = order.negkey
    f = dict(f)
    heap = [(negkey(m), m) for m in f]
    heapify(heap)
    rem = {}
    while heap:
        m = heappop(heap)[1]
        c = f.pop(m, None)
        if c is None:
            continue
        mm = _mask(m)
        for idx, g in enumerate(reducers):
            if g.mask & ~mm == 0:
                lm = g.lm
                if all(a <= b for a, b in zip(lm, m)):
                    u = tuple(a - b for a, b in zip(m, lm))
                    for gm, gc in g.tail:
                        nm = tuple(a + b for a, b in zip(gm, u))
                        v = f.get(nm)
                        if v is None:
                            f[nm] = -(c * gc)
                            heappush(heap, (negkey(nm), nm))
                        else:
                            v = v - c * gc
                            if v:
                                f[nm] = v
                            else:
                                del f[nm]
                    if quot is not None:
                        q = quot[idx]
                        v = q.get(u)
                        v = c if v is None else v + c
                        if v:
                            q[u] = v
                        else:
                            del q[u]
                    break
        else:
            rem[m] = c
    return rem


def _lead(f, order):
    return max(f, key=order.key)


def _monic(f, lm, one):
    c = f[lm]
    if c == one:
        return f, one
    inv = one / c
    return {m: a * inv for m, a in f.items()}, inv


def _rep_combine(rep_a, ua, ca, rep_b, ub, cb):
    out = [dict() for _ in rep_a]
    for k in range(len(rep_a)):
        _addmul(out[k], rep_a[k], ua, ca)
        _addmul(out[k], rep_b[k], ub, cb)
    return out


def _buchberger(polys, order, one, track=False):
    """Reduced Groebner basis of dict polynomials.

    Returns a list of _Elem sorted by leading monomial, descending.  With
    ``track`` each element's ``rep`` expresses it in the input polynomials.
    """
    s = len(polys)
    elems = []
    active = []
    pairs = []
    deg = order.degree
    key = order.key
    counter = 0

    def update(hi):
        nonlocal pairs, active, counter
        h = elems[hi]
        mh = h.lm
        cand = [(gi, mono_lcm(mh, elems[gi].lm)) for gi in active]
        kept = []
        for pos, (gi, l) in enumerate(cand):
            mg = elems[gi].lm
            coprime = all(a == 0 or b == 0 for a, b in zip(mh, mg))
            if coprime:
                kept.append((gi, l, True))
                continue
            dominated = False
            for gj, l2 in cand[pos + 1:]:
                if mono_divides(l2, l):
                    dominated = True
                    break
            if not dominated:
                for gj, l2, _ in kept:
                    if mono_divides(l2, l):
                        dominated = True
                        break
            if not dominated:
                kept.append((gi, l, False))
        new = []
        for gi, l, coprime in kept:
            if coprime:
                continue
            g = elems[gi]
            sug = max(h.sugar + deg(l) - deg(mh), g.sugar + deg(l) - deg(g.lm))
            counter += 1
            new.append((sug, key(l), counter, gi, hi, l))
        old = []
        for p in pairs:
            l12 = p[5]
            if (not mono_divides(mh, l12)
                    or mono_lcm(elems[p[3]].lm, mh) == l12
                    or mono_lcm(elems[p[4]].lm, mh) == l12):
                old.append(p)
        pairs = old + new
        heapify(pairs)
        active = [gi for gi in active if not mono_divides(mh, elems[gi].lm)]
        active.append(hi)

    def add(poly, sugar, rep):
        lm = _lead(poly, order)
        poly, inv = _monic(poly, lm, one)
        if rep is not None and inv != one:
            rep = [_scaled(r, inv) for r in rep]
        check_exponents(lm)
        elems.append(_Elem(poly, lm, sugar, rep))
        update(len(elems) - 1)

    inputs = []
    for i, p in enumerate(polys):
        if not p:
            continue
        rep = None
        if track:
            rep = [dict() for _ in range(s)]
            rep[i] = {(0,) * order.nvars: one}
        inputs.append((max(deg(m) for m in p), i, p, rep))
    # process inputs by sugar so that early basis elements are small
    inputs.sort(key=lambda t: (t[0], t[1]))
    for sug, _, p, rep in inputs:
        reducers = [elems[i] for i in active]
        quot = [dict() for _ in reducers] if track else None
        r = _reduce(p, reducers, order, quot)
        if not r:
            continue
        if track:
            rep = [dict(x) for x in rep]
            for q, g in zip(quot, reducers):
                for u, c in q.items():
                    for k in range(s):
                        _addmul(rep[k], g.rep[k], u, -c)
        add(r, sug, rep)

    while pairs:
        sug, _, _, i, j, l = heappop(pairs)
        gi, gj = elems[i], elems[j]
        ui = tuple(a - b for a, b in zip(l, gi.lm))
        uj = tuple(a - b for a, b in zip(l, gj.lm))
        sp = {}
        for m, c in gi.tail:
            sp[tuple(a + b for a, b in zip(m, ui))] = c
        for m, c in gj.tail:
            nm = tuple(a + b for a, b in zip(m, uj))
            v = sp.get(nm)
            if v is None:
                sp[nm] = -c
            else:
                v = v - c
                if v:
                    sp[nm] = v
                else:
                    del sp[nm]
        reducers = [elems[k] for k in active]
        quot = [dict() for _ in reducers] if track else None
        r = _reduce(sp, reducers, order, quot)
        if not r:
            continue
        rep = None
        if track:
            rep = _rep_combine(gi.rep, ui, one, gj.rep, uj, -one)
            for q, g in zip(quot, reducers):
                for u, c in q.items():
                    for k in range(s):
                        _addmul(rep[k], g.rep[k], u, -c)
        add(r, sug, rep)

    # interreduce the minimal basis
    basis = [elems[i] for i in active]
    out = []
    for idx, g in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        quot = [dict() for _ in others] if track else None
        tail = dict(g.tail)
        r = _reduce(tail, others, order, quot)
        r[g.lm] = one
        rep = None
        if track:
            rep = [dict(x) for x in g.rep]
            for q, o in zip(quot, others):
                for u, c in q.items():
                    for k in range(s):
                        _addmul(rep[k], o.rep[k], u, -c)
        out.append(_Elem(r, g.lm, g.sugar, rep))
    out.sort(key=lambda e: key(e.lm), reverse=True)
    return out


class GroebnerBasis:
    """Reduced Groebner basis: monic, sorted by leading monomial (descending)."""

    def __init__(self, ring, order, elems, reduced=True):
        self.ring = ring
        self.order = order
        self._elems = elems
        self.polys = [Polynomial(ring, e.poly) for e in elems]
        self.reduced = reduced

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.order == other.order
                and self.ring == other.ring and self.polys == other.polys)

    def __hash__(self):
        return hash(tuple(self.polys))

    def __repr__(self):
        body = ", ".join(p.to_str(self.order) for p in self.polys)
        return f"GroebnerBasis({self.order!r}: [{body}])"

    @property
    def leading_monomials(self):
        return [e.lm for e in self._elems]

    def is_unit(self):
        return len(self._elems) == 1 and not any(self._elems[0].lm)

    def is_zero(self):
        return not self._elems

    def normal_form(self, f):
        if f.ring != self.ring:
            raise RingError("ring mismatch")
        return Polynomial(self.ring, _reduce(f.terms, self._elems, self.order))

    def contains(self, f):
        return not self.normal_form(f)

    def reps(self):
        """Representations of basis elements in the input generators (tracked bases only)."""
        return [[Polynomial(self.ring, r) for r in e.rep] for e in self._elems]


def _prep(gens, order):
    gens = list(gens)
    if not gens:
        return None, order, []
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingError("generators live in different rings")
    if order is None:
        order = ring.order
    if order.nvars != ring.nvars:
        raise RingError("order/ring variable count mismatch")
    return ring, order, gens


def buchberger(gens, order=None, ring=None, track=False):
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    r, order, gens = _prep(gens, order)
    ring = r or ring
    if ring is None:
        raise ValueError("cannot infer the ring of an empty generator list")
    order = order or ring.order
    elems = _buchberger([g.terms for g in gens], order, ring.field.one, track=track)
    return GroebnerBasis(ring, order, elems)


def divide(f, divisors, order=None):
    """Multivariate division: returns (quotients, remainder).

    The first divisor (in list order) whose leading term divides the current
    leading term is used; remainder terms are divisible by no leading term.
    """
    for g in divisors:
        if g.ring != f.ring:
            raise RingError("ring mismatch in divide")
        if not g:
            raise ValueError("division by the zero polynomial")
    order = order or f.ring.order
    if order.nvars != f.ring.nvars:
        raise RingError("order does not match ring")
    ring = f.ring
    one = ring.field.one
    lead = []
    for g in divisors:
        lm = g.leading_monomial(order)
        lead.append((lm, _mask(lm), g.terms[lm], g))
    negkey = order.negkey
    p = dict(f.terms)
    heap = [(negkey(m), m) for m in p]
    heapify(heap)
    quots = [dict() for _ in divisors]
    rem = {}
    while heap:
        m = heappop(heap)[1]
        c = p.pop(m, None)
        if c is None:
            continue
        mm = _mask(m)
        for i, (lm, lmask, lc, g) in enumerate(lead):
            if lmask & ~mm == 0 and all(a <= b for a, b in zip(lm, m)):
                u = tuple(a - b for a, b in zip(m, lm))
                q = c / lc if lc != one else c
                quots[i][u] = quots[i].get(u, 0 * one) + q
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    nm = tuple(a + b for a, b in zip(gm, u))
                    v = p.get(nm)
                    if v is None:
                        p[nm] = -(q * gc)
                        heappush(heap, (negkey(nm), nm))
                    else:
                        v = v - q * gc
                        if v:
                            p[nm] = v
                        else:
                            del p[nm]
                break
        else:
            rem[m] = c
    qs = [ring.from_terms(q) for q in quots]
    r = Polynomial(ring, rem)
    if CHECK_DIVISION:
        total = r
        for q, g in zip(qs, divisors):
            total = total + q * g
        assert total == f, "division identity violated"
    return qs, r


def membership(f, G):
    """True iff ``f`` lies in the ideal with Groebner basis ``G``."""
    return G.contains(f)


def ideal_equal(I, J, order=None):
    """Equality of the ideals generated by two polynomial lists."""
    I = [g for g in I if g]
    J = [g for g in J if g]
    if not I or not J:
        return not I and not J
    return buchberger(I, order) == buchberger(J, order)


# ---------------------------------------------------------------------------
# modules over the polynomial ring: vectors are dicts {(pos, mono): coeff}

def vec_from_polys(polys):
    v = {}
    for pos, p in enumerate(polys):
        for m, c in p.terms.items():
            v[(pos, m)] = c
    return v


def vec_to_polys(v, rank, ring):
    parts = [dict() for _ in range(rank)]
    for (pos, m), c in v.items():
        parts[pos][m] = c
    return [Polynomial(ring, t) for t in parts]


class _VElem:
    __slots__ = ("pos", "lm", "mask", "tail", "vec", "rep")

    def __init__(self, vec, lead, rep=None):
        self.vec = vec
        self.pos, self.lm = lead
        self.mask = _mask(self.lm)
        self.tail = [(t, c) for t, c in vec.items() if t != lead]
        self.rep = rep


def mreduce(f, by_pos, negkey, quot=None):
    """Fully reduce vector ``f`` by monic module elements grouped by leading position.

    ``by_pos`` maps position -> list of (index, element); ``quot`` (optional dict)
    collects quotients as {index: {mono: coeff}}.
    """
    f = dict(f)
    heap = [(negkey(t), t) for t in f]
    heapify(heap)
    rem = {}
    while heap:
        t = heappop(heap)[1]
        c = f.pop(t, None)
        if c is None:
            continue
        pos, m = t
        mm = _mask(m)
        for idx, g in by_pos.get(pos, ()):
            if g.mask & ~mm == 0 and all(a <= b for a, b in zip(g.lm, m)):
                u = tuple(a - b for a, b in zip(m, g.lm))
                for (gp, gm), gc in g.tail:
                    nt = (gp, tuple(a + b for a, b in zip(gm, u)))
                    v = f.get(nt)
                    if v is None:
                        f[nt] = -(c * gc)
                        heappush(heap, (negkey(nt), nt))
                    else:
                        v = v - c * gc
                        if v:
                            f[nt] = v
                        else:
                            del f[nt]
                if quot is not None:
                    q = quot.setdefault(idx, {})
                    v = q.get(u)
                    v = c if v is None else v + c
                    if v:
                        q[u] = v
                    else:
                        del q[u]
                break
        else:
            rem[t] = c
    return rem


def top_order_keys(order):
    """Term-over-position key functions for module terms (pos, mono)."""
    cache = {}

    def negkey(t):
        k = cache.get(t)
        if k is None:
            k = cache[t] = order.negkey(t[1]) + (t[0],)
        return k
    return negkey


def module_buchberger(vectors, order, one):
    """Groebner basis (not reduced) of a submodule, term-over-position order."""
    negkey = top_order_keys(order)
    elems = []
    by_pos = {}

    def lead(v):
        return min(v, key=negkey)

    def add(v):
        t = lead(v)
        c = v[t]
        if c != one:
            inv = one / c
            v = {k: a * inv for k, a in v.items()}
        e = _VElem(v, t)
        idx = len(elems)
        pairs_new = [(j, e) for j, g in by_pos.get(e.pos, [])]
        elems.append(e)
        by_pos.setdefault(e.pos, []).append((idx, e))
        return idx, pairs_new

    pairs = []
    for v in vectors:
        r = mreduce(v, by_pos, negkey)
        if r:
            idx, _ = add(r)
            for j, g in by_pos[elems[idx].pos]:
                if j != idx:
                    pairs.append((j, idx))
    while pairs:
        # smallest lcm first
        best = min(range(len(pairs)), key=lambda k: _pair_key(pairs[k], elems, negkey))
        i, j = pairs.pop(best)
        gi, gj = elems[i], elems[j]
        l = mono_lcm(gi.lm, gj.lm)
        # chain criterion
        skip = False
        for k, gk in by_pos.get(gi.pos, ()):
            if k in (i, j):
                continue
            if (mono_divides(gk.lm, l) and (min(i, k), max(i, k)) not in _pairset(pairs)
                    and (min(j, k), max(j, k)) not in _pairset(pairs)):
                skip = True
                break
        if skip:
            continue
        ui = tuple(a - b for a, b in zip(l, gi.lm))
        uj = tuple(a - b for a, b in zip(l, gj.lm))
        sv = {}
        for (p, m), c in gi.tail:
            sv[(p, tuple(a + b for a, b in zip(m, ui)))] = c
        for (p, m), c in gj.tail:
            nt = (p, tuple(a + b for a, b in zip(m, uj)))
            v = sv.get(nt)
            if v is None:
                sv[nt] = -c
            else:
                v = v - c
                if v:
                    sv[nt] = v
                else:
                    del sv[nt]
        r = mreduce(sv, by_pos, negkey)
        if r:
            idx, _ = add(r)
            for k, g in by_pos[elems[idx].pos]:
                if k != idx:
                    pairs.append((k, idx))
    return elems, by_pos, negkey


def _pair_key(p, elems, negkey):
    gi, gj = elems[p[0]], elems[p[1]]
    return tuple(-x for x in negkey((gi.pos, mono_lcm(gi.lm, gj.lm))))


def _pairset(pairs):
    return set(pairs)


class SubmoduleGB:
    """Groebner basis of a submodule of R^rank (for membership tests)."""

    def __init__(self, vectors, rank, ring, order=None):
        self.ring = ring
        self.rank = rank
        self.order = order or ring.order
        vecs = [vec_from_polys(v) for v in vectors]
        self._elems, self._by_pos, self._negkey = module_buchberger(
            [v for v in vecs if v], self.order, ring.field.one)

    def contains(self, vector):
        if len(vector) != self.rank:
            raise ValueError("vector has wrong rank")
        return not mreduce(vec_from_polys(vector), self._by_pos, self._negkey)


class SyzygyModule:
    """Generators of the syzygies of ``gens``: each v satisfies sum v_j g_j = 0."""

    def __init__(self, gens, vectors):
        self.gens = list(gens)
        self.vectors = vectors

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def check(self):
        ring = self.gens[0].ring
        for v in self.vectors:
            total = ring.zero()
            for a, g in zip(v, self.gens):
                total = total + a * g
            if total:
                return False
        return True

    def contains(self, vector):
        ring = self.gens[0].ring
        return SubmoduleGB(self.vectors, len(self.gens), ring).contains(vector)


def _schreyer_pair_syzygies(elems, order, one):
    """Generators of Syz(G) for a Groebner basis G (as vectors over G's indices).

    For each i only the pairs (i, j), j > i, whose lcm quotient is minimal are
    used; their leading terms generate the initial module in Schreyer's order.
    """
    t = len(elems)
    out = []
    for i in range(t):
        gi = elems[i]
        cands = []
        for j in range(i + 1, t):
            gj = elems[j]
            l = mono_lcm(gi.lm, gj.lm)
            u = tuple(a - b for a, b in zip(l, gi.lm))
            cands.append((u, j, l))
        minimal = []
        for u, j, l in sorted(cands, key=lambda c: (sum(c[0]), order.key(c[0]))):
            if any(mono_divides(v, u) for v, _, _ in minimal):
                continue
            minimal.append((u, j, l))
        for ui, j, l in minimal:
            gj = elems[j]
            uj = tuple(a - b for a, b in zip(l, gj.lm))
            sp = {}
            _addmul(sp, gi.poly, ui, one)
            _addmul(sp, gj.poly, uj, -one)
            quot = [dict() for _ in elems]
            r = _reduce(sp, elems, order, quot)
            assert not r, "S-polynomial of a Groebner basis did not reduce to zero"
            vec = [dict() for _ in elems]
            vec[i][ui] = one
            vec[j][uj] = vec[j].get(uj, 0 * one) - one
            for k, q in enumerate(quot):
                for u, c in q.items():
                    v = vec[k].get(u)
                    v = -c if v is None else v - c
                    if v:
                        vec[k][u] = v
                    else:
                        vec[k].pop(u, None)
            out.append(vec)
    return out


def syzygies(gens, order=None, minimize=True):
    """First syzygies of a list of non-zero polynomials.

    Built from the S-pair syzygies of a tracked Groebner basis, transported
    back to ``gens``; for homogeneous input a minimal generating set is kept.
    """
    ring, order, gens = _prep(gens, order)
    if not gens:
        return SyzygyModule([], [])
    if any(not g for g in gens):
        raise ValueError("syzygies of the zero polynomial are not supported")
    s = len(gens)
    one = ring.field.one
    elems = _buchberger([g.terms for g in gens], order, one, track=True)
    zero_mono = (0,) * ring.nvars
    vectors = []
    # syzygies of the basis, pushed through G = A F
    for svec in _schreyer_pair_syzygies(elems, order, one):
        out = [dict() for _ in range(s)]
        for j, coeff in enumerate(svec):
            if not coeff:
                continue
            for k in range(s):
                rep = elems[j].rep[k]
                if not rep:
                    continue
                for u, c in coeff.items():
                    _addmul(out[k], rep, u, c)
        vectors.append(out)
    # e_i - A^T B e_i: F expressed through G and back
    for i, g in enumerate(gens):
        quot = [dict() for _ in elems]
        r = _reduce(g.terms, elems, order, quot)
        assert not r
        out = [dict() for _ in range(s)]
        out[i][zero_mono] = one
        for j, q in enumerate(quot):
            for k in range(s):
                rep = elems[j].rep[k]
                if not rep:
                    continue
                for u, c in q.items():
                    _addmul(out[k], rep, u, -c)
        vectors.append(out)
    polys = []
    seen = set()
    for v in vectors:
        p = [Polynomial(ring, t) for t in v]
        if not any(p):
            continue
        key = tuple(p)
        if key in seen:
            continue
        seen.add(key)
        polys.append(p)
    if minimize and all(g.is_homogeneous() for g in gens):
        polys = _minimal_generators(polys, gens, ring, order)
    return SyzygyModule(gens, polys)


def _vec_degree(v, gens):
    for a, g in zip(v, gens):
        if a:
            return a.total_degree() + g.total_degree()
    return 0


def _minimal_generators(vectors, gens, ring, order):
    """Greedy graded-Nakayama pruning of homogeneous syzygy vectors."""
    vectors = sorted(vectors, key=lambda v: _vec_degree(v, gens))
    kept = []
    negkey = top_order_keys(order)
    one = ring.field.one
    for v in vectors:
        if kept:
            elems, by_pos, _ = module_buchberger([vec_from_polys(k) for k in kept], order, one)
            if not mreduce(vec_from_polys(v), by_pos, negkey):
                continue
        kept.append(v)
    return kept
