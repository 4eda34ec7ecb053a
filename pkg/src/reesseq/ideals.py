"""Ideal arithmetic: sums, products, intersections, colons, saturation, elimination.

An :class:`Ideal` lives in a :class:`~reesseq.polyring.Ring`; if the ring
carries quotient relations Q, the ideal stands for its image in S/Q and all
computations are done on the lift I + Q in the covering ring S.
"""

from __future__ import annotations

import threading

from .groebner import buchberger, divide
from .polyring import MonomialOrder, Polynomial, Ring, RingError

SATURATION_CAP = 64
AUX_PREFIX = "#t"


class SaturationError(RuntimeError):
    pass


def aux_ring(ring, count=1):
    """``ring`` (relations dropped) with ``count`` reserved variables appended."""
    base = ring.cover
    names = base.names + tuple(f"{AUX_PREFIX}{k}" for k in range(count))
    return Ring(names, base.field, base.bidegrees + ((0, 0),) * count)


def lift(f, big):
    """Embed a polynomial into a ring that extends its variable list."""
    pad = (0,) * (big.nvars - f.ring.nvars)
    return Polynomial(big, {m + pad: c for m, c in f.terms.items()})


def contract(f, small):
    """Inverse of :func:`lift` for polynomials free of the extra variables."""
    n = small.nvars
    t = {}
    for m, c in f.terms.items():
        if any(m[n:]):
            raise ValueError("polynomial involves eliminated variables")
        t[m[:n]] = c
    return Polynomial(small.cover, t)


class Ideal:
    """Generators plus a per-order cache of reduced Groebner bases."""

    def __init__(self, gens, ring=None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("ring required for an empty generator list")
            ring = gens[0].ring
        self.ring = ring
        for g in gens:
            if g.ring != ring.cover:
                raise RingError(f"generator {g} not in {ring!r}")
        self.gens = [g for g in gens if g]
        self._gb = {}
        self._lock = threading.Lock()

    # --- basics ---------------------------------------------------------
    @property
    def quotient(self):
        return self.ring.relations

    def lifted_gens(self):
        return self.gens + list(self.ring.relations)

    def gb(self, order=None):
        order = order or self.ring.order
        G = self._gb.get(order)
        if G is None:
            G = buchberger(self.lifted_gens(), order, ring=self.ring.cover)
            with self._lock:
                G = self._gb.setdefault(order, G)
        return G

    def reduced_gens(self, order=None):
        """Reduced Groebner basis elements that are not already in Q."""
        G = self.gb(order)
        if not self.ring.relations:
            return list(G.polys)
        Q = Ideal([], self.ring.cover) + Ideal(self.ring.relations, self.ring.cover)
        return [g for g in G.polys if not Q.contains(g)]

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def __str__(self):
        return "<" + ", ".join(map(str, self.gens)) + ">"

    def _same_ring(self, other):
        if other.ring != self.ring:
            raise RingError("ideals live in different rings or quotient contexts")

    def contains(self, f):
        if f.ring != self.ring.cover:
            raise RingError("polynomial not in the ideal's ring")
        return self.gb().contains(f)

    __contains__ = contains

    def is_subset(self, other):
        self._same_ring(other)
        return all(other.contains(g) for g in self.gens)

    def equals(self, other):
        self._same_ring(other)
        return self.gb() == other.gb()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb() == other.gb()

    def __hash__(self):
        return hash(self.gb())

    def is_zero(self):
        return all(not self.ring_zero_check(g) for g in self.gens)

    def ring_zero_check(self, g):
        """True iff ``g`` is non-zero in the (quotient) ring."""
        if not self.ring.relations:
            return bool(g)
        return not Ideal([], self.ring).contains(g)

    def is_unit(self):
        return self.gb().is_unit()

    def is_proper(self):
        return not self.is_unit()

    def with_gens(self, gens):
        return Ideal(gens, self.ring)

    # --- arithmetic -------------------------------------------------------
    def __add__(self, other):
        self._same_ring(other)
        return Ideal(self.gens + other.gens, self.ring)

    def __mul__(self, other):
        self._same_ring(other)
        return Ideal([f * g for f in self.gens for g in other.gens], self.ring)

    def power(self, k):
        out = Ideal([self.ring.one()], self.ring)
        for _ in range(k):
            out = out * self
        return out

    def intersect(self, other):
        """I ∩ J by eliminating t from t*I + (1 - t)*J."""
        self._same_ring(other)
        S = self.ring.cover
        A = [g for g in self.lifted_gens()]
        B = [g for g in other.lifted_gens()]
        if not self.gens and not self.ring.relations:
            return Ideal([], self.ring)
        if not other.gens and not self.ring.relations:
            return Ideal([], self.ring)
        return Ideal(_intersect_polys(A, B, S), self.ring)

    def colon(self, f):
        """(I : f) = (1/f) (I ∩ <f>), computed on lifts in quotient context."""
        if f.ring != self.ring.cover:
            raise RingError("polynomial not in the ideal's ring")
        if not f:
            raise ValueError("colon by the zero polynomial")
        S = self.ring.cover
        if self.ring.relations and Ideal([], self.ring).contains(f):
            return Ideal([S.one()], self.ring)
        lifted = self.lifted_gens()
        if not lifted:
            return Ideal([], self.ring)
        inter = _intersect_polys(lifted, [f], S)
        gens = []
        for g in inter:
            (q,), r = divide(g, [f])
            if r:
                raise AssertionError("intersection with <f> not divisible by f")
            gens.append(q)
        return Ideal(gens, self.ring)

    def colon_ideal(self, other):
        """(I : J) = ∩ over generators g of J of (I : g)."""
        self._same_ring(other)
        result = None
        for g in other.gens:
            if self.ring.relations and Ideal([], self.ring).contains(g):
                continue
            c = self.colon(g)
            result = c if result is None else result.intersect(c)
        if result is None:
            return Ideal([self.ring.one()], self.ring)
        return result

    def saturate(self, other, with_steps=False):
        """(I : J^∞) by colon iteration; ``with_steps`` also returns the stabilization index."""
        self._same_ring(other)
        cur = self
        for step in range(SATURATION_CAP + 1):
            nxt = cur.colon_ideal(other)
            if nxt.equals(cur):
                result = Ideal(cur.reduced_gens(), self.ring)
                return (result, step) if with_steps else result
            cur = nxt
        raise SaturationError(f"saturation did not stabilize within {SATURATION_CAP} steps")

    def eliminate(self, names_or_indices):
        """I ∩ K[remaining variables] (polynomial base rings only)."""
        if self.ring.relations:
            raise RingError("eliminate needs a polynomial ring; lift the quotient first")
        idx = sorted({v if isinstance(v, int) else self.ring.index(v)
                      for v in names_or_indices})
        if not idx:
            return Ideal(list(self.gens), self.ring)
        S = self.ring
        order = MonomialOrder("block", S.nvars, elim=idx)
        G = buchberger(self.gens, order, ring=S) if self.gens else None
        if G is None:
            return Ideal([], S)
        keep = [g for g in G.polys if all(not any(m[i] for i in idx) for m in g.terms)]
        return Ideal(keep, S)

    # --- invariants -------------------------------------------------------
    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gens)

    def minimal_generators(self):
        """A minimal homogeneous generating set, chosen greedily by degree (graded Nakayama)."""
        if not self.is_homogeneous():
            raise ValueError("minimal generators need a homogeneous ideal")
        kept = []
        for g in sorted(self.gens, key=lambda p: p.total_degree()):
            if kept and Ideal(kept, self.ring).contains(g):
                continue
            if not kept and self.ring.relations and Ideal([], self.ring).contains(g):
                continue
            kept.append(g)
        return kept

    def dimension(self):
        """Krull dimension of S/(I + Q) from the initial ideal (max independent set)."""
        G = self.gb()
        n = self.ring.nvars
        if G.is_unit():
            return -1
        supports = [frozenset(i for i, e in enumerate(m) if e) for m in G.leading_monomials]
        best = 0

        def independent(sub):
            return all(not s <= sub for s in supports)

        def search(i, chosen):
            nonlocal best
            if len(chosen) + (n - i) <= best:
                return
            if i == n:
                best = max(best, len(chosen))
                return
            with_i = chosen | {i}
            if independent(with_i):
                search(i + 1, with_i)
            search(i + 1, chosen)

        search(0, frozenset())
        return best

    def height(self):
        """Height of I in the covering polynomial ring (codimension of S/(I+Q))."""
        d = self.dimension()
        return None if d < 0 else self.ring.nvars - d


def _intersect_polys(A, B, S):
    T = aux_ring(S)
    n = S.nvars
    t = T.var(n)
    one = T.one()
    gens = [t * lift(a, T) for a in A] + [(one - t) * lift(b, T) for b in B]
    # weight 0 on t keeps t*I + (1-t)*J homogeneous for homogeneous inputs
    weights = tuple(_sugar_weights(A + B, S)) + (0,)
    inner = MonomialOrder("grevlex", n + 1, weights=weights)
    order = MonomialOrder("block", n + 1, elim=(n,), inner=inner, weights=weights)
    G = buchberger(gens, order, ring=T)
    keep = [g for g in G.polys if all(m[n] == 0 for m in g.terms)]
    out = [contract(g, S) for g in keep]
    # present the answer through a grevlex reduced basis for canonical generators
    if not out:
        return []
    return buchberger(out, S.order, ring=S).polys


def _sugar_weights(polys, S):
    return (1,) * S.nvars


def monomial_colon(gens, f):
    """Closed form (I : f) = < m / gcd(m, f) > for monomial I and monomial f."""
    (fm,) = f.terms
    out = []
    for g in gens:
        (gm,) = g.terms
        q = tuple(a - min(a, b) for a, b in zip(gm, fm))
        out.append(g.ring.monomial(q))
    return out
