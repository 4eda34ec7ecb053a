"""Symmetric and Rees algebra presentations and the linear-type test."""

from __future__ import annotations

from .groebner import buchberger, syzygies
from .ideals import Ideal, contract, lift
from .polyring import MonomialOrder, Polynomial, Ring, RingError


class Presentation:
    """S/J with S = K[x-block, y-block], x of bidegree (1,0) and y of bidegree (0,1).

    ``base`` is the ring of the presented ideal; its variables come first in S.
    """

    def __init__(self, ring, ideal, provenance, base, source=(), notes=()):
        self.ring = ring
        self.ideal = ideal
        self.provenance = provenance
        self.base = base
        self.source = list(source)
        self.notes = list(notes)

    @property
    def gens(self):
        return self.ideal.gens

    @property
    def xvars(self):
        return list(range(self.base.nvars))

    @property
    def yvars(self):
        return list(range(self.base.nvars, self.ring.nvars))

    def quotient_ring(self):
        """The presented algebra as a quotient-context ring."""
        return Ring(self.ring.names, self.ring.field, self.ring.bidegrees, self.gens)

    def is_bihomogeneous(self):
        return all(g.is_bihomogeneous() for g in self.gens)

    def to_json(self):
        return {
            "ambient": {"field": self.ring.field.name, "vars": list(self.ring.names)},
            "bidegrees": {n: list(b) for n, b in zip(self.ring.names, self.ring.bidegrees)},
            "gens": [str(g) for g in self.gens],
            "provenance": self.provenance,
        }

    def __repr__(self):
        return f"Presentation({self.provenance}, {len(self.gens)} generators in {self.ring!r})"


def y_names(base, n):
    """Fresh names y1..yn (falling back to T1..Tn, then Y_1.. on clashes)."""
    for stem in ("y", "T", "Y_"):
        names = [f"{stem}{j}" for j in range(1, n + 1)]
        if not set(names) & set(base.names):
            return names
    raise RingError("cannot find fresh names for the y-block")


def bigraded_ring(base, n):
    names = list(base.names) + y_names(base, n)
    bideg = [(sum(b), 0) for b in base.bidegrees] + [(0, 1)] * n
    return Ring(names, base.field, bideg)


def _check_gens(gens, ring=None):
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list")
    base = gens[0].ring
    for g in gens:
        if g.ring != base:
            raise RingError("generators live in different rings")
        if not g:
            raise ValueError("zero generator")
    if base.relations or (ring is not None and ring.relations):
        raise RingError("Rees/symmetric algebras need a polynomial base ring")
    return gens, base


def is_equigenerated(gens):
    degs = {g.total_degree() for g in gens}
    return len(degs) == 1 and all(g.is_homogeneous() for g in gens)


def sym_ideal(gens, ring=None):
    """Defining ideal of Sym(I): linear forms sum_j s_j y_j over the first syzygies.

    ``ring`` is only consulted to refuse quotient base rings.
    """
    gens, base = _check_gens(gens, ring)
    n = len(gens)
    S = bigraded_ring(base, n)
    ys = [S.var(base.nvars + j) for j in range(n)]
    forms = []
    for vec in syzygies(gens):
        f = S.zero()
        for s, y in zip(vec, ys):
            if s:
                f = f + lift(s, S) * y
        if f:
            forms.append(f)
    return Presentation(S, Ideal(forms, S), "symmetric", base, gens)


def rees_ideal(gens, ring=None):
    """Defining ideal of R(I) = K[x][It]: eliminate t from <y_j - t a_j>."""
    gens, base = _check_gens(gens, ring)
    n = len(gens)
    S = bigraded_ring(base, n)
    notes = []
    if not is_equigenerated(gens):
        notes.append("ideal is not equigenerated; bihomogeneity of J not guaranteed")
    T = Ring(S.names + ("#t0",), S.field, S.bidegrees + ((0, 0),))
    t = T.var(S.nvars)
    nx = base.nvars
    homog = all(g.is_homogeneous() for g in gens)
    if homog:
        # y_j - t a_j is homogeneous once deg y_j = deg a_j + 1
        weights = [1] * nx + [g.total_degree() + 1 for g in gens] + [1]
    else:
        weights = [1] * T.nvars
    rel = []
    for j, g in enumerate(gens):
        rel.append(T.var(nx + j) - t * lift(g, T))
    inner = MonomialOrder("grevlex", T.nvars, weights=weights)
    order = MonomialOrder("block", T.nvars, elim=(S.nvars,), inner=inner, weights=weights)
    G = buchberger(rel, order, ring=T)
    J = [contract(g, S) for g in G.polys if all(m[S.nvars] == 0 for m in g.terms)]
    return Presentation(S, Ideal(J, S), "rees", base, gens, notes)


def substitution_check(P):
    """Every generator of a Rees ideal vanishes under y_j -> t a_j."""
    S = P.ring
    T = Ring(S.names + ("#t0",), S.field, S.bidegrees + ((0, 0),))
    t = T.var(S.nvars)
    nx = P.base.nvars
    images = [T.var(i) for i in range(nx)] + [t * lift(a, T) for a in P.source]
    return all(not lift(g, T).substitute(images) for g in P.gens)


def is_linear_type(gens, ring=None):
    """True iff the Rees ideal equals the symmetric ideal."""
    return linear_type_witness(gens, ring) is None


def linear_type_witness(gens, ring=None):
    """None if of linear type, else a Rees relation outside the symmetric ideal."""
    R = rees_ideal(gens, ring)
    Sy = sym_ideal(gens, ring)
    for g in R.gens:
        if not Sy.ideal.contains(g):
            return g
    return None


def custom_presentation(ring, gens, nx):
    """Wrap a user-supplied bigraded ideal; the first ``nx`` variables form the x-block."""
    base = Ring(ring.names[:nx], ring.field, ring.bidegrees[:nx])
    return Presentation(ring, Ideal(gens, ring), "custom", base)


def presentation_to_polys(P):
    return [Polynomial(P.ring, dict(g.terms)) for g in P.gens]
