"""Brute-force linear algebra over graded pieces, independent of the GB engine.

Polynomials are dicts {exponent tuple: Fraction}.  Everything here assumes
homogeneous generators, so the degree-d piece of an ideal is spanned by
monomial multiples of generators and the comparisons below are exact in
each degree.
"""

from fractions import Fraction
from itertools import combinations_with_replacement


def to_dict(f):
    return {m: Fraction(int(c.numerator), int(c.denominator)) for m, c in f.terms.items()}


def monomials(n, d):
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def degree(f):
    return sum(next(iter(f)))


def mul_mono(f, u):
    return {tuple(a + b for a, b in zip(m, u)): c for m, c in f.items()}


def piece(gens, n, d):
    """Spanning vectors of the degree-d part of <gens>."""
    out = []
    for g in gens:
        if not g:
            continue
        e = degree(g)
        if e <= d:
            out.extend(mul_mono(g, u) for u in monomials(n, d - e))
    return out


class Echelon:
    """Row-echelon basis kept fully reduced; pivots are the largest monomial of a row."""

    def __init__(self, vectors=()):
        self.rows = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v):
        v = dict(v)
        changed = True
        while changed:
            changed = False
            for p in sorted(v, reverse=True):
                row = self.rows.get(p)
                if row is not None:
                    c = v[p]
                    for m, a in row.items():
                        x = v.get(m, 0) - c * a
                        if x:
                            v[m] = x
                        else:
                            v.pop(m, None)
                    changed = True
                    break
        return v

    def add(self, v):
        v = self.reduce(v)
        if not v:
            return False
        p = max(v)
        c = v[p]
        v = {m: a / c for m, a in v.items()}
        for q, row in self.rows.items():
            a = row.get(p)
            if a:
                for m, b in v.items():
                    x = row.get(m, 0) - a * b
                    if x:
                        row[m] = x
                    else:
                        row.pop(m, None)
        self.rows[p] = v
        return True

    def contains(self, v):
        return not self.reduce(v)

    def dim(self):
        return len(self.rows)

    def canonical(self):
        return sorted((p, sorted(r.items())) for p, r in self.rows.items())


def member(f, gens, n):
    """f in <gens> for homogeneous f and gens."""
    if not f:
        return True
    return Echelon(piece(gens, n, degree(f))).contains(f)


def colon_piece(gens, f, n, d):
    """Basis of the degree-d part of (<gens> : f)."""
    e = degree(f)
    target = Echelon(piece(gens, n, d + e))
    mons = monomials(n, d)
    # kernel of u -> u*f mod I_{d+e}, via echelon form on (residue | tag)
    rows = {}
    kernel = []
    for i, u in enumerate(mons):
        r = {("r",) + m: c for m, c in target.reduce(mul_mono(f, u)).items()}
        r[("t", i)] = Fraction(1)
        while True:
            piv = [k for k in r if k[0] == "r"]
            if not piv:
                break
            p = max(piv)
            if p in rows:
                row = rows[p]
                c = r[p]
                for k, a in row.items():
                    x = r.get(k, 0) - c * a
                    if x:
                        r[k] = x
                    else:
                        r.pop(k, None)
            else:
                c = r[p]
                rows[p] = {k: a / c for k, a in r.items()}
                r = None
                break
        if r is not None:
            kernel.append({mons[k[1]]: c for k, c in r.items()})
    return kernel


def same_piece(gens_a, gens_b, n, d):
    A = Echelon(piece(gens_a, n, d))
    B = Echelon(piece(gens_b, n, d))
    return A.canonical() == B.canonical()


def same_space(vectors, gens, n, d):
    return Echelon(vectors).canonical() == Echelon(piece(gens, n, d)).canonical()


def intersection_piece(gens_a, gens_b, n, d):
    """Basis of I_d ∩ J_d by the Zassenhaus-style kernel of I_d (+) J_d -> S_d."""
    A = piece(gens_a, n, d)
    B = Echelon(piece(gens_b, n, d))
    rows = {}
    out = []
    for i, a in enumerate(A):
        r = {("r",) + m: c for m, c in B.reduce(a).items()}
        r[("t", i)] = Fraction(1)
        while True:
            piv = [k for k in r if k[0] == "r"]
            if not piv:
                break
            p = max(piv)
            if p in rows:
                row = rows[p]
                c = r[p]
                for k, x in row.items():
                    y = r.get(k, 0) - c * x
                    if y:
                        r[k] = y
                    else:
                        r.pop(k, None)
            else:
                c = r[p]
                rows[p] = {k: x / c for k, x in r.items()}
                r = None
                break
        if r is not None:
            v = {}
            for k, c in r.items():
                for m, x in A[k[1]].items():
                    y = v.get(m, 0) + c * x
                    if y:
                        v[m] = y
                    else:
                        v.pop(m, None)
            if v:
                out.append(v)
    return out


def random_form(rng, ring, d, terms=3, coeffs=(-3, -2, -1, 1, 2, 3)):
    n = ring.nvars
    mons = monomials(n, d)
    out = ring.zero()
    for m in rng.sample(mons, min(terms, len(mons))):
        out = out + ring.monomial(m, rng.choice(coeffs))
    return out


def random_instance(rng, ring_factory, max_vars=4, max_deg=4, max_gens=4):
    """(ring, gens): a few non-zero homogeneous forms in <= max_vars variables."""
    n = rng.randint(2, max_vars)
    ring = ring_factory(n)
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        f = ring.zero()
        while not f:
            f = random_form(rng, ring, rng.randint(1, max_deg - 1), rng.randint(1, 3))
        gens.append(f)
    return ring, gens
