"""Bigraded free resolutions, Betti tables and x-/y-regularity.

The resolution is built as a Schreyer frame: a Groebner basis of J, then the
S-pair syzygies of each level (which form a Groebner basis of the next
syzygy module for the induced order).  Unit entries are cancelled afterwards.
"""

from __future__ import annotations

import random
from collections import Counter

from gmpy2 import mpq

from .groebner import _addmul, _buchberger, _VElem, mreduce
from .polyring import BidegreeError, Polynomial, mono_divides, mono_lcm


class ResolutionError(RuntimeError):
    pass


class Resolution:
    """Differentials d_1..d_L of a free resolution of S/J plus bidegree shifts.

    ``cols[i]`` describes d_{i+1}: one sparse column per basis element of
    F_{i+1}, mapping row index to a term dict.  ``shifts[i]`` lists the
    bidegrees of the basis of F_i.
    """

    def __init__(self, ring, cols, shifts, minimal=False):
        self.ring = ring
        self.cols = cols
        self.shifts = shifts
        self.minimal = minimal

    @property
    def length(self):
        return len(self.cols)

    def ranks(self):
        return [len(s) for s in self.shifts]

    def matrix(self, i):
        """d_i as a dense list of rows of Polynomials (1 <= i <= length)."""
        ring = self.ring.cover
        nrows = len(self.shifts[i - 1])
        cols = self.cols[i - 1]
        out = [[ring.zero() for _ in cols] for _ in range(nrows)]
        for c, col in enumerate(cols):
            for r, t in col.items():
                out[r][c] = Polynomial(ring, dict(t))
        return out

    def __repr__(self):
        kind = "minimal" if self.minimal else "non-minimal"
        return f"Resolution({kind}, ranks={self.ranks()})"


# --- Schreyer frame -----------------------------------------------------

class _Level:
    """Basis of F_k: total leading monomial and tie-break chain per element."""

    def __init__(self, tot, chain, polykey):
        self.tot = tot
        self.chain = chain
        self._polykey = polykey
        self._neg = {}

    def negkey(self, t):
        k = self._neg.get(t)
        if k is None:
            pos, m = t
            tm = tuple(a + b for a, b in zip(m, self.tot[pos]))
            k = self._neg[t] = tuple(-e for e in self._polykey(tm)) + tuple(-e for e in self.chain[pos])
        return k


def _lex_desc(m):
    return tuple(-e for e in m)


def _sort_level(elems):
    """Order by (component, lex-descending lead) so the frame has length <= nvars."""
    return sorted(elems, key=lambda e: (e.pos, _lex_desc(e.lm)))


def _next_level(elems, ambient, one):
    """S-pair syzygies of ``elems``: vectors in F_{k-1}, a GB for ``ambient``'s order."""
    by_pos = {}
    for idx, e in enumerate(elems):
        by_pos.setdefault(e.pos, []).append((idx, e))
    out = []
    for a, ea in enumerate(elems):
        cands = []
        for b, eb in by_pos[ea.pos]:
            if b <= a:
                continue
            l = mono_lcm(ea.lm, eb.lm)
            cands.append((tuple(x - y for x, y in zip(l, ea.lm)), b, l))
        minimal = []
        for ua, b, l in sorted(cands, key=lambda c: (sum(c[0]), c[0], c[1])):
            if any(mono_divides(v, ua) for v, _, _ in minimal):
                continue
            minimal.append((ua, b, l))
        for ua, b, l in minimal:
            eb = elems[b]
            ub = tuple(x - y for x, y in zip(l, eb.lm))
            sv = {}
            for (p, m), c in ea.vec.items():
                sv[(p, tuple(x + y for x, y in zip(m, ua)))] = c
            for (p, m), c in eb.vec.items():
                nt = (p, tuple(x + y for x, y in zip(m, ub)))
                v = sv.get(nt)
                if v is None:
                    sv[nt] = -c
                else:
                    v = v - c
                    if v:
                        sv[nt] = v
                    else:
                        del sv[nt]
            quot = {}
            r = mreduce(sv, by_pos, ambient.negkey, quot)
            if r:
                raise ResolutionError("S-vector of a Schreyer level did not reduce to zero")
            vec = {(a, ua): one}
            vec[(b, ub)] = vec.get((b, ub), 0 * one) - one
            for idx, q in quot.items():
                for u, c in q.items():
                    t = (idx, u)
                    v = vec.get(t)
                    v = -c if v is None else v - c
                    if v:
                        vec[t] = v
                    else:
                        vec.pop(t, None)
            out.append(_VElem(vec, (a, ua)))
    return out


def _check_bihomogeneous(gens):
    for g in gens:
        if not g.is_bihomogeneous():
            raise BidegreeError(f"generator {g} is not bihomogeneous")


def schreyer_resolution(gens, ring=None):
    """Non-minimal free resolution of S/<gens> (a Schreyer frame)."""
    gens = [g for g in gens if g]
    if ring is None:
        if not gens:
            raise ValueError("ring required for the zero ideal")
        ring = gens[0].ring
    S = ring.cover
    _check_bihomogeneous(gens)
    n = S.nvars
    one = S.field.one
    zero_mono = (0,) * n
    shifts = [[(0, 0)]]
    cols = []
    if not gens:
        return Resolution(S, cols, shifts)
    polykey = S.order.key
    raw = _buchberger([g.terms for g in gens], S.order, one)
    elems = _sort_level([_VElem({(0, m): c for m, c in e.poly.items()}, (0, e.lm)) for e in raw])
    prev = _Level([zero_mono], [()], polykey)
    k = 0
    while elems:
        k += 1
        if k > n:
            raise ResolutionError("Schreyer frame longer than the number of variables")
        col = []
        for e in elems:
            c = {}
            for (p, m), v in e.vec.items():
                c.setdefault(p, {})[m] = v
            col.append(c)
        cols.append(col)
        tot = [tuple(a + b for a, b in zip(e.lm, prev.tot[e.pos])) for e in elems]
        chain = [prev.chain[e.pos] + (-i,) for i, e in enumerate(elems)]
        shifts.append([S.mono_bidegree(t) for t in tot])
        level = _Level(tot, chain, polykey)
        elems = _sort_level(_next_level(elems, prev, one))
        prev = level
    return Resolution(S, cols, shifts)


# --- minimalization -----------------------------------------------------

def _is_unit(t):
    return len(t) == 1 and not any(next(iter(t)))


def minimalize(res):
    """Cancel unit entries until none remain (homotopy-equivalent complex)."""
    one = res.ring.field.one
    L = res.length
    # mats[i] = d_{i+1} as {col: {row: terms}}
    mats = [{c: {r: dict(t) for r, t in col.items()} for c, col in enumerate(cols)}
            for cols in res.cols]
    rowidx = []
    for M in mats:
        ri = {}
        for c, col in M.items():
            for r in col:
                ri.setdefault(r, set()).add(c)
        rowidx.append(ri)
    alive = [set(range(len(s))) for s in res.shifts]

    def drop_row(i, r):
        M, ri = mats[i], rowidx[i]
        for c in ri.pop(r, ()):
            del M[c][r]

    def drop_col(i, c):
        M, ri = mats[i], rowidx[i]
        for r in M.pop(c):
            ri[r].discard(c)

    for i in range(L):
        M, ri = mats[i], rowidx[i]
        while True:
            best = None
            for c in sorted(M):
                for r, t in M[c].items():
                    if _is_unit(t):
                        cost = len(M[c]) * len(ri[r])
                        if best is None or cost < best[0]:
                            best = (cost, r, c)
            if best is None:
                break
            _, k, l = best
            u = next(iter(M[l][k].values()))
            inv = one / u
            colL = {r: t for r, t in M[l].items() if r != k}
            for c in list(ri[k]):
                if c == l:
                    continue
                akc = M[c][k]
                # A[:, c] -= A[:, l] * A[k, c] / u
                for r, arl in colL.items():
                    prod = {}
                    for m1, c1 in akc.items():
                        _addmul(prod, arl, m1, -c1 * inv)
                    cur = M[c].get(r)
                    if cur is None:
                        if prod:
                            M[c][r] = prod
                            ri.setdefault(r, set()).add(c)
                    else:
                        for m, v in prod.items():
                            w = cur.get(m)
                            w = v if w is None else w + v
                            if w:
                                cur[m] = w
                            else:
                                cur.pop(m, None)
                        if not cur:
                            del M[c][r]
                            ri[r].discard(c)
            drop_col(i, l)
            drop_row(i, k)
            alive[i + 1].discard(l)
            alive[i].discard(k)
            if i + 1 < L:
                drop_row(i + 1, l)
            if i > 0:
                drop_col(i - 1, k)
    # renumber surviving basis elements
    newidx = [{old: new for new, old in enumerate(sorted(a))} for a in alive]
    shifts = [[res.shifts[i][j] for j in sorted(alive[i])] for i in range(L + 1)]
    cols = []
    for i in range(L):
        M = mats[i]
        col = []
        for c in sorted(M):
            col.append({newidx[i][r]: t for r, t in M[c].items()})
        cols.append(col)
    while cols and not shifts[-1]:
        cols.pop()
        shifts.pop()
    return Resolution(res.ring, cols, shifts, minimal=True)


def free_resolution(source, minimal=True, ring=None):
    """Resolution of S/J for a Presentation, an Ideal or a list of polynomials."""
    from .algebras import Presentation
    from .ideals import Ideal
    if isinstance(source, Presentation):
        gens, ring = source.gens, source.ring
    elif isinstance(source, Ideal):
        if source.ring.relations:
            raise ValueError("resolve a polynomial-ring ideal (lift the quotient first)")
        gens, ring = source.gens, source.ring
    else:
        gens = list(source)
        ring = gens[0].ring if gens else ring
    res = schreyer_resolution(gens, ring)
    return minimalize(res) if minimal else res


# --- invariants and checks ----------------------------------------------

def betti(res):
    """Bigraded Betti numbers {(i, (dx, dy)): multiplicity} of a minimal resolution."""
    if not res.minimal:
        raise ValueError("Betti numbers need a minimal resolution")
    out = {}
    for i, sh in enumerate(res.shifts):
        for b, mult in Counter(sh).items():
            out[(i, b)] = mult
    return dict(sorted(out.items()))


def reg_xy(res):
    """(reg_x, reg_y); None stands for minus infinity (zero module)."""
    if not res.minimal:
        raise ValueError("regularity needs a minimal resolution")
    rx = ry = None
    for i, sh in enumerate(res.shifts):
        if not sh:
            continue
        a = max(s[0] for s in sh) - i
        b = max(s[1] for s in sh) - i
        rx = a if rx is None else max(rx, a)
        ry = b if ry is None else max(ry, b)
    return rx, ry


def check_shifts(res):
    """Every non-zero entry of d_i has bidegree shift_i[col] - shift_{i-1}[row]."""
    ring = res.ring
    for i, cols in enumerate(res.cols):
        for c, col in enumerate(cols):
            tgt = res.shifts[i + 1][c]
            for r, t in col.items():
                src = res.shifts[i][r]
                want = (tgt[0] - src[0], tgt[1] - src[1])
                for m in t:
                    if ring.mono_bidegree(m) != want:
                        return False
    return True


def check_complex(res):
    """d_i o d_{i+1} = 0 exactly for every i."""
    for i in range(res.length - 1):
        A, B = res.cols[i], res.cols[i + 1]
        for col in B:
            total = {}
            for mid, t in col.items():
                for r, a in A[mid].items():
                    acc = total.setdefault(r, {})
                    for m, c in t.items():
                        _addmul(acc, a, m, c)
            if any(v for v in total.values()):
                return False
    return True


def _rank(rows):
    """Rank of a dense matrix over QQ by exact Gaussian elimination."""
    rows = [r[:] for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        inv = 1 / p[c]
        for i in range(rank + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f * inv
                ri = rows[i]
                for j in range(c, ncols):
                    if p[j]:
                        ri[j] = ri[j] - f * p[j]
        rank += 1
    return rank


def _eval_terms(t, point):
    total = mpq(0)
    for m, c in t.items():
        v = mpq(c)
        for x, e in zip(point, m):
            if e:
                v *= x ** e
        total += v
    return total


def specialized_ranks(res, seed=0, trials=2):
    """Ranks of the differentials at random rational points (maximum over trials).

    Each value is a lower bound for the rank over the fraction field.
    """
    if res.ring.field.characteristic:
        raise ValueError("rank spot-check is implemented over QQ only")
    rng = random.Random(seed)
    best = [0] * res.length
    for _ in range(trials):
        point = [mpq(rng.randint(-10**6, 10**6), rng.randint(1, 10**3)) for _ in range(res.ring.nvars)]
        for i, cols in enumerate(res.cols):
            nrows = len(res.shifts[i])
            dense = [[mpq(0)] * len(cols) for _ in range(nrows)]
            for c, col in enumerate(cols):
                for r, t in col.items():
                    dense[r][c] = _eval_terms(t, point)
            best[i] = max(best[i], _rank(dense))
    return best


def check_exactness(res, seed=0):
    """rank d_i + rank d_{i+1} = rank F_i for i >= 1 and rank d_1 = rank F_0 - 1 for proper J.

    Ranks are evaluated at random points; since those never exceed the generic
    ranks and d o d = 0 bounds the sum from above, equality certifies the
    generic rank condition.
    """
    if res.length == 0:
        return True
    rk = res.ranks()
    r = specialized_ranks(res, seed) + [0]
    if r[0] != 1 and rk[0] == 1:
        # S/J with J != 0 has rank 0, so d_1 must have rank 1
        return False
    for i in range(1, res.length + 1):
        if r[i - 1] + r[i] != rk[i]:
            return False
    return True


# --- output --------------------------------------------------------------

def betti_to_json(table):
    return [{"i": i, "dx": b[0], "dy": b[1], "mult": m} for (i, b), m in sorted(table.items())]


def format_betti(table):
    """Grid: one row per homological degree, one column per (x,y) shift."""
    if not table:
        return "(zero module)"
    shifts = sorted({b for _, b in table})
    degs = sorted({i for i, _ in table})
    head = ["i"] + [f"({a},{b})" for a, b in shifts]
    rows = [[str(i)] + [str(table.get((i, s), "")) if table.get((i, s)) else "." for s in shifts]
            for i in degs]
    widths = [max(len(r[k]) for r in [head] + rows) for k in range(len(head))]
    lines = ["  ".join(x.rjust(w) for x, w in zip(r, widths)) for r in [head] + rows]
    return "\n".join(lines)
