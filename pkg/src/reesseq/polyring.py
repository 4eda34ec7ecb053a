"""Polynomial rings, monomial orders and sparse exact polynomials.

Monomials are plain tuples of non-negative ints (one slot per ring variable).
Every monomial order here is a matrix order, so ``order.key(m)`` is an int
tuple that compares like the monomials and is additive in the exponents.
"""

from __future__ import annotations

from functools import reduce

from .field import QQ, field_from_spec

MAX_EXPONENT = 0xFFFF


class RingError(ValueError):
    pass


class BidegreeError(ValueError):
    pass


def mono_mul(a, b):
    m = tuple(x + y for x, y in zip(a, b))
    return m


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b | a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(x if x <= y else y for x, y in zip(a, b))


def check_exponents(m):
    if m and max(m) > MAX_EXPONENT:
        raise OverflowError(f"exponent overflow: {max(m)} > {MAX_EXPONENT}")
    return m


class MonomialOrder:
    """A monomial order on ``nvars`` variables.

    tags:
      ``grevlex``   degree (optionally weighted) then reverse lex on the last variable
      ``lex``       pure lexicographic, first variable largest
      ``block``     compares the ``elim`` variables first (grevlex on them),
                    then ``inner`` on the remaining ones; eliminates ``elim``
      ``ydom``      y-monomials first by grevlex with y_1 < ... < y_n, ties broken
                    by grevlex on the other variables
    """

    def __init__(self, tag, nvars, *, weights=None, elim=(), inner=None, yvars=()):
        if tag not in ("grevlex", "lex", "block", "ydom"):
            raise ValueError(f"unknown monomial order {tag!r}")
        self.tag = tag
        self.nvars = nvars
        self.weights = tuple(weights) if weights is not None else (1,) * nvars
        if len(self.weights) != nvars or min(self.weights, default=1) < 0:
            raise ValueError("bad weight vector")
        self.elim = tuple(sorted(elim))
        self.inner = inner
        self.yvars = tuple(yvars)
        if tag == "block":
            if inner is None:
                self.inner = MonomialOrder("grevlex", nvars, weights=self.weights)
            keep = [i for i in range(nvars) if i not in set(self.elim)]
            self._keep = keep
        if tag == "ydom":
            ys = set(self.yvars)
            self._xvars = [i for i in range(nvars) if i not in ys]
        self._keys = {}
        self._negkeys = {}
        self._sig = (tag, nvars, self.weights, self.elim,
                     self.inner._sig if self.inner is not None and tag == "block" else None,
                     self.yvars)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other._sig == self._sig

    def __hash__(self):
        return hash(self._sig)

    def __repr__(self):
        if self.tag == "block":
            return f"block({list(self.elim)}, {self.inner!r})"
        if self.tag == "grevlex" and any(w != 1 for w in self.weights):
            return f"grevlex(weights={list(self.weights)})"
        return self.tag

    def _compute_key(self, m):
        tag = self.tag
        if tag == "grevlex":
            w = self.weights
            return (sum(a * b for a, b in zip(w, m)),) + tuple(-e for e in reversed(m))
        if tag == "lex":
            return tuple(m)
        if tag == "block":
            w = self.weights
            el = self.elim
            head = (sum(m[i] for i in el),) + tuple(-m[i] for i in reversed(el))
            rest = list(m)
            for i in el:
                rest[i] = 0
            return head + self.inner.key(tuple(rest))
        ys = self.yvars
        xs = self._xvars
        return ((sum(m[i] for i in ys),) + tuple(-m[i] for i in ys)
                + (sum(m[i] for i in xs),) + tuple(-m[i] for i in reversed(xs)))

    def key(self, m):
        k = self._keys.get(m)
        if k is None:
            k = self._keys[m] = self._compute_key(m)
        return k

    def negkey(self, m):
        k = self._negkeys.get(m)
        if k is None:
            k = self._negkeys[m] = tuple(-e for e in self.key(m))
        return k

    def degree(self, m):
        """Weighted degree used for sugar bookkeeping."""
        return sum(a * b for a, b in zip(self.weights, m))

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


def grevlex(nvars):
    return MonomialOrder("grevlex", nvars)


def lex(nvars):
    return MonomialOrder("lex", nvars)


class Ring:
    """Polynomial ring descriptor: variables, field, bidegrees, optional quotient.

    ``relations`` (polynomials over ``self.cover``) present the base ring
    A = S/Q; every polynomial lives in the covering ring S.
    """

    def __init__(self, names, field=QQ, bidegrees=None, relations=()):
        names = tuple(names)
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise RingError(f"duplicate variable {dup!r}")
        self.names = names
        self.field = field_from_spec(field)
        if bidegrees is None:
            bidegrees = [(1, 0)] * len(names)
        self.bidegrees = tuple((int(a), int(b)) for a, b in bidegrees)
        if len(self.bidegrees) != len(names):
            raise RingError("one bidegree per variable required")
        if any(a < 0 or b < 0 for a, b in self.bidegrees):
            raise RingError("bidegrees must be non-negative")
        self._index = {n: i for i, n in enumerate(names)}
        self._sig = (names, self.field, self.bidegrees)
        self.cover = self if not relations else Ring(names, self.field, self.bidegrees)
        rels = []
        for r in relations:
            if r.ring != self.cover:
                raise RingError("quotient relations must live in the covering ring")
            if r:
                rels.append(r)
        self.relations = tuple(rels)
        self.order = grevlex(len(names))

    @property
    def nvars(self):
        return len(self.names)

    @property
    def is_quotient(self):
        return bool(self.relations)

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Ring) and other._sig == self._sig
                and other.relations == self.relations)

    def __hash__(self):
        return hash(self._sig)

    def __repr__(self):
        s = f"{self.field!r}[{', '.join(self.names)}]"
        if self.relations:
            s += "/(" + ", ".join(str(r) for r in self.relations) + ")"
        return s

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"unknown variable {name!r}") from None

    def with_field(self, field):
        base = Ring(self.names, field, self.bidegrees)
        rels = [base.from_terms({m: base.field(int(c.numerator), int(c.denominator))
                                 if base.field.characteristic else c
                                 for m, c in r.terms.items()}) for r in self.relations]
        return Ring(self.names, field, self.bidegrees, rels)

    # constructors -----------------------------------------------------
    def zero(self):
        return Polynomial(self.cover, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = c if not isinstance(c, int) else self.field(c)
        if not c:
            return self.zero()
        return Polynomial(self.cover, {(0,) * self.nvars: c})

    def var(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self.cover, {tuple(m): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=None):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise RingError("exponent vector has wrong length")
        if any(e < 0 for e in exps):
            raise RingError("negative exponent")
        check_exponents(exps)
        c = self.field.one if coeff is None else coeff
        if isinstance(c, int):
            c = self.field(c)
        return Polynomial(self.cover, {exps: c} if c else {})

    def from_terms(self, terms):
        return Polynomial(self.cover, {m: c for m, c in terms.items() if c})

    def __call__(self, text):
        from .parse import parse_polynomial
        return parse_polynomial(text, self)

    def mono_bidegree(self, m):
        dx = dy = 0
        for e, (a, b) in zip(m, self.bidegrees):
            if e:
                dx += e * a
                dy += e * b
        return (dx, dy)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to non-zero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic protocol ---------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __len__(self):
        return len(self.terms)

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        try:
            return self.ring.const(other)
        except Exception:
            raise TypeError(f"cannot combine polynomial with {type(other).__name__}") from None

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial) and not isinstance(other, int):
            try:
                return self.scale(other)
            except Exception:
                return NotImplemented
        other = self._check(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        n = self.ring.nvars
        top_a = [max(m[i] for m in self.terms) for i in range(n)]
        top_b = [max(m[i] for m in other.terms) for i in range(n)]
        if any(a + b > MAX_EXPONENT for a, b in zip(top_a, top_b)):
            raise OverflowError("exponent overflow in product")
        t = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                c = t.get(m)
                c = ca * cb if c is None else c + ca * cb
                if c:
                    t[m] = c
                else:
                    del t[m]
        return Polynomial(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        if isinstance(c, int):
            c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: a * c for m, a in self.terms.items()})

    def mul_monomial(self, u, c=None):
        t = {}
        for m, a in self.terms.items():
            t[tuple(x + y for x, y in zip(m, u))] = a if c is None else a * c
        return Polynomial(self.ring, t)

    # inspection -------------------------------------------------------
    def sorted_terms(self, order=None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def leading_monomial(self, order=None):
        order = order or self.ring.order
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order=None):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order=None):
        if not self.terms:
            return self
        return self.scale(self.ring.field.one / self.leading_coefficient(order))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_homogeneous(self):
        return len({sum(m) for m in self.terms}) <= 1

    def bidegrees(self):
        return {self.ring.mono_bidegree(m) for m in self.terms}

    def is_bihomogeneous(self):
        return len(self.bidegrees()) <= 1

    def support(self):
        """Indices of variables occurring in the polynomial."""
        n = self.ring.nvars
        return [i for i in range(n) if any(m[i] for m in self.terms)]

    def evaluate(self, point):
        """Evaluate at a sequence of field elements (one per variable)."""
        total = self.ring.field.zero
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * x ** e
            total = total + v
        return total

    def substitute(self, images):
        """Ring map sending variable i to ``images[i]`` (polynomials in a common ring)."""
        target = images[0].ring
        result = target.zero()
        cache = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    p = cache.get((i, e))
                    if p is None:
                        p = cache[(i, e)] = images[i] ** e
                    term = term * p
            result = result + term
        return result

    def to_ring(self, ring, mapping=None):
        """Re-embed into ``ring`` (variables matched by name unless ``mapping`` given)."""
        if mapping is None:
            mapping = [ring.index(n) for n in self.ring.names]
        t = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                if k:
                    e[mapping[i]] += k
            t[tuple(e)] = c
        return Polynomial(ring.cover, t)

    # printing ---------------------------------------------------------
    def __str__(self):
        return self.to_str()

    def to_str(self, order=None):
        """Canonical text: descending terms, ``p/q`` coefficients, ``^`` and explicit ``*``."""
        if not self.terms:
            return "0"
        fmt = self.ring.field.fmt
        names = self.ring.names
        out = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
            s = fmt(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


def bidegree_of(f):
    """The common bidegree of all terms of a non-zero bihomogeneous polynomial."""
    if not f.terms:
        raise BidegreeError("zero polynomial has no bidegree")
    seen = {}
    for m in f.terms:
        seen.setdefault(f.ring.mono_bidegree(m), m)
        if len(seen) > 1:
            (b1, m1), (b2, m2) = list(seen.items())[:2]
            raise BidegreeError(
                f"not bihomogeneous: term bidegrees {b1} and {b2} conflict")
    return next(iter(seen))


def poly_arith(op, f, g):
    """Dispatch for ``add``, ``sub``, ``mul`` and ``scale``."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown operation {op!r}")


def product(polys, ring):
    return reduce(lambda a, b: a * b, polys, ring.one())
