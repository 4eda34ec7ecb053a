"""Coefficient fields: exact rationals and prime fields GF(p)."""

from __future__ import annotations

from gmpy2 import is_prime, mpq


class FieldError(ValueError):
    pass


class RationalField:
    """The field QQ.  Elements are ``gmpy2.mpq`` values (always in lowest terms)."""

    characteristic = 0
    name = "QQ"

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, num, den=1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return mpq(num, den)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def fmt(self, c):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"

    def is_integral_one(self, c):
        return c == 1


class GFElem:
    """Residue class modulo a prime; the value is kept in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GFElem):
            if other.p != self.p:
                raise FieldError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElem(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElem(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElem(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElem(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GFElem(-self.v, self.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return GFElem(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElem(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElem(o, self.p) / self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, GFElem):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"GFElem({self.v}, {self.p})"


class PrimeField:
    """GF(p) for a prime p < 2**31."""

    def __init__(self, p):
        p = int(p)
        if p < 2 or p >= 2**31 or not is_prime(p):
            raise FieldError(f"modulus {p} is not a prime below 2^31")
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = GFElem(0, p)
        self.one = GFElem(1, p)

    def __call__(self, num, den=1):
        p = self.characteristic
        if den % p == 0:
            raise ZeroDivisionError(f"characteristic {p} divides denominator {den}")
        return GFElem(num * pow(den, -1, p), p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))

    def __repr__(self):
        return self.name

    def fmt(self, c):
        return str(c.v)


QQ = RationalField()


def field_from_spec(spec):
    """``"QQ"`` or ``"GF(p)"`` (or an int p) to a field object."""
    if isinstance(spec, (RationalField, PrimeField)):
        return spec
    if isinstance(spec, int):
        return PrimeField(spec)
    s = spec.replace(" ", "")
    if s == "QQ":
        return QQ
    if s.startswith("GF(") and s.endswith(")"):
        try:
            p = int(s[3:-1])
        except ValueError:
            raise FieldError(f"bad field {spec!r}") from None
        return PrimeField(p)
    raise FieldError(f"unknown field {spec!r}")
