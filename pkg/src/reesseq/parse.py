"""The textual input language.

One statement per line, each terminated by ``;``; ``#`` starts a comment::

    ring QQ[x1..x5, y1..y5] xdeg x* ydeg y*;
    ring GF(101)[a, b, c] mod a^2 - b;
    ideal I = x1*x2, x2*x3;
    seq s = x1*x3 + x1*x2, 3/2*x2^2;
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fnmatch import fnmatchcase

from .field import FieldError, field_from_spec
from .polyring import MAX_EXPONENT, Polynomial, Ring, RingError


class ParseError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.msg = msg
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + msg)


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>\.\.|\*\*|[-+*/^(),\[\]=])
""", re.VERBOSE)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _tokenize(text, base=0):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise _Located(f"unexpected character {text[pos]!r}", base + pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), base + pos))
        pos = m.end()
    out.append(("end", "", base + len(text)))
    return out


class _Located(Exception):
    """Internal: an error with an absolute character offset."""

    def __init__(self, msg, offset):
        super().__init__(msg)
        self.msg = msg
        self.offset = offset


class _PolyParser:
    def __init__(self, ring, tokens):
        self.ring = ring
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            raise _Located(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2])
        return t

    def expr(self):
        t = self.peek()
        if t[1] in ("+", "-"):
            self.take()
            acc = self.term()
            if t[1] == "-":
                acc = -acc
        else:
            acc = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[1] in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op[1] == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    raise _Located("division only by non-zero constants", op[2])
                try:
                    inv = self.ring.field.one / rhs.constant_value()
                except ZeroDivisionError as e:
                    raise _Located(str(e), op[2]) from None
                acc = acc.scale(inv)
        return acc

    def factor(self):
        base = self.atom()
        t = self.peek()
        if t[1] in ("^", "**"):
            self.take()
            e = self.take()
            if e[0] != "num":
                raise _Located("malformed exponent (non-negative integer expected)", e[2])
            k = int(e[1])
            if k > MAX_EXPONENT:
                raise _Located(f"exponent {k} exceeds {MAX_EXPONENT}", e[2])
            try:
                base = base ** k
            except OverflowError as exc:
                raise _Located(str(exc), e[2]) from None
        return base

    def atom(self):
        t = self.take()
        kind, val, off = t
        if kind == "num":
            # p/q literal: handled as integer followed by division
            if self.peek()[1] == "/" and self.toks[self.i + 1][0] == "num":
                self.take()
                q = self.take()
                den = int(q[1])
                if den == 0:
                    raise _Located("zero denominator", q[2])
                try:
                    c = self.ring.field(int(val), den)
                except ZeroDivisionError as e:
                    raise _Located(str(e), q[2]) from None
                return self.ring.const(c)
            return self.ring.const(self.ring.field(int(val)))
        if kind == "ident":
            try:
                return self.ring.var(val)
            except RingError:
                raise _Located(f"unknown identifier {val!r}", off) from None
        if val == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise _Located(f"unexpected token {val or 'end of input'!r}", off)


def _poly_from_tokens(ring, toks):
    p = _PolyParser(ring, toks)
    f = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise _Located(f"unexpected token {t[1]!r}", t[2])
    return f


def _line_col(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def parse_polynomial(text, ring):
    """Parse one polynomial over ``ring`` (over its covering polynomial ring)."""
    try:
        return _poly_from_tokens(ring, _tokenize(text))
    except _Located as e:
        raise ParseError(e.msg, *_line_col(text, e.offset)) from None


def _split_list(toks):
    """Split a token list on top-level commas; each chunk gets its own end token."""
    chunks, cur, depth = [], [], 0
    for t in toks:
        if t[0] == "end":
            break
        if t[1] == "(":
            depth += 1
        elif t[1] == ")":
            depth -= 1
        if t[1] == "," and depth == 0:
            chunks.append(cur)
            cur = []
        else:
            cur.append(t)
    chunks.append(cur)
    end = toks[-1]
    out = []
    for c in chunks:
        if not c:
            raise _Located("empty list item", end[2])
        out.append(c + [("end", "", c[-1][2] + len(c[-1][1]))])
    return out


_RANGE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*?)(\d+)\Z")


def _expand_varlist(text, base):
    names = []
    offset = base
    for item in text.split(","):
        raw = item
        item = item.strip()
        start = offset + (len(raw) - len(raw.lstrip()))
        offset += len(raw) + 1
        if not item:
            raise _Located("empty variable name", start)
        if ".." in item:
            lo, _, hi = item.partition("..")
            a, b = _RANGE.match(lo.strip()), _RANGE.match(hi.strip())
            if not a or not b or a.group(1) != b.group(1):
                raise _Located(f"malformed range {item!r}", start)
            i, j = int(a.group(2)), int(b.group(2))
            if j < i:
                raise _Located(f"empty range {item!r}", start)
            names.extend(f"{a.group(1)}{k}" for k in range(i, j + 1))
        else:
            if not _IDENT.match(item):
                raise _Located(f"bad variable name {item!r}", start)
            names.append(item)
    return names


_RING_HEAD = re.compile(r"\s*ring\s+(QQ|GF\s*\(\s*\d+\s*\))\s*\[", re.S)


def _parse_ring_stmt(stmt, base):
    m = _RING_HEAD.match(stmt)
    if not m:
        raise _Located("malformed ring statement: expected 'ring QQ[...]' or 'ring GF(p)[...]'",
                       base)
    try:
        fld = field_from_spec(m.group(1))
    except FieldError as e:
        raise _Located(str(e), base + m.start(1)) from None
    close = stmt.find("]", m.end())
    if close < 0:
        raise _Located("missing ']' in ring statement", base + len(stmt))
    names = _expand_varlist(stmt[m.end():close], base + m.end())
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise _Located(f"duplicate variable {dup!r}", base + m.end())
    rest = stmt[close + 1:]
    rbase = base + close + 1
    globs = {}
    mod_text = None
    pos = 0
    clause = re.compile(r"\s*(xdeg|ydeg|mod)\b\s*")
    while pos < len(rest):
        if not rest[pos:].strip():
            break
        c = clause.match(rest, pos)
        if not c:
            raise _Located(f"unexpected text {rest[pos:].strip()[:20]!r} in ring statement",
                           rbase + pos + (len(rest[pos:]) - len(rest[pos:].lstrip())))
        kw = c.group(1)
        pos = c.end()
        if kw == "mod":
            mod_text = (rest[pos:], rbase + pos)
            break
        g = re.match(r"\S+", rest[pos:])
        if not g:
            raise _Located(f"missing pattern after {kw}", rbase + pos)
        if kw in globs:
            raise _Located(f"repeated {kw} clause", rbase + c.start(1))
        globs[kw] = g.group()
        pos += g.end()
    bideg = []
    for n in names:
        inx = "xdeg" in globs and fnmatchcase(n, globs["xdeg"])
        iny = "ydeg" in globs and fnmatchcase(n, globs["ydeg"])
        if inx and iny:
            raise _Located(f"variable {n!r} matches both xdeg and ydeg", base)
        bideg.append((0, 1) if iny else (1, 0))
    ring = Ring(names, fld, bideg)
    if mod_text is not None:
        toks = _tokenize(mod_text[0], mod_text[1])
        if toks[0][0] == "end":
            raise _Located("empty 'mod' clause", mod_text[1])
        rels = [_poly_from_tokens(ring, c) for c in _split_list(toks)]
        ring = Ring(names, fld, bideg, rels)
    return ring


def parse_ring(text):
    """Parse a single ``ring ...;`` statement into a :class:`Ring`."""
    body = _strip_comments(text)
    stmt = body.strip()
    if stmt.endswith(";"):
        stmt = body[:body.rfind(";")]
    else:
        stmt = body
    try:
        return _parse_ring_stmt(stmt, 0)
    except _Located as e:
        raise ParseError(e.msg, *_line_col(text, e.offset)) from None


def _strip_comments(text):
    # keep offsets stable: blank out comment characters instead of deleting
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)


@dataclass
class Statement:
    kind: str  # "ideal" or "seq"
    name: str
    polys: list
    line: int


@dataclass
class Document:
    ring: Ring
    statements: list = field(default_factory=list)

    def get(self, name=None, kind=None):
        for st in self.statements:
            if (name is None or st.name == name) and (kind is None or st.kind == kind):
                return st
        raise KeyError(name or kind or "statement")


_NAMED = re.compile(r"\s*(ideal|seq)\s+([A-Za-z_][A-Za-z0-9_]*)\s*=", re.S)


def parse_document(text):
    """Parse a full input file: one ring statement followed by ideal/seq statements."""
    body = _strip_comments(text)
    ring = None
    doc = None
    pos = 0
    try:
        while True:
            semi = body.find(";", pos)
            if semi < 0:
                if body[pos:].strip():
                    off = pos + (len(body[pos:]) - len(body[pos:].lstrip()))
                    raise _Located("statement not terminated by ';'", off)
                break
            stmt = body[pos:semi]
            base = pos
            pos = semi + 1
            if not stmt.strip():
                continue
            lead = base + (len(stmt) - len(stmt.lstrip()))
            word = stmt.split()[0]
            if word == "ring":
                if ring is not None:
                    raise _Located("only one ring statement allowed", lead)
                ring = _parse_ring_stmt(stmt, base)
                doc = Document(ring)
                continue
            m = _NAMED.match(stmt)
            if not m:
                raise _Located(f"unknown statement {word!r}", lead)
            if ring is None:
                raise _Located("ring must be declared before use", lead)
            toks = _tokenize(stmt[m.end():], base + m.end())
            if toks[0][0] == "end":
                polys = []
            else:
                polys = [_poly_from_tokens(ring, c) for c in _split_list(toks)]
            doc.statements.append(Statement(m.group(1), m.group(2), polys,
                                            _line_col(text, lead)[0]))
    except _Located as e:
        raise ParseError(e.msg, *_line_col(text, e.offset)) from None
    if doc is None:
        raise ParseError("no ring statement found", 1, 1)
    return doc


def format_ring(ring):
    """Inverse of :func:`parse_ring` (variables listed explicitly)."""
    s = f"ring {ring.field!r}[{', '.join(ring.names)}]"
    ys = [n for n, b in zip(ring.names, ring.bidegrees) if b == (0, 1)]
    others = [b for b in ring.bidegrees if b not in ((1, 0), (0, 1))]
    if others:
        raise ValueError("only (1,0)/(0,1) bidegrees are expressible in the input language")
    if ys:
        # explicit alternation glob; names are plain identifiers
        s += " ydeg " + _glob_for(ys, ring.names)
    if ring.relations:
        s += " mod " + ", ".join(str(r) for r in ring.relations)
    return s + ";"


def _glob_for(ys, names):
    prefixes = {re.match(r"[A-Za-z_]+", y).group() for y in ys}
    if len(prefixes) == 1:
        p = prefixes.pop()
        g = p + "*"
        if all(fnmatchcase(n, g) == (n in ys) for n in names):
            return g
    raise ValueError("cannot express the y-block as a single glob")


def format_statement(kind, name, polys):
    return f"{kind} {name} = " + ", ".join(str(p) for p in polys) + ";"


def check_poly_ring(polys, ring):
    for p in polys:
        if not isinstance(p, Polynomial) or p.ring != ring.cover:
            raise RingError("polynomial not in the expected ring")
