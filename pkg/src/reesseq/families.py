"""Example families: path ideals of cycles, maximal Pfaffians, and the regression corpus."""

from __future__ import annotations

import json
import os
from importlib import resources

from .parse import parse_document
from .polyring import Ring


class FamilyError(ValueError):
    pass


def cycle_ring(n):
    return Ring([f"x{i}" for i in range(1, n + 1)])


def cycle_path_ideal(n, length, ring=None):
    """Paths of ``length`` consecutive vertices on the n-cycle: m_i = x_i ... x_{i+length-1}."""
    if n < 3 or not 1 <= length <= n - 1:
        raise FamilyError(f"need n >= 3 and 1 <= len <= n-1 (got n={n}, len={length})")
    R = ring or cycle_ring(n)
    out = []
    for i in range(n):
        e = [0] * n
        for k in range(length):
            e[(i + k) % n] = 1
        out.append(R.monomial(e))
    return out


def skew_ring(size):
    names = [f"u{i}{j}" if size < 10 else f"u{i}_{j}"
             for i in range(1, size + 1) for j in range(i + 1, size + 1)]
    return Ring(names)


def pfaffian(entries, idx, R):
    """Pf of the skew matrix on index list ``idx`` by first-row expansion."""
    if not idx:
        return R.one()
    if len(idx) % 2:
        return R.zero()
    first, rest = idx[0], idx[1:]
    total = R.zero()
    for pos, j in enumerate(rest):
        sub = rest[:pos] + rest[pos + 1:]
        term = entries[(first, j)] * pfaffian(entries, sub, R)
        # j is the (pos+2)-th index, sign (-1)^(pos+2)
        total = total + term if pos % 2 == 0 else total - term
    return total


def pfaffian_sequence(r):
    """The 2r+1 maximal Pfaffians of a generic skew-symmetric matrix of order 2r+1."""
    if r < 2:
        raise FamilyError("pfaffian family needs r >= 2")
    if r > 3:
        raise FamilyError("pfaffian family is limited to r <= 3")
    n = 2 * r + 1
    R = skew_ring(n)
    entries = {}
    k = 0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            entries[(i, j)] = R.var(k)
            k += 1
    return [pfaffian(entries, [i for i in range(1, n + 1) if i != d], R)
            for d in range(1, n + 1)]


def skew_matrix(R, size):
    """The generic skew-symmetric matrix over ``R`` as rows of Polynomials."""
    M = [[R.zero() for _ in range(size)] for _ in range(size)]
    k = 0
    for i in range(size):
        for j in range(i + 1, size):
            M[i][j] = R.var(k)
            M[j][i] = -R.var(k)
            k += 1
    return M


def determinant(M):
    """Laplace expansion along the first row (small matrices only)."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return M[0][0]
    R = M[0][0].ring
    total = R.zero()
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


# --- corpus --------------------------------------------------------------

class CorpusEntry:
    def __init__(self, id, file, expect, cite, skip=None, seq="s", field_note=None, base=None):
        self.id = id
        self.base = base
        self.file = file
        self.expect = expect
        self.cite = cite
        self.skip = skip
        self.seq = seq
        self.field_note = field_note

    def text(self):
        if self.file is None:
            return None
        if self.base is not None:
            with open(os.path.join(self.base, self.file)) as fh:
                return fh.read()
        return resources.files("reesseq.corpus").joinpath(self.file).read_text()

    def document(self):
        return parse_document(self.text())

    def __repr__(self):
        return f"CorpusEntry({self.id})"


def load_manifest(path=None):
    if path is None:
        data = resources.files("reesseq.corpus").joinpath("manifest.json").read_text()
        base = None
    else:
        try:
            with open(path) as fh:
                data = fh.read()
        except OSError as e:
            raise ManifestError(f"cannot read manifest {path}: {e.strerror}") from None
        base = os.path.dirname(os.path.abspath(path))
    try:
        raw = json.loads(data)
        entries = raw["entries"]
    except (ValueError, KeyError, TypeError) as e:
        raise ManifestError(f"malformed manifest: {e}") from None
    out = []
    for e in entries:
        entry = CorpusEntry(e["id"], e.get("file"), e.get("expect", {}), e.get("cite", ""),
                            e.get("skip"), e.get("seq", "s"), e.get("field"), base)
        validate_entry(entry)
        out.append(entry)
    return out


def corpus():
    """The shipped regression corpus."""
    return load_manifest()


EXPECT_KEYS = {"d-seq", "c-seq", "wrr", "almost-reg", "regular", "seq-lt", "linear-type",
               "s-seq", "s-seq-strong", "m-seq", "interval", "uncond-d", "mseq-c",
               "reg_y_rees", "reg_y_rees_min", "height", "mingens", "betti_x", "witness"}


class ManifestError(ValueError):
    pass


def validate_entry(entry):
    bad = set(entry.expect) - EXPECT_KEYS
    if bad:
        raise ManifestError(f"entry {entry.id}: unknown expectation keys {sorted(bad)}")
    for prop in entry.expect.get("witness", {}):
        if prop not in EXPECT_KEYS:
            raise ManifestError(f"entry {entry.id}: unknown witness property {prop!r}")


def _seq_of(doc):
    st = doc.get(kind="seq") if any(s.kind == "seq" for s in doc.statements) else doc.get()
    return st.polys


def actual_value(key, seq, ring, cache):
    """Compute the observable named by an expectation key."""
    from .algebras import is_linear_type, rees_ideal
    from .ideals import Ideal
    from .resolve import betti, free_resolution, reg_xy
    from .sequences import DECIDERS

    if key in DECIDERS:
        if key not in cache:
            cache[key] = DECIDERS[key](seq, ring)
        return cache[key].result
    if key == "linear-type":
        return is_linear_type(seq, ring)
    if key in ("reg_y_rees", "reg_y_rees_min"):
        if "rees_res" not in cache:
            cache["rees_res"] = free_resolution(rees_ideal(seq, ring))
        return reg_xy(cache["rees_res"])[1]
    if key == "height":
        return Ideal(seq, ring).height()
    if key == "mingens":
        return len(Ideal(seq, ring).minimal_generators())
    if key == "betti_x":
        table = betti(free_resolution(Ideal(seq, ring)))
        agg = {}
        for (i, (dx, _)), m in table.items():
            agg[(i, dx)] = agg.get((i, dx), 0) + m
        return [[i, dx, m] for (i, dx), m in sorted(agg.items())]
    raise ManifestError(f"unknown expectation key {key!r}")


def _witness_ok(prop, spec, seq, ring, cache):
    from .ideals import Ideal
    from .sequences import DECIDERS

    if prop not in cache:
        cache[prop] = DECIDERS[prop](seq, ring)
    v = cache[prop]
    if v.result or v.fail_index != spec.get("index", v.fail_index):
        return False
    for name in ("colon", "intersection", "expected"):
        if name in spec:
            got = getattr(v, name)
            want = Ideal([ring(t) for t in spec[name]], ring)
            if got is None or not got.equals(want):
                return False
    return True


def check_entry(entry):
    """Run an entry: returns a list of (key, expected, actual, ok)."""
    validate_entry(entry)
    if entry.skip:
        return []
    doc = entry.document()
    ring = doc.ring
    seq = _seq_of(doc)
    cache = {}
    out = []
    for key, want in entry.expect.items():
        if key == "witness":
            for prop, spec in want.items():
                ok = _witness_ok(prop, spec, seq, ring, cache)
                out.append((f"witness:{prop}", spec, ok, ok))
            continue
        got = actual_value(key, seq, ring, cache)
        ok = got >= want if key == "reg_y_rees_min" else got == want
        out.append((key, want, got, ok))
    return out
