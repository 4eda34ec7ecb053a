"""Command-line frontend.

Exit codes: 0 computed (property true), 1 computed (property false),
2 usage or parse error, 3 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .algebras import custom_presentation, linear_type_witness, rees_ideal, sym_ideal
from .families import (FamilyError, ManifestError, check_entry, cycle_path_ideal,
                       load_manifest, pfaffian_sequence)
from .field import FieldError, PrimeField
from .groebner import buchberger
from .parse import ParseError, format_ring, format_statement, parse_document
from .polyring import BidegreeError, MonomialOrder, RingError
from .resolve import (ResolutionError, betti, betti_to_json, check_complex, format_betti,
                      free_resolution, reg_xy)
from .sequences import DECIDERS, is_almost_regular, is_s_sequence

SCHEMA = "reesseq-report/1"

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

CHECKS = ["d-seq", "c-seq", "wrr", "almost-reg", "s-seq", "m-seq", "interval",
          "seq-lt", "regular", "uncond-d"]

PHRASES = {
    "d-seq": ("It is a d-sequence", "Not a d-sequence"),
    "wrr": ("It is a weak relative regular seq", "Not a weak relative regular seq"),
    "c-seq": ("It is a c-seq", "Not a c-seq"),
    "almost-reg": ("It is an almost regular sequence", "Not an almost regular sequence"),
    "regular": ("It is a regular sequence", "Not a regular sequence"),
    "seq-lt": ("It is a sequence of linear type", "Not a sequence of linear type"),
    "s-seq": ("It is an s-sequence", "Not an s-sequence"),
    "s-seq-strong": ("It is a strong s-sequence", "Not a strong s-sequence"),
    "m-seq": ("It is an M-sequence", "Not an M-sequence"),
    "interval": ("It is a sequence of interval type", "Not a sequence of interval type"),
    "uncond-d": ("It is an unconditioned d-sequence", "Not an unconditioned d-sequence"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _SubParser(_Parser):
    """Allows options between positionals (``check d-seq --json FILE``)."""

    _nested = False

    def parse_known_args(self, args=None, namespace=None):
        if self._nested:
            return super().parse_known_args(args, namespace)
        self._nested = True
        try:
            return self.parse_known_intermixed_args(args, namespace)
        finally:
            self._nested = False


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--order", default="grevlex", choices=["grevlex", "lex"],
                        help="monomial order for printed generator lists")
    common.add_argument("--char", type=int, metavar="P", help="work over GF(P)")
    common.add_argument("--seed-family", metavar="SPEC",
                        help="generate the input: 'cycle-path:N:LEN' or 'pfaffian:R'")
    common.add_argument("--quiet", action="store_true", help="omit witnesses")
    common.add_argument("--name", help="statement to use (default: first seq/ideal)")

    p = _Parser(prog="reesseq", description="Sequence properties, Rees algebras and bigraded resolutions.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_SubParser)

    c = sub.add_parser("check", parents=[common], help="decide a sequence property")
    c.add_argument("property", choices=CHECKS)
    c.add_argument("input", nargs="?")
    c.add_argument("--strong", action="store_true", help="strong s-sequence")
    c.add_argument("--block", default="all", choices=["all", "x", "y"],
                   help="saturating block for almost-reg")

    helps = {"linear-type": "decide whether the ideal is of linear type",
             "rees-ideal": "print the defining ideal of the Rees algebra",
             "sym-ideal": "print the defining ideal of the symmetric algebra",
             "resolve": "minimal bigraded free resolution",
             "betti": "bigraded Betti table",
             "reg": "x- and y-regularity"}
    for name in ("linear-type", "rees-ideal", "sym-ideal"):
        q = sub.add_parser(name, parents=[common], help=helps[name])
        q.add_argument("input", nargs="?")

    for name in ("resolve", "betti", "reg"):
        q = sub.add_parser(name, parents=[common], help=helps[name])
        q.add_argument("input", nargs="?")
        q.add_argument("--of", choices=["rees", "sym", "ideal"],
                       help="quotient to resolve: Rees algebra (default), symmetric algebra "
                            "or S/I; a bigraded input ring is taken as a presentation")
        if name == "reg":
            q.add_argument("--x", action="store_true", help="report reg_x only")
            q.add_argument("--y", action="store_true", help="report reg_y only")

    f = sub.add_parser("family", parents=[common], help="print a family as an input file")
    f.add_argument("kind", choices=["cycle-path", "pfaffian"])
    f.add_argument("args", nargs="+", type=int)

    k = sub.add_parser("corpus", parents=[common], help="run the regression corpus")
    k.add_argument("--manifest", help="manifest path (default: shipped corpus)")
    k.add_argument("--only", action="append", help="run only this entry id (repeatable)")
    k.add_argument("--jobs", type=int, default=1)
    return p


# --- input handling ------------------------------------------------------

def _family(kind, args):
    if kind == "cycle-path":
        if len(args) != 2:
            raise UsageError("cycle-path needs N LEN")
        return cycle_path_ideal(*args)
    if len(args) != 1:
        raise UsageError("pfaffian needs R")
    return pfaffian_sequence(args[0])


def _seed(spec):
    parts = spec.replace(",", ":").replace(" ", ":").split(":")
    try:
        return _family(parts[0], [int(a) for a in parts[1:]])
    except ValueError as e:
        if isinstance(e, FamilyError):
            raise
        raise UsageError(f"bad --seed-family {spec!r}") from None


def _to_char(polys, ring, p):
    if ring.field.characteristic:
        raise UsageError("--char needs input over QQ")
    F = PrimeField(p)
    R = ring.with_field(F)
    return [R.from_terms({m: F(int(c.numerator), int(c.denominator))
                          for m, c in f.terms.items()}) for f in polys], R


def load_input(args, stdin):
    """Returns (ring, polys, text) from --seed-family, a file, or stdin."""
    if args.seed_family:
        polys = _seed(args.seed_family)
        ring = polys[0].ring
        text = format_ring(ring) + "\n" + format_statement("seq", "s", polys) + "\n"
    else:
        if args.input and args.input != "-":
            try:
                with open(args.input) as fh:
                    text = fh.read()
            except OSError as e:
                raise UsageError(f"cannot read {args.input}: {e.strerror}") from None
        else:
            text = stdin.read()
        if not text.strip():
            raise UsageError("empty input")
        doc = parse_document(text)
        ring = doc.ring
        if args.name:
            try:
                st = doc.get(args.name)
            except KeyError:
                raise UsageError(f"no statement named {args.name!r}") from None
        elif doc.statements:
            st = doc.statements[0]
        else:
            raise UsageError("input declares no ideal or sequence")
        polys = st.polys
    if args.char:
        polys, ring = _to_char(polys, ring, args.char)
    return ring, polys, text


def _order(name, ring):
    return MonomialOrder(name, ring.nvars)


def _gb_strings(polys, ring, order_name):
    polys = [p for p in polys if p]
    if not polys:
        return []
    order = _order(order_name, ring)
    return [p.to_str(order) for p in buchberger(polys, order, ring=ring.cover).polys]


# --- commands --------------------------------------------------------------

def cmd_check(args, ring, polys):
    prop = args.property
    if prop == "s-seq":
        v = is_s_sequence(polys, args.strong, ring)
    elif prop == "almost-reg":
        v = is_almost_regular(polys, ring, args.block)
    else:
        v = DECIDERS[prop](polys, ring)
    key = "s-seq-strong" if prop == "s-seq" and args.strong else prop
    yes, no = PHRASES.get(key, (f"It is {key}", f"Not {key}"))
    lines = [yes if v.result else no]
    if not v.result and v.fail_index is not None and prop not in ("m-seq", "interval"):
        i = v.fail_index
        head = ", ".join(str(p) for p in polys[:i - 1])
        lines.append(f"Fails at colon of ({head}) with {polys[i - 1]}")
    if not args.quiet:
        for name in ("colon", "intersection", "expected"):
            I = getattr(v, name)
            if I is not None:
                lines.append(f"  {name}: <{', '.join(str(g) for g in I.reduced_gens())}>")
    for n in v.notes:
        lines.append(f"note: {n}")
    return v.to_json(args.quiet), lines, EXIT_TRUE if v.result else EXIT_FALSE


def cmd_linear_type(args, ring, polys):
    w = linear_type_witness(polys, ring)
    ok = w is None
    payload = {"property": "linear-type", "result": ok}
    lines = ["The ideal is of linear type" if ok else "The ideal is not of linear type"]
    if not ok and not args.quiet:
        payload["witness"] = str(w)
        lines.append(f"  Rees relation outside Sym: {w}")
    return payload, lines, EXIT_TRUE if ok else EXIT_FALSE


def cmd_presentation(args, ring, polys, kind):
    P = rees_ideal(polys, ring) if kind == "rees" else sym_ideal(polys, ring)
    payload = P.to_json()
    payload["gens"] = _gb_strings(P.gens, P.ring, args.order)
    if P.notes:
        payload["notes"] = P.notes
    lines = [format_ring(P.ring), "ideal J = " + ", ".join(payload["gens"]) + ";"]
    return payload, lines, EXIT_TRUE


def _presentation(args, ring, polys):
    bigraded = any(b[1] for b in ring.bidegrees)
    if bigraded and args.of in (None, "ideal"):
        if ring.relations:
            raise UsageError("a presentation needs a polynomial ring")
        return custom_presentation(ring, polys, sum(1 for b in ring.bidegrees if not b[1]))
    if args.of in (None, "rees"):
        return rees_ideal(polys, ring)
    if args.of == "sym":
        return sym_ideal(polys, ring)
    if ring.relations:
        raise UsageError("--of ideal needs a polynomial ring")
    nx = sum(1 for b in ring.bidegrees if b[1] == 0)
    return custom_presentation(ring, polys, nx)


def cmd_resolve(args, ring, polys, what):
    P = _presentation(args, ring, polys)
    if not P.is_bihomogeneous():
        raise UsageError("regularity and resolutions need an equigenerated ideal")
    res = free_resolution(P)
    if not check_complex(res):
        raise ResolutionError("differentials do not compose to zero")
    table = betti(res)
    rx, ry = reg_xy(res)
    if what == "reg":
        both = not (args.x or args.y)
        payload = {}
        if args.x or both:
            payload["reg_x"] = rx
        if args.y or both:
            payload["reg_y"] = ry
        lines = [f"{k} = {'-inf' if v is None else v}" for k, v in sorted(payload.items())]
        return payload, lines, EXIT_TRUE
    if what == "betti":
        return {"betti": betti_to_json(table)}, [format_betti(table)], EXIT_TRUE
    ring_s = res.ring
    mats = []
    lines = [f"ranks: {res.ranks()}"]
    for i in range(1, res.length + 1):
        M = res.matrix(i)
        mats.append([[str(e) for e in row] for row in M])
        lines.append(f"d_{i}:")
        for row in M:
            lines.append("  [" + ", ".join(str(e) for e in row) + "]")
    payload = {"ring": list(ring_s.names), "ranks": res.ranks(),
               "shifts": [[list(s) for s in sh] for sh in res.shifts],
               "differentials": mats, "betti": betti_to_json(table),
               "reg_x": rx, "reg_y": ry}
    return payload, lines, EXIT_TRUE


def cmd_family(args):
    polys = _family(args.kind, args.args)
    ring = polys[0].ring
    text = format_ring(ring) + "\n" + format_statement("seq", "s", polys)
    payload = {"ring": format_ring(ring), "seq": [str(p) for p in polys]}
    return payload, [text], EXIT_TRUE


def cmd_corpus(args):
    entries = load_manifest(args.manifest)
    if args.only:
        known = {e.id for e in entries}
        missing = [i for i in args.only if i not in known]
        if missing:
            raise UsageError(f"unknown corpus entries: {', '.join(missing)}")
        entries = [e for e in entries if e.id in args.only]
    jobs = max(1, args.jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_run_entry, entries))
    rows = []
    lines = []
    passed = failed = skipped = 0
    for e, res in zip(entries, results):
        if e.skip:
            skipped += 1
            rows.append({"id": e.id, "status": "skip", "reason": e.skip})
            lines.append(f"SKIP {e.id}: {e.skip}")
            continue
        if isinstance(res, Exception):
            failed += 1
            rows.append({"id": e.id, "status": "error", "error": str(res)})
            lines.append(f"FAIL {e.id}: error {res}")
            continue
        ok = all(r[3] for r in res)
        passed += ok
        failed += not ok
        checks = {k: {"expected": w, "actual": g, "ok": bool(o)} for k, w, g, o in res}
        rows.append({"id": e.id, "status": "pass" if ok else "fail", "checks": checks})
        marks = " ".join(f"{k}={'ok' if o else f'FAIL(expected {w}, got {g})'}"
                         for k, w, g, o in res)
        lines.append(f"{'PASS' if ok else 'FAIL'} {e.id}: {marks}")
    lines.append(f"{passed} passed, {failed} failed, {skipped} skipped")
    payload = {"entries": rows, "passed": passed, "failed": failed, "skipped": skipped}
    return payload, lines, EXIT_TRUE if failed == 0 else EXIT_FALSE


def _run_entry(entry):
    try:
        return check_entry(entry)
    except (ParseError, RingError, ValueError) as e:
        return e


# --- driver ------------------------------------------------------------------

def _report(argv, text, payload, elapsed, notes):
    digest = hashlib.sha256((text or "").encode()).hexdigest()
    rep = {"schema": SCHEMA, "command": list(argv), "input_digest": digest,
           "result": payload, "timing": {"seconds": round(elapsed, 6)}, "version": __version__}
    if notes:
        rep["notes"] = notes
    return json.dumps(rep, sort_keys=True, indent=2, default=str)


def run(argv, stdin=None, stdout=None, stderr=None):
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise UsageError("missing command")
        text = ""
        notes = []
        if args.char:
            try:
                PrimeField(args.char)
            except FieldError as e:
                raise UsageError(str(e)) from None
            notes.append(f"valid in characteristic {args.char}")
        if args.command == "family":
            payload, lines, code = cmd_family(args)
        elif args.command == "corpus":
            payload, lines, code = cmd_corpus(args)
        else:
            ring, polys, text = load_input(args, stdin)
            if not polys and args.command != "check":
                raise UsageError("empty generator list")
            if args.command == "check":
                payload, lines, code = cmd_check(args, ring, polys)
            elif args.command == "linear-type":
                payload, lines, code = cmd_linear_type(args, ring, polys)
            elif args.command in ("rees-ideal", "sym-ideal"):
                payload, lines, code = cmd_presentation(args, ring, polys, args.command[:-6])
            else:
                payload, lines, code = cmd_resolve(args, ring, polys, args.command)
        if notes and isinstance(payload, dict):
            payload.setdefault("notes", [])
            for n in notes:
                if n not in payload["notes"]:
                    payload["notes"].append(n)
        if args.json:
            stdout.write(_report(argv, text, payload, time.perf_counter() - t0, notes) + "\n")
        else:
            stdout.write("\n".join(lines) + "\n")
            if notes and args.command != "check":
                stdout.write("\n".join(f"note: {n}" for n in notes) + "\n")
        return code
    except SystemExit as e:  # --help / --version
        return EXIT_TRUE if not e.code else EXIT_USAGE
    except ParseError as e:
        stderr.write(f"parse error: {e}\n")
        return EXIT_USAGE
    except (UsageError, FamilyError, ManifestError, FieldError, RingError, BidegreeError) as e:
        stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except ZeroDivisionError as e:
        stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except (ResolutionError, AssertionError) as e:
        stderr.write(f"internal error: {e}\n")
        return EXIT_INTERNAL
    except ValueError as e:
        stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except Exception as e:  # pragma: no cover - last-resort guard
        stderr.write(f"internal error: {type(e).__name__}: {e}\n")
        return EXIT_INTERNAL


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
