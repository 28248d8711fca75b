"""Command-line front end.

Input files are line-oriented:

    field Fp 2        (or: field Q | field Fps 2)
    p 1 1 1           (coefficients, low to high)
    q 1 1 1
    mode quotient     (or difference)
    matrix 2
    0 1
    1 1

`verify` inputs additionally carry `A` and `B` sections (n rows each).
Entries are integers over F_p, fractions a/b over Q, and num/den with
polynomials in s (like s^2+s+1) over F_p(s). Results go to stdout,
diagnostics to stderr; exit codes: 0 = YES, 1 = NO, 2 = Unknown,
3 = witness search exhausted, 64 = parse/usage error, 65 = invalid data,
70 = internal error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .classify import (
    DIFFERENCE,
    QUOTIENT,
    UNKNOWN,
    YES,
    NO,
    ClassifyError,
    NotInvertibleInput,
    QuadraticPair,
    classify_matrix,
    indecomposable_atlas,
)
from .construct import ConstructError, SearchExhausted, Witness, build_witness, verify_witness
from .fields import FieldError, PrimeField, RationalField, RationalFunctionField
from .matrix import Matrix
from .oracle import compare_with_classifier, enumerate_reachable
from .poly import Poly

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_SEARCH = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERNAL = 70


class ParseError(Exception):
    def __init__(self, message, line_no=None):
        where = f"line {line_no}: " if line_no else ""
        super().__init__(where + message)


# ---------------------------------------------------------------------------
# element and file parsing


_TERM_RE = re.compile(r"^(?:(\d+)\*?)?(s(?:\^(\d+))?)?$")


def _parse_spoly(text, field):
    """Polynomial in s over F_p, e.g. 's^2+s+1', '2*s+1', '3'."""
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    coeffs = {}
    for chunk in text.replace("-", "+-").split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        neg = chunk.startswith("-")
        if neg:
            chunk = chunk[1:]
        m = _TERM_RE.match(chunk)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ParseError(f"bad term {chunk!r} in polynomial")
        coeff = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            deg = 0
        else:
            deg = int(m.group(3)) if m.group(3) else 1
        if neg:
            coeff = -coeff
        coeffs[deg] = coeffs.get(deg, 0) + coeff
    top = max(coeffs) if coeffs else 0
    return [coeffs.get(i, 0) for i in range(top + 1)]


def parse_element(text, field):
    text = text.strip()
    try:
        if isinstance(field, PrimeField):
            return field.from_int(int(text))
        if isinstance(field, RationalField):
            if "/" in text:
                a, b = text.split("/")
                return field.from_fraction(int(a), int(b))
            return field.from_int(int(text))
        if isinstance(field, RationalFunctionField):
            if "/" in text:
                num, den = text.split("/")
                return field.from_coeffs(_parse_spoly(num, field), _parse_spoly(den, field))
            return field.from_coeffs(_parse_spoly(text, field))
    except (ValueError, FieldError) as exc:
        raise ParseError(f"bad entry {text!r}: {exc}")
    raise ParseError(f"unsupported field {field!r}")


class ProblemInput:
    def __init__(self, field, p, q, mode, matrix, a=None, b=None):
        self.field = field
        self.p = p
        self.q = q
        self.mode = mode
        self.matrix = matrix
        self.a = a
        self.b = b


def parse_problem(text, need_matrix=True):
    field = None
    p = q = mode = matrix = None
    a_mat = b_mat = None
    lines = text.splitlines()
    i = 0

    def read_matrix(start, n, label):
        rows = []
        for k in range(n):
            if start + k >= len(lines):
                raise ParseError(f"{label}: expected {n} rows", start + k + 1)
            parts = lines[start + k].split()
            if len(parts) != n:
                raise ParseError(f"{label}: expected {n} entries", start + k + 1)
            rows.append([parse_element(tok, field) for tok in parts])
        return Matrix(field, rows), start + n

    while i < len(lines):
        line = lines[i].strip()
        i += 1
        if not line or line.startswith("#"):
            continue
        head, *rest = line.split(None, 1)
        arg = rest[0] if rest else ""
        if head == "field":
            toks = arg.split()
            if not toks:
                raise ParseError("field needs a kind", i)
            kind = toks[0]
            try:
                if kind == "Fp":
                    field = PrimeField(int(toks[1]))
                elif kind == "Q":
                    field = RationalField()
                elif kind == "Fps":
                    field = RationalFunctionField(int(toks[1]))
                else:
                    raise ParseError(f"unknown field kind {kind!r}", i)
            except (IndexError, ValueError, FieldError) as exc:
                raise ParseError(f"bad field declaration: {exc}", i)
        elif head in ("p", "q"):
            if field is None:
                raise ParseError("field must be declared before p and q", i)
            coeffs = [parse_element(tok, field) for tok in arg.split()]
            poly = Poly(field, coeffs)
            if poly.is_zero() or poly.degree() != 2 or not poly.is_monic():
                raise ParseError(f"{head} must be monic of degree 2", i)
            if head == "p":
                p = poly
            else:
                q = poly
        elif head == "mode":
            if arg.strip() not in (DIFFERENCE, QUOTIENT):
                raise ParseError(f"mode must be difference or quotient, got {arg!r}", i)
            mode = arg.strip()
        elif head == "matrix":
            if field is None:
                raise ParseError("field must be declared before the matrix", i)
            try:
                n = int(arg)
            except ValueError:
                raise ParseError("matrix needs a size", i)
            matrix, i = read_matrix(i, n, "matrix")
        elif head in ("A", "B"):
            if matrix is None:
                raise ParseError(f"{head} section before the matrix", i)
            mat, i = read_matrix(i, matrix.rows, head)
            if head == "A":
                a_mat = mat
            else:
                b_mat = mat
        else:
            raise ParseError(f"unknown directive {head!r}", i)
    for name, val in (("field", field), ("p", p), ("q", q), ("mode", mode)):
        if val is None:
            raise ParseError(f"missing {name} declaration")
    if need_matrix and matrix is None:
        raise ParseError("missing matrix")
    return ProblemInput(field, p, q, mode, matrix, a_mat, b_mat)


# ---------------------------------------------------------------------------
# output helpers


def _matrix_text(M):
    if M.rows == 0:
        return "(0 x 0)"
    return "\n".join(" ".join(str(v) for v in row) for row in M.entries)


def _emit_certificate(cert, fmt, out):
    if fmt == "json":
        print(json.dumps(cert.to_json(), sort_keys=True), file=out)
        return
    print(f"verdict: {cert.verdict}", file=out)
    inner = cert
    while inner.reduction is not None:
        print(f"reduction: {inner.reduction}", file=out)
        inner = inner.inner
    for block in inner.blocks():
        print(f"  {block.part}: {block}", file=out)
    if inner.failure:
        print(f"  failure: {json.dumps(inner.failure, sort_keys=True, default=str)}", file=out)


def _emit_witness(w, fmt, out):
    if fmt == "json":
        print(json.dumps(w.to_json(), sort_keys=True), file=out)
        return
    print("A =", file=out)
    print(_matrix_text(w.A), file=out)
    print("B =", file=out)
    print(_matrix_text(w.B), file=out)


def _verdict_exit(verdict):
    return {YES: EXIT_YES, NO: EXIT_NO, UNKNOWN: EXIT_UNKNOWN}[verdict]


# ---------------------------------------------------------------------------
# subcommands


def _load(path, need_matrix=True):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    return parse_problem(text, need_matrix)


def _make_pair(prob, args):
    return QuadraticPair(prob.p, prob.q, prob.mode, fps_bound=args.fps_bound)


def cmd_classify(args, out, err):
    prob = _load(args.file)
    pair = _make_pair(prob, args)
    cert = classify_matrix(prob.matrix, pair)
    _emit_certificate(cert, args.format, out)
    return _verdict_exit(cert.verdict)


def cmd_witness(args, out, err):
    prob = _load(args.file)
    pair = _make_pair(prob, args)
    cert = classify_matrix(prob.matrix, pair)
    if cert.verdict != YES:
        _emit_certificate(cert, args.format, out)
        return _verdict_exit(cert.verdict)
    w = build_witness(prob.matrix, cert, budget=args.search_budget)
    _emit_witness(w, args.format, out)
    return EXIT_YES


def cmd_verify(args, out, err):
    prob = _load(args.file)
    if prob.a is None or prob.b is None:
        raise ParseError("verify needs A and B sections")
    pair = _make_pair(prob, args)
    try:
        verify_witness(prob.matrix, pair, prob.a, prob.b)
    except ConstructError as exc:
        print(f"INVALID: {exc}", file=out)
        return 1
    print("OK", file=out)
    return 0


def cmd_atlas(args, out, err):
    prob = _load(args.file, need_matrix=False)
    pair = _make_pair(prob, args)
    rows = indecomposable_atlas(pair, args.bound)
    if args.format == "json":
        payload = [blk.to_json() for _, blk in rows]
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        for mat, blk in rows:
            print(f"size {mat.rows}: {blk}", file=out)
    return EXIT_YES


def cmd_oracle_compare(args, out, err):
    prob = _load(args.file, need_matrix=False)
    pair = _make_pair(prob, args)
    table = enumerate_reachable(pair, args.n)
    report = compare_with_classifier(table, check_witnesses=args.witnesses)
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, default=str), file=out)
    else:
        if not report:
            print(f"agreement: all {len(table.classes)} classes match", file=out)
        for item in report:
            print(f"mismatch: {json.dumps(item, sort_keys=True, default=str)}", file=out)
    return EXIT_YES if not report else EXIT_NO


def build_parser():
    ap = argparse.ArgumentParser(
        prog="quadsplit",
        description="decide and witness differences / quotients of quadratic matrices",
    )
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized factor splitting")
    ap.add_argument("--deterministic", action="store_true", help="force sequential deterministic mode")
    ap.add_argument("--search-budget", type=int, default=10**6)
    ap.add_argument("--fps-bound", type=int, default=4, help="F_p(s) factor search bound")
    sub = ap.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)
    w = sub.add_parser("witness")
    w.add_argument("file")
    w.set_defaults(func=cmd_witness)
    v = sub.add_parser("verify")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)
    a = sub.add_parser("atlas")
    a.add_argument("file")
    a.add_argument("--bound", type=int, required=True)
    a.set_defaults(func=cmd_atlas)
    o = sub.add_parser("oracle-compare")
    o.add_argument("file")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--witnesses", action="store_true")
    o.set_defaults(func=cmd_oracle_compare)
    return ap


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    from .poly import set_default_seed

    set_default_seed(args.seed)
    try:
        return args.func(args, out, err)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except NotInvertibleInput as exc:
        print(f"invalid input: {exc}", file=err)
        return EXIT_DATA
    except SearchExhausted as exc:
        print(f"witness search exhausted: {exc}", file=err)
        return EXIT_SEARCH
    except (ClassifyError, ConstructError, FieldError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
