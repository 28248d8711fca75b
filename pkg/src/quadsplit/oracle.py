"""Ground truth by exhaustion: over a small prime field, enumerate every
matrix B annihilated by q against canonical p-annihilated forms A, record
which similarity classes arise as A - B (or A B^-1), and compare the
reachable set against the classifier over all similarity classes.

A ranges over canonical forms only: the class of A - B is invariant under
simultaneous conjugation, so fixing A up to similarity loses nothing (this
symmetry argument is itself property-tested)."""

from __future__ import annotations

import itertools

from .classify import DIFFERENCE, QUOTIENT, YES, NO, classify_matrix
from .construct import build_witness, verify_witness
from .matrix import Matrix, companion, direct_sum, evaluate_poly_at_matrix
from .canon import invariant_factors, invariant_factors_from_elementary
from .poly import Poly, irreducible_monic_polys


class OracleError(Exception):
    pass


class BudgetExceeded(OracleError):
    pass


_ALLOWED_PRIMES = (2, 3, 5)
_MAX_SIZE = 4
_ENUM_CAP = 2 * 10**6


class ReachabilityTable:
    """classes: invariant-factor key -> (reachable, sample witness or None)."""

    __slots__ = ("pair", "n", "classes", "representatives")

    def __init__(self, pair, n, classes, representatives):
        self.pair = pair
        self.n = n
        self.classes = classes
        self.representatives = representatives

    def reachable_keys(self):
        return [k for k, (r, _) in self.classes.items() if r]


def canonical_annihilated_forms(poly, n):
    """All similarity classes of n x n matrices annihilated by the monic
    quadratic `poly`, one canonical representative each."""
    field = poly.field
    from .poly import factor

    fz = factor(poly)
    linear = [(g, m) for g, m in fz.factors if g.degree() == 1]
    out = []
    if len(linear) == 0:
        # irreducible: direct sums of companion blocks only
        if n % 2 == 0:
            out.append(direct_sum(field, [companion(poly)] * (n // 2)))
        return out
    if len(linear) == 1 and linear[0][1] == 2:
        g = linear[0][0]
        c = -g.coeff(0)
        # k Jordan cells of size 2 at c, rest size 1
        for k in range(n // 2 + 1):
            blocks = [companion(g * g)] * k + [companion(g)] * (n - 2 * k)
            out.append(direct_sum(field, blocks))
        return out
    g1, g2 = linear[0][0], linear[1][0]
    for k in range(n + 1):
        blocks = [companion(g1)] * k + [companion(g2)] * (n - k)
        out.append(direct_sum(field, blocks))
    return out


def all_class_representatives(field, n, invertible_only=False):
    """Canonical representative per similarity class of n x n matrices."""
    reps = {}
    irr = []
    for d in range(1, n + 1):
        for g in irreducible_monic_polys(field, d):
            if invertible_only and g == Poly.x(field):
                continue
            irr.append((g, d))

    def rec(i, remaining, chosen):
        if remaining == 0:
            eds = [(g, e) for (g, _), exps in chosen for e in exps]
            factors = invariant_factors_from_elementary(eds, field)
            M = direct_sum(field, [companion(f) for f in factors])
            reps[tuple(f.coeffs for f in factors)] = M
            return
        if i == len(irr):
            return
        g, d = irr[i]

        def exp_multisets(maxtot):
            yield ()

            def inner(prefix, cap, tot):
                for e in range(1, cap + 1):
                    if tot + e * d <= maxtot:
                        yield prefix + (e,)
                        yield from inner(prefix + (e,), e, tot + e * d)

            yield from inner((), maxtot // d, 0)

        for exps in exp_multisets(remaining):
            used = sum(e * d for e in exps)
            rec(i + 1, remaining - used, chosen + ([((g, d), exps)] if exps else []))

    rec(0, n, [])
    return reps


_annihilated_cache = {}


def _annihilated_matrices(poly, n):
    """All n x n matrices over F_p annihilated by the monic quadratic; the
    candidate filter runs on plain integers mod p for speed and survivors
    are re-verified through the generic exact path."""
    key = (poly, n)
    if key in _annihilated_cache:
        return _annihilated_cache[key]
    field = poly.field
    p = field.characteristic
    if field.order() ** (n * n) > _ENUM_CAP:
        raise BudgetExceeded(
            f"enumerating {field.order()}^{n * n} matrices exceeds the cap"
        )
    c1 = poly.coeff(1).v
    c0 = poly.coeff(0).v
    rng_n = range(n)
    out = []
    for vals in itertools.product(range(p), repeat=n * n):
        rows = [vals[i * n : (i + 1) * n] for i in rng_n]
        ok = True
        for i in rng_n:
            ri = rows[i]
            for j in rng_n:
                acc = 0
                for k in rng_n:
                    acc += ri[k] * rows[k][j]
                acc += c1 * ri[j]
                if i == j:
                    acc += c0
                if acc % p:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            M = Matrix.from_int_rows(field, rows)
            if not evaluate_poly_at_matrix(poly, M).is_zero():
                raise OracleError("integer fast path disagrees with exact path")
            out.append(M)
    _annihilated_cache[key] = out
    return out


def enumerate_reachable(pair, n):
    """Complete reachability table for n x n matrices over a small prime
    field (quotient mode: invertible classes only)."""
    field = pair.field
    if field.characteristic not in _ALLOWED_PRIMES or not getattr(field, "is_finite", False):
        raise OracleError("oracle runs over F_2, F_3, F_5 only")
    if n > _MAX_SIZE:
        raise BudgetExceeded(f"size {n} exceeds the oracle cap {_MAX_SIZE}")
    reps = all_class_representatives(field, n, invertible_only=(pair.mode == QUOTIENT))
    reached = {}
    a_forms = canonical_annihilated_forms(pair.p, n)
    b_forms = _annihilated_matrices(pair.q, n)
    for A in a_forms:
        for B in b_forms:
            if pair.mode == DIFFERENCE:
                M = A - B
            else:
                if B.det().is_zero():
                    continue
                M = A * B.inverse()
            key = _fast_class_key(M)
            if key not in reached:
                reached[key] = (A, B)
    classes = {}
    for key in reps:
        if key in reached:
            classes[key] = (True, reached[key])
        else:
            classes[key] = (False, None)
    return ReachabilityTable(pair, n, classes, reps)


def _fast_class_key(M):
    """Invariant-factor key via ranks of irreducible-power evaluations;
    agrees with the Smith-form computation (tested) but stays cheap."""
    field = M.ring
    n = M.rows
    eds = []
    accounted = 0
    for d in range(1, n + 1):
        if accounted == n:
            break
        for g in irreducible_monic_polys(field, d):
            if accounted == n:
                break
            E = evaluate_poly_at_matrix(g, M)
            k1 = n - E.rank()
            if k1 == 0:
                continue
            prev = 0
            power = E
            counts = []
            while True:
                kd = (n - power.rank() - prev) // d
                prev = n - power.rank()
                if kd == 0:
                    break
                counts.append(kd)
                if prev == n:
                    break
                power = power * E
            # counts[k] = number of elementary divisors g^e with e > k
            for e in range(len(counts), 0, -1):
                mult = counts[e - 1] - (counts[e] if e < len(counts) else 0)
                for _ in range(mult):
                    eds.append((g, e))
                    accounted += e * d
    factors = invariant_factors_from_elementary(eds, field)
    return tuple(f.coeffs for f in factors)


def compare_with_classifier(table, check_witnesses=False, budget=10**6):
    """One report line per disagreement between the classifier and the
    enumeration; empty list means full agreement."""
    report = []
    ordered = sorted(
        table.classes.items(),
        key=lambda kv: tuple(tuple(repr(c) for c in f) for f in kv[0]),
    )
    for key, (reachable, sample) in ordered:
        rep = table.representatives[key]
        cert = classify_matrix(rep, table.pair)
        want = YES if reachable else NO
        if cert.verdict != want:
            report.append(
                {
                    "class": key,
                    "oracle": want,
                    "classifier": cert.verdict,
                    "failure": cert.failure,
                }
            )
            continue
        if check_witnesses and reachable:
            try:
                w = build_witness(rep, cert, budget)
                verify_witness(rep, table.pair, w.A, w.B)
            except Exception as exc:  # noqa: BLE001 - report, never crash
                report.append({"class": key, "oracle": want, "witness_error": str(exc)})
    return report
