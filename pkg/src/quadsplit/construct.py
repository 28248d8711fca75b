"""Witness factory: for a YES certificate, build explicit (A, B) with
p(A) = 0, q(B) = 0 and A - B = M (difference) or A B^-1 = M (quotient).

Every block kind has a constructive route (interleaved bidiagonal matrices,
duplication through the pair algebra's regular representation, the Hensel
splitting, or scalar-extension plus blow-down); a complete small-field
enumeration remains as a fallback. All witnesses are verified before being
returned; nothing unverified ever escapes this module.
"""

from __future__ import annotations

import itertools

from .canon import find_similarity
from .classify import (
    DIFFERENCE,
    QUOTIENT,
    YES,
    QuadraticPair,
    homothety_witness,
    translation_witness,
)
from .matrix import (
    Matrix,
    companion,
    direct_sum,
    evaluate_poly_at_matrix,
    restrict_scalars,
)
from .pairalgebra import (
    DIFFERENCE_BASIS,
    QUOTIENT_BASIS,
    PairAlgebra,
    hensel_adapted_pair,
    left_regular_representation,
    split_to_matrices,
)
from .poly import Poly, homothety, trace_of, translate
from .quotient import QuotientRing, embed_poly
from .roots import RootUnavailable, quadratic_roots, roots_in


class ConstructError(Exception):
    pass


class SearchExhausted(ConstructError):
    def __init__(self, message, tried=None):
        super().__init__(message)
        self.tried = tried


class Witness:
    __slots__ = ("A", "B", "mode", "verified")

    def __init__(self, A, B, mode):
        self.A = A
        self.B = B
        self.mode = mode
        self.verified = True

    def to_json(self):
        return {
            "mode": self.mode,
            "A": [[str(v) for v in row] for row in self.A.entries],
            "B": [[str(v) for v in row] for row in self.B.entries],
        }


def verify_witness(M, pair, A, B):
    """The three exact identities; raises ConstructError on any failure."""
    if not evaluate_poly_at_matrix(pair.p, A).is_zero():
        raise ConstructError("p(A) != 0")
    if not evaluate_poly_at_matrix(pair.q, B).is_zero():
        raise ConstructError("q(B) != 0")
    if pair.mode == DIFFERENCE:
        if A - B != M:
            raise ConstructError("A - B != M")
    else:
        if B.det().is_zero():
            raise ConstructError("B is not invertible")
        if A * B.inverse() != M:
            raise ConstructError("A * B^-1 != M")
    return True


def _combine(mode, A, B):
    return A - B if mode == DIFFERENCE else A * B.inverse()


# ---------------------------------------------------------------------------
# interleaved bidiagonal constructions (split p or q over the working field)


def _two_block(field, top, bottom):
    z, o = field.zero(), field.one()
    return Matrix(field, [[top, z], [o, bottom]])


def _interleave_witness(mode, p, q, x, y, n1, n2):
    """(A, B) over the field of x realizing the cyclic matrix with
    eigenvalue x-y (resp. x/y) of multiplicity n1 and the conjugate
    eigenvalue of multiplicity n2; |n1 - n2| <= 1, or n1 - n2 = 2 when q has
    a double root."""
    field = x.field
    lam = trace_of(p) if p.field == field else field.embed(trace_of(p))
    mu = trace_of(q) if q.field == field else field.embed(trace_of(q))
    xp, yp = lam - x, mu - y
    if n1 < n2:
        return _interleave_witness(mode, p, q, xp, yp, n2, n1)
    one_by = lambda v: Matrix(field, [[v]])
    if n1 - n2 <= 1:
        N = n1 + n2
        K = _two_block(field, x, xp)
        L = _two_block(field, yp, y)
        a_blocks = [K] * (N // 2) + ([one_by(x)] if N % 2 else [])
        b_blocks = [one_by(y)] + [L] * ((N - 1) // 2) + ([one_by(yp)] if N % 2 == 0 else [])
    elif n1 - n2 == 2:
        if yp != y:
            raise ConstructError("2-step interleave needs a double root of q")
        K = _two_block(field, xp, x)
        L = _two_block(field, y, y)
        a_blocks = [one_by(x)] + [K] * n2 + [one_by(x)]
        b_blocks = [L] * (n2 + 1)
    else:
        raise ConstructError("interleave supports steps 0, 1, 2 only")
    A = direct_sum(field, a_blocks)
    B = direct_sum(field, b_blocks)
    return A, B


def _roots_over(poly, field):
    """Roots of a base-field monic quadratic inside `field`."""
    if poly.field == field:
        return quadratic_roots(poly)
    return roots_in(poly, field)


def _match_split_roots(pair, z1, z2):
    """(x, y) with x (op) y = z1 and conjugates giving z2."""
    proots = pair.roots_of("p")
    qroots = pair.roots_of("q")
    for x in proots:
        for y in qroots:
            v1 = x - y if pair.mode == DIFFERENCE else x / y
            lam, mu = trace_of(pair.p), trace_of(pair.q)
            xp, yp = lam - x, mu - y
            v2 = xp - yp if pair.mode == DIFFERENCE else xp / yp
            if v1 == z1 and v2 == z2:
                return x, y
    raise ConstructError("no root assignment matches the block data")


def _split_block_witness(block, pair):
    if block.kind == "split_single":
        z = block.payload["z"]
        n = block.payload["n"]
        n1, n2 = (n + 1) // 2, n // 2
        inv = (pair.delta - z) if pair.mode == DIFFERENCE else (pair.delta / z)
        if inv != z:
            raise ConstructError("standalone split block needs a fixed eigenvalue")
        x, y = _match_split_roots(pair, z, z)
        return _interleave_witness(pair.mode, pair.p, pair.q, x, y, n1, n2)
    z1, n1 = block.payload["z1"], block.payload["n1"]
    z2, n2 = block.payload["z2"], block.payload["n2"]
    if n1 >= n2:
        x, y = _match_split_roots(pair, z1, z2)
        return _interleave_witness(pair.mode, pair.p, pair.q, x, y, n1, n2)
    x, y = _match_split_roots(pair, z2, z1)
    return _interleave_witness(pair.mode, pair.p, pair.q, x, y, n2, n1)


def _translate_block_witness(block, pair):
    """p irreducible, q split: the alternating bidiagonal construction whose
    difference (resp. quotient) is cyclic with characteristic polynomial the
    product of the translated (resp. rescaled) quadratics."""
    field = pair.field
    if block.kind in ("translate_single", "homothety_single"):
        # the two translates (rescalings) coincide but the roots of q may
        # still differ (characteristic 2 / opposite roots): alternate them
        y1, y2 = block.payload["y1"], block.payload["y2"]
        n = block.payload["n"]
        ys = [(y1 if k % 2 == 0 else y2) for k in range(n)]
    else:
        y1, y2 = block.payload["y1"], block.payload["y2"]
        n1, n2 = block.payload["n1"], block.payload["n2"]
        if n1 < n2:
            y1, y2, n1, n2 = y2, y1, n2, n1
        ys = []
        for _ in range(n2):
            ys += [y1, y2]
        if n1 > n2:
            ys.append(y1)
    s = len(ys)
    z, o = field.zero(), field.one()
    if pair.mode == DIFFERENCE:
        a_blocks = [companion(translate(pair.p, yk)) + Matrix.identity(field, 2).scale(yk) for yk in ys]
        A = direct_sum(field, a_blocks)
        rows = [[z] * (2 * s) for _ in range(2 * s)]
        for k, yk in enumerate(ys):
            rows[2 * k][2 * k] = yk
            rows[2 * k + 1][2 * k + 1] = yk
            if k:
                rows[2 * k][2 * k - 1] = -o  # the -K subdiagonal block
        B = Matrix(field, rows)
    else:
        a_blocks = [companion(homothety(pair.p, yk)).scale(yk) for yk in ys]
        A = direct_sum(field, a_blocks)
        rows = [[z] * (2 * s) for _ in range(2 * s)]
        for k, yk in enumerate(ys):
            inv = yk.inverse()
            rows[2 * k][2 * k] = inv
            rows[2 * k + 1][2 * k + 1] = inv
            if k:
                rows[2 * k][2 * k - 1] = o  # the K subdiagonal block
        B = Matrix(field, rows).inverse()
    return A, B


# ---------------------------------------------------------------------------
# pair-algebra routes


def _pair_parameter(pair, ring):
    """The algebra parameter used throughout: tbar + p(0) + q(0) in
    difference mode, q(0) * tbar in quotient mode."""
    tbar = ring.generator()
    if pair.mode == DIFFERENCE:
        return tbar + ring.embed(pair.p.coeff(0) + pair.q.coeff(0))
    return tbar * ring.embed(pair.q.coeff(0))


def _duplication_witness(pair, r, n):
    ring = QuotientRing(pair.field, r, n, check_irreducible=False)
    algebra = PairAlgebra(pair.p, pair.q, ring, _pair_parameter(pair, ring))
    basis = DIFFERENCE_BASIS if pair.mode == DIFFERENCE else QUOTIENT_BASIS
    Ar, Br = left_regular_representation(algebra, basis)
    return restrict_scalars(Ar), restrict_scalars(Br)


def _hensel_witness(pair, r, n):
    ring = QuotientRing(pair.field, r, n, check_irreducible=False)
    algebra = PairAlgebra(pair.p, pair.q, ring, _pair_parameter(pair, ring))
    a, b = split_to_matrices(algebra)
    c = _combine(pair.mode, a, b)
    # normalize a cyclic vector so that the first column of c reads (0, 1)
    res = ring.residue_field()
    cbar = Matrix(res, [[ring.reduce(v) for v in row] for row in c.entries])
    E = None
    for idx in (0, 1):
        col = [[res.zero()], [res.zero()]]
        col[idx][0] = res.one()
        e = Matrix(res, col)
        test = Matrix.from_columns(res, [e, cbar * e])
        if not test.det().is_zero():
            lifted = Matrix.zero(ring, 2, 1)
            lcol = [[ring.zero()], [ring.zero()]]
            lcol[idx][0] = ring.one()
            E = Matrix(ring, lcol)
            break
    if E is None:
        raise ConstructError("no cyclic vector for the split image (bug)")
    S = Matrix.from_columns(ring, [E, c * E])
    Sinv = S.inverse()
    a2, b2 = Sinv * a * S, Sinv * b * S
    return restrict_scalars(a2), restrict_scalars(b2)


# ---------------------------------------------------------------------------
# scalar extension routes


def _pair_over(pair, ext):
    return QuadraticPair(embed_poly(pair.p, ext), embed_poly(pair.q, ext), pair.mode, pair.fps_bound)


def _eigen_double_witness(pair, e, n):
    """Doubled C((t-e)^n) when q is a translate (resp. rescaling) of p:
    reduce to the p = q problem over the splitting field of p, realize the
    nilpotent (resp. unipotent) cyclic block there, blow down, then shift
    (resp. scale) back."""
    field = pair.field
    if pair.mode == DIFFERENCE:
        d = translation_witness(pair.p, pair.q)
        if d is None:
            raise ConstructError("eigen-double block without a translation relation")
        L = QuotientRing(field, pair.p, 1, check_irreducible=False)
        x = L.generator()
        pL = embed_poly(pair.p, L)
        AL, BL = _interleave_witness(DIFFERENCE, pL, pL, x, x, (n + 1) // 2, n // 2)
        A, B0 = restrict_scalars(AL), restrict_scalars(BL)
        shift = Matrix.identity(field, A.rows).scale(e)
        B = B0 - shift
        # q(B) = p(B + d) and the eigenvalue set forces e in {d, d + tr p}
        return A, B
    d = homothety_witness(pair.p, pair.q)
    if d is None:
        raise ConstructError("eigen-double block without a homothety relation")
    z = e / d
    Lq = QuotientRing(field, pair.q, 1, check_irreducible=False)
    yy = Lq.generator()
    qL = embed_poly(pair.q, Lq)
    x = yy * Lq.embed(z)
    A0L, BL = _interleave_witness(QUOTIENT, qL, qL, x, yy, (n + 1) // 2, n // 2)
    A0, B = restrict_scalars(A0L), restrict_scalars(BL)
    A = A0.scale(d)
    return A, B


def _samefield_step_witness(pair, r, n1, n2):
    """C(r^(n2+1)) (+) C(r^(n2)) for an irreducible quadratic factor r of the
    fundamental quartic: split everything over K = F[t]/(r), interleave
    there, and blow down."""
    field = pair.field
    K = QuotientRing(field, r, 1, check_irreducible=False)
    z = K.generator()
    try:
        proots = _roots_over(pair.p, K)
    except RootUnavailable as exc:
        raise SearchExhausted(f"root extraction over the extension failed: {exc}")
    qK = embed_poly(pair.q, K)
    pK = embed_poly(pair.p, K)
    for x in proots:
        y = (x - z) if pair.mode == DIFFERENCE else (x / z)
        if qK(y).is_zero():
            AK, BK = _interleave_witness(pair.mode, pK, qK, x, y, n1, n2)
            return restrict_scalars(AK), restrict_scalars(BK)
    raise ConstructError("no root of p matches the block eigenvalue (bug)")


def _quartic_pair_witness(pair, w, n1, n2, block_target):
    field = pair.field
    char2 = field.characteristic == 2
    if n1 == n2:
        core = pair.core
        h = core if pair.mode == DIFFERENCE else homothety(core, pair.q.coeff(0))
        return _duplication_witness(pair, h.monic(), n1)
    mu = trace_of(pair.q)
    if char2 and mu.is_zero():
        # q inseparable: extend along the radicial field F[t]/(q)
        K = QuotientRing(field, pair.q, 1, check_irreducible=False)
        y = K.generator()
        pairK = _pair_over(pair, K)
        k = n1 + n2
        blockK = _TmpBlock(
            "translate_single" if pair.mode == DIFFERENCE else "homothety_single",
            {"y1": y, "y2": y, "n": k},
        )
        AK, BK = _translate_block_witness(blockK, pairK)
        return restrict_scalars(AK), restrict_scalars(BK)
    # both separable: extend along the splitting field of the core quadratic
    K = QuotientRing(field, pair.core.monic(), 1, check_irreducible=False)
    tbar = K.generator()
    pairK = _pair_over(pair, K)
    if pair.mode == DIFFERENCE:
        rK = Poly(K, (-tbar, K.embed(-pair.delta), K.one()))
    else:
        q0 = pair.q.coeff(0)
        other = K.embed(trace_of(pair.p) * trace_of(pair.q)) - tbar
        rK = Poly(K, (K.embed(pair.delta), -(other * K.embed(q0.inverse())), K.one()))
    fundK = pairK.fundamental
    if not (fundK % rK).is_zero():
        raise ConstructError("extension factor does not divide the fundamental (bug)")
    AK, BK = _samefield_step_witness(pairK, rK, n1, n2)
    return restrict_scalars(AK), restrict_scalars(BK)


class _TmpBlock:
    def __init__(self, kind, payload):
        self.kind = kind
        self.payload = payload


def _distinct_double_witness(pair, w, n):
    """Doubled C(w^n) for the characteristic-2, equal-trace, distinct-field
    case (difference) and the trace-zero char != 2 case (quotient): over
    K = F[t]/(w) the pair becomes translation/homothety-related and the
    block becomes an eigen-double at tbar."""
    field = pair.field
    K = QuotientRing(field, w, 1, check_irreducible=False)
    tbar = K.generator()
    pairK = _pair_over(pair, K)
    AK, BK = _eigen_double_witness(pairK, tbar, n)
    return restrict_scalars(AK), restrict_scalars(BK)


# ---------------------------------------------------------------------------
# fallback search


def _all_annihilated(poly, n, budget):
    field = poly.field
    elems = list(field.elements())
    count = 0
    for vals in itertools.product(elems, repeat=n * n):
        count += 1
        if count > budget:
            raise SearchExhausted("enumeration budget exhausted", tried=count)
        M = Matrix(field, [vals[i * n : (i + 1) * n] for i in range(n)])
        if evaluate_poly_at_matrix(poly, M).is_zero():
            yield M


def search_witness(M, pair, budget=10**6):
    """Enumerate B with q(B) = 0 and test A := M + B (resp. M B); complete
    over small finite fields within the budget."""
    n = M.rows
    field = pair.field
    if n == 0:
        Z = Matrix.zero(field, 0, 0)
        return Witness(Z, Z, pair.mode)
    if not getattr(field, "is_finite", False):
        raise SearchExhausted("search fallback is restricted to finite fields", tried=0)
    if field.order() ** (n * n) > budget:
        raise SearchExhausted(
            f"search space {field.order()}^{n * n} exceeds the budget", tried=0
        )
    tried = 0
    for B in _all_annihilated(pair.q, n, budget):
        tried += 1
        if pair.mode == QUOTIENT and B.det().is_zero():
            continue
        A = M + B if pair.mode == DIFFERENCE else M * B
        if evaluate_poly_at_matrix(pair.p, A).is_zero():
            verify_witness(M, pair, A, B)
            return Witness(A, B, pair.mode)
    raise SearchExhausted("no witness in the enumerated space", tried=tried)


# ---------------------------------------------------------------------------
# per-block dispatch and assembly


def _block_witness(block, pair, budget):
    kind = block.kind
    try:
        if kind in ("split_single", "split_pair"):
            A, B = _split_block_witness(block, pair)
        elif kind in ("translate_single", "translate_pair", "homothety_single", "homothety_pair"):
            A, B = _translate_block_witness(block, pair)
        elif kind == "regular_single":
            A, B = _hensel_witness(pair, block.payload["r"], block.payload["n"])
        elif kind in ("regular_double", "composed_double"):
            r = block.payload["r"]
            A, B = _duplication_witness(pair, r, block.payload["n"])
        elif kind == "samefield_step_pair":
            A, B = _samefield_step_witness(pair, block.payload["r"], block.payload["n1"], block.payload["n2"])
        elif kind == "eigen_double":
            A, B = _eigen_double_witness(pair, block.payload["e"], block.payload["n"])
        elif kind == "quartic_pair":
            A, B = _quartic_pair_witness(pair, block.payload["w"], block.payload["n1"], block.payload["n2"], block)
        elif kind in ("distinct_double", "opposite_double"):
            A, B = _distinct_double_witness(pair, block.payload["w"], block.payload["n"])
        else:
            raise ConstructError(f"no constructive route for block kind {kind!r}")
    except (ConstructError, RootUnavailable) as exc:
        # fall back to the complete small-field enumeration
        target = block.matrix()
        try:
            return search_witness(target, pair, budget)
        except SearchExhausted:
            raise SearchExhausted(f"block {block!r}: {exc}") from exc
    target = block.matrix()
    Mgot = _combine(pair.mode, A, B)
    S = find_similarity(Mgot, target)
    A2, B2 = S * A * S.inverse(), S * B * S.inverse()
    verify_witness(target, pair, A2, B2)
    return Witness(A2, B2, pair.mode)


def build_witness(M, cert, budget=10**6):
    """Witness for the certified matrix; blockwise construction conjugated
    back through the certificate's transition matrix."""
    if cert.verdict != YES:
        raise ConstructError(f"cannot build a witness for verdict {cert.verdict}")
    pair = cert.pair
    if cert.reduction is not None:
        inner_M = -M if cert.reduction == "negate_swap" else M.inverse()
        inner = build_witness(inner_M, cert.inner, budget)
        A, B = inner.B, inner.A
        verify_witness(M, pair, A, B)
        return Witness(A, B, pair.mode)
    field = pair.field
    blocks = cert.blocks()
    if not blocks:
        Z = Matrix.zero(field, 0, 0)
        if M.rows == 0:
            return Witness(Z, Z, pair.mode)
        raise ConstructError("certificate has no blocks for a nonzero matrix")
    parts = [_block_witness(b, pair, budget) for b in blocks]
    A = direct_sum(field, [w.A for w in parts])
    B = direct_sum(field, [w.B for w in parts])
    P = cert.transition  # P * M * P^-1 = D
    Pinv = P.inverse()
    A, B = Pinv * A * P, Pinv * B * P
    verify_witness(M, pair, A, B)
    return Witness(A, B, pair.mode)
