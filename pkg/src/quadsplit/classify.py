"""The decision engine: given a square matrix M and a pair of monic
quadratics (p, q), decide whether M = A - B (difference mode) or M = A*B^-1
(quotient mode) for some A, B with p(A) = 0 and q(B) = 0, and emit a
certificate whose blocks name the canonical pieces.

The space splits along the quartic whose roots are the pairwise root
differences (resp. ratios) of p and q; the two parts are tested separately
and the verdicts combine conjunctively.
"""

from __future__ import annotations

from .canon import (
    NotSimilar,
    find_similarity,
    invariant_factors,
)
from .matrix import Matrix, companion, direct_sum
from .pairalgebra import PairAlgebra
from .poly import (
    Poly,
    decompose_in_quadratic,
    factor,
    gcd,
    homothety,
    joukowski,
    reciprocal_decompose,
    trace_of,
    translate,
)
from .quadform import (
    ANISOTROPIC,
    ISOTROPIC,
    UnsupportedField,
    isotropy,
)
from .quotient import QuotientRing
from .roots import RootUnavailable, quadratic_roots, sqrt_in_field

DIFFERENCE = "difference"
QUOTIENT = "quotient"

YES = "YES"
NO = "NO"
UNKNOWN = "Unknown"


class ClassifyError(Exception):
    pass


class NotInvertibleInput(ClassifyError):
    pass


class InternalInvariantViolation(ClassifyError):
    pass


# ---------------------------------------------------------------------------
# fundamental polynomials


def root_difference_poly(p, q):
    """(F, core, delta): F is the quartic with roots {x - y}, core the
    quadratic with F(t) = core(t^2 - delta*t), delta = tr p - tr q."""
    field = p.field
    lam, mu = trace_of(p), trace_of(q)
    alpha, beta = p.coeff(0), q.coeff(0)
    delta = lam - mu
    t = Poly.x(field)
    # res_x(p(x), q(x - t)) for monic quadratics via the closed resultant form
    f1, f0 = -lam, alpha
    g1 = -(t * field.from_int(2) + Poly.constant(mu))
    g0 = t * t + t * mu + Poly.constant(beta)
    c = Poly.constant
    F = (c(f0) - g0) * (c(f0) - g0) - (c(f1) - g1) * (c(f0) * g1 - g0 * c(f1))
    two = field.from_int(2)
    core = Poly(
        field,
        (F.coeff(0), two * (alpha + beta) - lam * mu, field.one()),
    )
    w = t * t - t * delta
    if core.compose(w) != F:
        raise InternalInvariantViolation("difference fundamental identity failed")
    return F, core, delta


def root_ratio_poly(p, q):
    """(G, core, delta): G is the quartic with roots {x / y}, core the
    quadratic with q(0)^2 G(t) = t^2 core(q(0) t + p(0)/t), delta = p(0)/q(0)."""
    field = p.field
    lam, mu = trace_of(p), trace_of(q)
    alpha, beta = p.coeff(0), q.coeff(0)
    if alpha.is_zero() or beta.is_zero():
        raise ClassifyError("quotient mode requires p(0) q(0) != 0")
    delta = alpha / beta
    t = Poly.x(field)
    c = Poly.constant
    # res_x(p(x), x^2 - mu t x + beta t^2) / beta^2
    g1 = -(t * mu)
    g0 = t * t * beta
    raw = (c(alpha) - g0) * (c(alpha) - g0) - (c(-lam) - g1) * (c(alpha) * g1 - g0 * c(-lam))
    G = raw * c((beta * beta).inverse())
    theta0 = beta * lam * lam + alpha * mu * mu - field.from_int(4) * alpha * beta
    core = Poly(field, (theta0, -(lam * mu), field.one()))
    # q(0)^2 G(t) = t^2 core(q(0) t + p(0)/t), expanded without denominators
    th1, th0 = core.coeff(1), core.coeff(0)
    lhs = G * c(beta * beta)
    rhs = Poly(
        field,
        (
            alpha * alpha,
            th1 * alpha,
            th0 + field.from_int(2) * alpha * beta,
            th1 * beta,
            beta * beta,
        ),
    )
    if lhs != rhs:
        raise InternalInvariantViolation("quotient fundamental identity failed")
    return G, core, delta


# ---------------------------------------------------------------------------
# the problem pair and its case tag


class QuadraticPair:
    def __init__(self, p, q, mode, fps_bound=4):
        if p.is_zero() or q.is_zero() or p.degree() != 2 or q.degree() != 2:
            raise ClassifyError("p and q must have degree 2")
        if not (p.is_monic() and q.is_monic()):
            raise ClassifyError("p and q must be monic")
        if mode not in (DIFFERENCE, QUOTIENT):
            raise ClassifyError(f"unknown mode {mode!r}")
        self.p = p
        self.q = q
        self.mode = mode
        self.field = p.field
        self.fps_bound = fps_bound
        if mode == DIFFERENCE:
            self.fundamental, self.core, self.delta = root_difference_poly(p, q)
        else:
            self.fundamental, self.core, self.delta = root_ratio_poly(p, q)
        self._p_factor = None
        self._q_factor = None

    def p_factorization(self):
        if self._p_factor is None:
            self._p_factor = factor(self.p, fps_bound=self.fps_bound)
        return self._p_factor

    def q_factorization(self):
        if self._q_factor is None:
            self._q_factor = factor(self.q, fps_bound=self.fps_bound)
        return self._q_factor

    def factorizations_proven(self):
        return self.p_factorization().is_proven() and self.q_factorization().is_proven()

    def roots_of(self, which):
        """(y1, y2) with multiplicity if split, else None."""
        fz = self.p_factorization() if which == "p" else self.q_factorization()
        linear = [(g, m) for g, m in fz.factors if g.degree() == 1]
        if not linear:
            return None
        if len(linear) == 1 and linear[0][1] == 2:
            y = -linear[0][0].coeff(0)
            return (y, y)
        if len(linear) == 2:
            y1 = -linear[0][0].coeff(0)
            y2 = -linear[1][0].coeff(0)
            return (y1, y2)
        return None

    def swapped(self):
        return QuadraticPair(self.q, self.p, self.mode, self.fps_bound)

    def __repr__(self):
        return f"Pair(p={self.p}, q={self.q}, {self.mode})"


def same_splitting_field(p, q, fps_bound=4):
    """Whether two irreducible monic quadratics generate the same quadratic
    extension. Never builds the extension: discriminant-product square test
    in characteristic != 2; Artin-Schreier class comparison for separable
    pairs in characteristic 2; radicial quadratic extensions of F_p(s) are
    all equal (they live in the unique degree-2 subfield of the perfect
    closure), and over a perfect field they do not exist."""
    field = p.field
    lam, mu = trace_of(p), trace_of(q)
    alpha, beta = p.coeff(0), q.coeff(0)
    if field.characteristic != 2:
        four = field.from_int(4)
        disc_p = lam * lam - four * alpha
        disc_q = mu * mu - four * beta
        return sqrt_in_field(disc_p * disc_q) is not None
    sep_p, sep_q = not lam.is_zero(), not mu.is_zero()
    if sep_p != sep_q:
        return False
    if sep_p:
        from .roots import artin_schreier_root

        w = alpha / (lam * lam) + beta / (mu * mu)
        return artin_schreier_root(w) is not None
    if getattr(field, "is_finite", False):
        raise InternalInvariantViolation("inseparable irreducible over a perfect field")
    return True


def translation_witness(p, q):
    """d with q = p(t + d), or None."""
    field = p.field
    lam, mu = trace_of(p), trace_of(q)
    if field.characteristic != 2:
        d = (lam - mu) / field.from_int(2)
        return d if translate(p, d) == q else None
    if lam != mu:
        return None
    # solve p(d) = q(0): d^2 - lam d + (p0 - q0) = 0
    cand = Poly(field, (p.coeff(0) - q.coeff(0), -lam, field.one()))
    try:
        roots = quadratic_roots(cand)
    except RootUnavailable:
        raise
    for d in roots:
        if translate(p, d) == q:
            return d
    return None


def homothety_witness(p, q):
    """d with q = d^-2 p(d t), or None."""
    field = p.field
    lam, mu = trace_of(p), trace_of(q)
    if not mu.is_zero():
        if lam.is_zero():
            return None
        d = lam / mu
        if not d.is_zero() and homothety(p, d) == q:
            return d
        return None
    if not lam.is_zero():
        return None
    # both traces zero: d^2 = p0 / q0
    ratio = p.coeff(0) / q.coeff(0)
    try:
        roots = quadratic_roots(Poly(field, (-ratio, field.zero(), field.one())))
    except RootUnavailable:
        raise
    for d in roots:
        if not d.is_zero() and homothety(p, d) == q:
            return d
    return None


# ---------------------------------------------------------------------------
# certificate data


class Block:
    """One canonical direct summand: the direct sum of the companion
    matrices of `companion_polys`, with construction metadata."""

    __slots__ = ("kind", "payload", "companion_polys", "part", "type_tag")

    def __init__(self, kind, payload, companion_polys, part, type_tag=None):
        self.kind = kind
        self.payload = payload
        self.companion_polys = [f for f in companion_polys if f.degree() >= 1]
        self.part = part  # "exceptional" | "regular"
        self.type_tag = type_tag

    def matrix(self):
        field = self.companion_polys[0].field
        return direct_sum(field, [companion(f) for f in self.companion_polys])

    def size(self):
        return sum(f.degree() for f in self.companion_polys)

    def to_json(self):
        out = {
            "kind": self.kind,
            "part": self.part,
            "companions": [_poly_json(f) for f in self.companion_polys],
        }
        if self.type_tag is not None:
            out["type"] = self.type_tag
        for k, v in sorted(self.payload.items()):
            out[k] = _payload_json(v)
        return out

    def __repr__(self):
        body = " (+) ".join(f"C({f})" for f in self.companion_polys)
        tag = f" [type {self.type_tag}]" if self.type_tag else ""
        return f"{self.kind}: {body}{tag}"


def _poly_json(f):
    return [str(c) for c in f.coeffs]


def _payload_json(v):
    if isinstance(v, Poly):
        return _poly_json(v)
    if isinstance(v, (list, tuple)):
        return [_payload_json(x) for x in v]
    if isinstance(v, (int, str)):
        return v
    return str(v)


class Certificate:
    def __init__(
        self,
        verdict,
        pair,
        matrix,
        exceptional_blocks=(),
        regular_blocks=(),
        failure=None,
        transition=None,
        reduction=None,
        inner=None,
    ):
        self.verdict = verdict
        self.pair = pair
        self.matrix = matrix
        self.exceptional_blocks = list(exceptional_blocks)
        self.regular_blocks = list(regular_blocks)
        self.failure = failure
        self.transition = transition  # P with P * M * P^-1 = block matrix
        self.reduction = reduction  # None | "negate_swap" | "invert_swap"
        self.inner = inner  # certificate of the reduced problem

    def blocks(self):
        return self.exceptional_blocks + self.regular_blocks

    def block_matrix(self):
        field = self.pair.field
        return direct_sum(field, [b.matrix() for b in self.blocks()])

    def to_json(self):
        out = {
            "verdict": self.verdict,
            "mode": self.pair.mode,
            "p": _poly_json(self.pair.p),
            "q": _poly_json(self.pair.q),
        }
        if self.reduction:
            out["reduction"] = self.reduction
            out["reduced"] = self.inner.to_json()
            return out
        out["exceptional_part"] = [b.to_json() for b in self.exceptional_blocks]
        out["regular_part"] = [b.to_json() for b in self.regular_blocks]
        if self.failure is not None:
            out["failure"] = self.failure
        return out


# ---------------------------------------------------------------------------
# shared condition helpers


def _exponents_of(invf, divisor):
    return [f.valuation(divisor) for f in invf]


def _reconstructs(invf, divisor_exponents):
    """Check each invariant factor equals the declared product exactly."""
    for f, parts in zip(invf, divisor_exponents):
        acc = Poly.one(f.field)
        for g, e in parts:
            acc = acc * g**e
        if acc != f:
            return False
    return True


def _chain_pairs(exps, max_step, exact=False):
    """Pair consecutive entries (1st with 2nd, ...) of a non-increasing
    exponent list; None when the pairing condition fails."""
    padded = list(exps)
    if len(padded) % 2:
        padded.append(0)
    for a, b in zip(padded, padded[1:]):
        if a < b:
            raise InternalInvariantViolation("invariant-factor exponents increase")
    pairs = []
    for k in range(0, len(padded), 2):
        a, b = padded[k], padded[k + 1]
        if exact and a != b:
            return None
        if a - b > max_step:
            return None
        if a > 0:
            pairs.append((a, b))
    return pairs


def _per_factor_pairs(invf, g1, g2, max_step):
    """Multiplicity pairs (a_i, b_i) of g1, g2 inside each invariant factor,
    requiring |a_i - b_i| <= max_step and exact reconstruction."""
    out = []
    for f in invf:
        a = f.valuation(g1)
        b = f.valuation(g2)
        if g1**a * g2**b != f:
            return None
        if abs(a - b) > max_step:
            return None
        out.append((a, b))
    return out


# ---------------------------------------------------------------------------
# regular part


def _regular_type(pair, r, caps):
    """Type of the irreducible r: 1 (isotropic norm), 2 (anisotropic), or
    None when undecidable; the Type-defining algebra is over F[t]/(r)."""
    field = pair.field
    p0q0 = pair.p.coeff(0) + pair.q.coeff(0)
    if r.degree() == 1:
        L = field
        ybar = -r.coeff(0)
        x = ybar + p0q0 if pair.mode == DIFFERENCE else pair.q.coeff(0) * ybar
    else:
        L = QuotientRing(field, r, 1, check_irreducible=False)
        ybar = L.generator()
        if pair.mode == DIFFERENCE:
            x = ybar + L.embed(p0q0)
        else:
            x = ybar * L.embed(pair.q.coeff(0))
    algebra = PairAlgebra(pair.p, pair.q, L, x)
    if algebra.is_degenerate():
        raise InternalInvariantViolation(
            "regular factor produced a degenerate norm form (theory violation)"
        )
    try:
        verdict = isotropy(algebra, **caps)
    except UnsupportedField as exc:
        return None, str(exc)
    if verdict.outcome == ISOTROPIC:
        return 1, None
    if verdict.outcome == ANISOTROPIC:
        return 2, None
    return None, f"isotropy search exhausted (bound {verdict.search_bound})"


def _analyze_regular(MR, pair, caps):
    """(status, blocks, failure) for the part with no eigenvalues among the
    root differences / ratios."""
    if MR.rows == 0:
        return YES, [], None
    field = pair.field
    invf = invariant_factors(MR).factors
    t = Poly.x(field)
    w = t * t - t * pair.delta
    cores = []
    for f in invf:
        if pair.mode == DIFFERENCE:
            h = decompose_in_quadratic(f, w)
        else:
            if f.degree() % 2:
                h = None
            else:
                m = f.degree() // 2
                P, Qp = reciprocal_decompose(f, m, pair.delta)
                h = P if Qp.is_zero() and not P.is_zero() and P.degree() == m and P.is_monic() else None
        if h is None:
            return (
                NO,
                [],
                {
                    "reason": "regular invariant factor lacks the required shape",
                    "factor": str(f),
                },
            )
        cores.append(h)
    # factor the cores and bucket valuations per irreducible
    irreducibles = {}
    for h in cores:
        fz = factor(h, fps_bound=pair.fps_bound)
        if not fz.is_proven():
            return (
                UNKNOWN,
                [],
                {"reason": "core factorization inconclusive", "factor": str(h)},
            )
        for g, _ in fz.factors:
            irreducibles[g.coeffs] = g
    blocks = []
    for key in sorted(irreducibles, key=lambda c: (len(c), tuple(repr(x) for x in c))):
        r = irreducibles[key]
        exps = [h.valuation(r) for h in cores]
        type_tag, why = _regular_type(pair, r, caps)
        if type_tag is None:
            return (
                UNKNOWN,
                [],
                {"reason": "Type undecided for a regular factor", "factor": str(r), "detail": why},
            )
        if type_tag == 1:
            for e in exps:
                if e > 0:
                    blocks.append(_regular_block(pair, r, e, 1, doubled=False))
        else:
            pairs = _chain_pairs(exps, 0, exact=True)
            if pairs is None:
                return (
                    NO,
                    [],
                    {
                        "reason": "anisotropic (Type 2) factor with unpaired multiplicity",
                        "factor": str(r),
                        "exponents": exps,
                    },
                )
            for a, _ in pairs:
                blocks.append(_regular_block(pair, r, a, 2, doubled=True))
    return YES, blocks, None


def _regular_block(pair, r, n, type_tag, doubled):
    field = pair.field
    if pair.mode == DIFFERENCE:
        t = Poly.x(field)
        f = (r**n).compose(t * t - t * pair.delta)
    else:
        f = joukowski(r**n, pair.delta)
    polys = [f, f] if doubled else [f]
    kind = "regular_double" if doubled else "regular_single"
    return Block(kind, {"r": r, "n": n}, polys, "regular", type_tag=type_tag)


# ---------------------------------------------------------------------------
# exceptional part, difference mode


def _analyze_exceptional(ME, pair, caps):
    if ME.rows == 0:
        return YES, [], None
    if not pair.factorizations_proven():
        return (
            UNKNOWN,
            [],
            {"reason": "irreducibility of p or q undecided within search bounds"},
        )
    invf = invariant_factors(ME).factors
    if pair.mode == DIFFERENCE:
        return _exceptional_difference(invf, pair)
    return _exceptional_quotient(invf, pair)


def _fail(reason, **detail):
    d = {"reason": reason}
    d.update({k: str(v) if isinstance(v, Poly) else v for k, v in detail.items()})
    return NO, [], d


def _exceptional_difference(invf, pair):
    field = pair.field
    proots = pair.roots_of("p")
    qroots = pair.roots_of("q")
    lin = lambda z: Poly(field, (-z, field.one()))

    if proots and qroots:
        x1, x2 = proots
        y1, y2 = qroots
        if x1 == x2 and y1 == y2:
            z0 = x1 - y1
            blocks = []
            for f in invf:
                e = f.valuation(lin(z0))
                if lin(z0) ** e != f:
                    return _fail("eigenvalue outside the root differences", factor=f)
                blocks.append(
                    Block("split_single", {"z": z0, "n": e, "roots": (x1, y1)}, [f], "exceptional")
                )
            return YES, blocks, None
        if x1 != x2 and y1 != y2:
            return _split_simple_common(
                invf,
                pair,
                sigma={x - y for x in (x1, x2) for y in (y1, y2)},
                involution=lambda z: pair.delta - z,
                max_step=1,
            )
        # q double, p simple (the opposite orientation was swapped away)
        y = y1
        z1, z2 = x1 - y, x2 - y
        pairs = _per_factor_pairs(invf, lin(z1), lin(z2), 2)
        if pairs is None:
            return _fail("mixed split case: 2-step pairing failed")
        blocks = [
            Block(
                "split_pair",
                {"z1": z1, "n1": a, "z2": z2, "n2": b},
                [lin(z1) ** a, lin(z2) ** b],
                "exceptional",
            )
            for (a, b) in pairs
            if a or b
        ]
        return YES, blocks, None

    if proots is None and qroots is not None:
        y1, y2 = qroots
        g1, g2 = translate(pair.p, y1), translate(pair.p, y2)
        if g1 == g2:
            blocks = []
            for f in invf:
                e = f.valuation(g1)
                if g1**e != f:
                    return _fail("minimal polynomial is not a power of the translate", factor=f)
                blocks.append(
                    Block("translate_single", {"y1": y1, "y2": y2, "n": e, "g": g1}, [f], "exceptional")
                )
            return YES, blocks, None
        pairs = _per_factor_pairs(invf, g1, g2, 1)
        if pairs is None:
            return _fail("translate multiplicities differ by more than 1")
        blocks = [
            Block(
                "translate_pair",
                {"y1": y1, "y2": y2, "n1": a, "n2": b, "g1": g1, "g2": g2},
                [g1**a, g2**b],
                "exceptional",
            )
            for (a, b) in pairs
            if a or b
        ]
        return YES, blocks, None

    if proots is None and qroots is None:
        return _exceptional_both_irreducible_difference(invf, pair)
    raise InternalInvariantViolation("swap reduction missed a split case")


def _split_simple_common(invf, pair, sigma, involution, max_step):
    """Both polynomials split with simple roots: within each invariant
    factor, multiplicities along each orbit {z, invol(z)} differ by at most
    max_step; fixed points are unconstrained."""
    field = pair.field
    lin = lambda z: Poly(field, (-z, field.one()))
    sigma = sorted(sigma, key=lambda z: repr(z))
    blocks = []
    for f in invf:
        mults = {repr(z): (z, f.valuation(lin(z))) for z in sigma}
        acc = Poly.one(field)
        for z, e in mults.values():
            acc = acc * lin(z) ** e
        if acc != f:
            return _fail("eigenvalue outside the allowed set", factor=f)
        seen = set()
        for zr, (z, e) in sorted(mults.items()):
            if zr in seen:
                continue
            z2 = involution(z)
            if z2 == z:
                seen.add(zr)
                if e:
                    blocks.append(Block("split_single", {"z": z, "n": e}, [lin(z) ** e], "exceptional"))
                continue
            e2 = mults[repr(z2)][1]
            seen.update((zr, repr(z2)))
            if abs(e - e2) > max_step:
                return _fail(
                    "orbit multiplicities out of step",
                    factor=f,
                    orbit=f"{z} / {z2}",
                    step=abs(e - e2),
                )
            if e or e2:
                blocks.append(
                    Block(
                        "split_pair",
                        {"z1": z, "n1": e, "z2": z2, "n2": e2},
                        [lin(z) ** e, lin(z2) ** e2],
                        "exceptional",
                    )
                )
    return YES, blocks, None


def _exceptional_both_irreducible_difference(invf, pair):
    field = pair.field
    p, q = pair.p, pair.q
    char2 = field.characteristic == 2
    lam, mu = trace_of(p), trace_of(q)
    alpha, beta = p.coeff(0), q.coeff(0)
    lin = lambda z: Poly(field, (-z, field.one()))
    try:
        same_field = same_splitting_field(p, q, pair.fps_bound)
    except RootUnavailable as exc:
        return UNKNOWN, [], {"reason": "same-splitting-field test undecided", "detail": str(exc)}

    if same_field:
        try:
            d = translation_witness(p, q)
        except RootUnavailable as exc:
            return UNKNOWN, [], {"reason": "translation test undecided", "detail": str(exc)}
        sep = not (char2 and lam.is_zero())
        if d is None and sep:
            fz = factor(pair.fundamental, fps_bound=pair.fps_bound)
            quads = [g for g, _ in fz.factors if g.degree() == 2]
            if not fz.is_proven():
                return UNKNOWN, [], {"reason": "fundamental factorization inconclusive"}
            if len(quads) != 2:
                raise InternalInvariantViolation("expected two quadratic factors")
            return _paired_two_divisors(invf, pair, quads[0], quads[1], step=1)
        if d is None and not sep:
            w = Poly(field, (alpha + beta, field.zero(), field.one()))
            return _paired_single_divisor(invf, pair, w, step=1)
        if sep and not char2:
            F = pair.fundamental
            r = F // (lin(d) ** 2)
            if lin(d) ** 2 * r != F:
                raise InternalInvariantViolation("translation factor mismatch")
            return _translation_mixed(invf, pair, d, r.monic())
        if sep and char2:
            pts = [d, d + lam]
            return _exact_paired_eigen(invf, pair, pts)
        return _exact_paired_eigen(invf, pair, [d])

    # distinct splitting fields
    sep_p = not (char2 and lam.is_zero())
    sep_q = not (char2 and mu.is_zero())
    if sep_p and sep_q and (not char2 or lam != mu):
        return _paired_single_divisor(invf, pair, pair.fundamental, step=1, kind="quartic_pair")
    if sep_p and sep_q:
        w = Poly(field, (alpha + beta, lam, field.one()))
        return _paired_single_divisor(invf, pair, w, step=0, kind="distinct_double")
    if not sep_p and not sep_q:
        w = Poly(field, (alpha + beta, field.zero(), field.one()))
        return _paired_single_divisor(invf, pair, w, step=0, kind="composed_double")
    # p separable, q not (the other orientation was swapped away)
    return _paired_single_divisor(invf, pair, pair.fundamental, step=1, kind="quartic_pair")


def _paired_two_divisors(invf, pair, r1, r2, step):
    """Invariant factors are products r1^a r2^b; per divisor the exponent
    chain pairs with step difference <= step."""
    exps1 = _exponents_of(invf, r1)
    exps2 = _exponents_of(invf, r2)
    if not _reconstructs(invf, [[(r1, a), (r2, b)] for a, b in zip(exps1, exps2)]):
        return _fail("invariant factor has an extraneous divisor")
    blocks = []
    for r, exps in ((r1, exps1), (r2, exps2)):
        pairs = _chain_pairs(exps, step)
        if pairs is None:
            return _fail("pairing condition failed", divisor=r, exponents=exps)
        for a, b in pairs:
            blocks.append(_samefield_block(pair, r, a, b))
    return YES, blocks, None


def _paired_single_divisor(invf, pair, w, step, kind=None):
    exps = _exponents_of(invf, w)
    if not _reconstructs(invf, [[(w, e)] for e in exps]):
        return _fail("invariant factor is not a power of the required divisor", divisor=w)
    pairs = _chain_pairs(exps, step, exact=(step == 0))
    if pairs is None:
        return _fail("pairing condition failed", divisor=w, exponents=exps)
    blocks = []
    for a, b in pairs:
        if kind == "quartic_pair":
            blocks.append(
                Block("quartic_pair", {"w": w, "n1": a, "n2": b}, [w**a, w**b], "exceptional")
            )
        elif kind == "distinct_double":
            blocks.append(
                Block("distinct_double", {"w": w, "n": a}, [w**a, w**b], "exceptional")
            )
        elif kind == "composed_double":
            r = _linear_core(pair, w)
            blocks.append(
                Block("composed_double", {"r": r, "n": a}, [w**a, w**b], "exceptional")
            )
        else:
            blocks.append(_samefield_block(pair, w, a, b))
    return YES, blocks, None


def _linear_core(pair, w):
    """The linear r with w = r(t^2 - delta t) (difference) or w = R_delta(r)
    (quotient); exists for the composed doubled kinds by construction."""
    field = pair.field
    if pair.mode == DIFFERENCE:
        t = Poly.x(field)
        h = decompose_in_quadratic(w, t * t - t * pair.delta)
    else:
        P, Qp = reciprocal_decompose(w, 1, pair.delta)
        h = P if Qp.is_zero() else None
    if h is None or h.degree() != 1:
        raise InternalInvariantViolation("expected a composed quadratic")
    return h


def _samefield_block(pair, r, a, b):
    """C(r^a) (+) C(r^b) with a - b in {0, 1}; equal exponents are realized
    by duplication, stepped ones by the same-splitting-field construction."""
    if a == b:
        try:
            core = _linear_core(pair, r)
            return Block("composed_double", {"r": core, "n": a}, [r**a, r**b], "exceptional")
        except InternalInvariantViolation:
            return Block("distinct_double", {"w": r, "n": a}, [r**a, r**b], "exceptional")
    return Block("samefield_step_pair", {"r": r, "n1": a, "n2": b}, [r**a, r**b], "exceptional")


def _exact_paired_eigen(invf, pair, points):
    """Split eigenvalues in `points`: consecutive invariant factors must be
    equal; blocks are doubled per eigenvalue."""
    field = pair.field
    lin = lambda z: Poly(field, (-z, field.one()))
    per = []
    for f in invf:
        parts = [(lin(e), f.valuation(lin(e))) for e in points]
        per.append(parts)
    if not _reconstructs(invf, per):
        return _fail("eigenvalue outside the allowed set")
    padded = list(invf)
    if len(padded) % 2:
        padded.append(None)
    blocks = []
    for k in range(0, len(padded), 2):
        f1, f2 = padded[k], padded[k + 1]
        if f1 != f2:
            return _fail("consecutive invariant factors differ", position=k + 1)
        for e in points:
            n = f1.valuation(lin(e))
            if n:
                blocks.append(
                    Block("eigen_double", {"e": e, "n": n}, [lin(e) ** n, lin(e) ** n], "exceptional")
                )
    return YES, blocks, None


def _translation_mixed(invf, pair, d, r):
    """Same splitting field, q a translate of p, characteristic != 2:
    (t-d)-exponents pair exactly, r-exponents pair with step <= 1."""
    field = pair.field
    lin = Poly(field, (-d, field.one()))
    exps_d = _exponents_of(invf, lin)
    exps_r = _exponents_of(invf, r)
    if not _reconstructs(invf, [[(lin, a), (r, b)] for a, b in zip(exps_d, exps_r)]):
        return _fail("invariant factor has an extraneous divisor")
    pairs_d = _chain_pairs(exps_d, 0, exact=True)
    if pairs_d is None:
        return _fail("translation eigenvalue multiplicities unpaired", exponents=exps_d)
    pairs_r = _chain_pairs(exps_r, 1)
    if pairs_r is None:
        return _fail("quadratic part pairing failed", exponents=exps_r)
    blocks = [
        Block("eigen_double", {"e": d, "n": a}, [lin**a, lin**a], "exceptional")
        for a, _ in pairs_d
    ]
    blocks += [_samefield_block(pair, r, a, b) for a, b in pairs_r]
    return YES, blocks, None


# ---------------------------------------------------------------------------
# exceptional part, quotient mode


def _exceptional_quotient(invf, pair):
    field = pair.field
    proots = pair.roots_of("p")
    qroots = pair.roots_of("q")
    lin = lambda z: Poly(field, (-z, field.one()))

    if proots and qroots:
        x1, x2 = proots
        y1, y2 = qroots
        if x1 == x2 and y1 == y2:
            z0 = x1 / y1
            blocks = []
            for f in invf:
                e = f.valuation(lin(z0))
                if lin(z0) ** e != f:
                    return _fail("eigenvalue outside the root ratios", factor=f)
                blocks.append(Block("split_single", {"z": z0, "n": e}, [f], "exceptional"))
            return YES, blocks, None
        if x1 != x2 and y1 != y2:
            return _split_simple_common(
                invf,
                pair,
                sigma={x / y for x in (x1, x2) for y in (y1, y2)},
                involution=lambda z: pair.delta / z,
                max_step=1,
            )
        y = y1
        z1, z2 = x1 / y, x2 / y
        pairs = _per_factor_pairs(invf, lin(z1), lin(z2), 2)
        if pairs is None:
            return _fail("mixed split case: 2-step pairing failed")
        blocks = [
            Block(
                "split_pair",
                {"z1": z1, "n1": a, "z2": z2, "n2": b},
                [lin(z1) ** a, lin(z2) ** b],
                "exceptional",
            )
            for (a, b) in pairs
            if a or b
        ]
        return YES, blocks, None

    if proots is None and qroots is not None:
        y1, y2 = qroots
        g1, g2 = homothety(pair.p, y1), homothety(pair.p, y2)
        if g1 == g2:
            blocks = []
            for f in invf:
                e = f.valuation(g1)
                if g1**e != f:
                    return _fail("minimal polynomial is not a power of the rescaling", factor=f)
                blocks.append(
                    Block("homothety_single", {"y1": y1, "y2": y2, "n": e, "g": g1}, [f], "exceptional")
                )
            return YES, blocks, None
        pairs = _per_factor_pairs(invf, g1, g2, 1)
        if pairs is None:
            return _fail("rescaled multiplicities differ by more than 1")
        blocks = [
            Block(
                "homothety_pair",
                {"y1": y1, "y2": y2, "n1": a, "n2": b, "g1": g1, "g2": g2},
                [g1**a, g2**b],
                "exceptional",
            )
            for (a, b) in pairs
            if a or b
        ]
        return YES, blocks, None

    if proots is None and qroots is None:
        return _exceptional_both_irreducible_quotient(invf, pair)
    raise InternalInvariantViolation("swap reduction missed a split case")


def _exceptional_both_irreducible_quotient(invf, pair):
    field = pair.field
    p, q = pair.p, pair.q
    char2 = field.characteristic == 2
    lam, mu = trace_of(p), trace_of(q)
    alpha, beta = p.coeff(0), q.coeff(0)
    lin = lambda z: Poly(field, (-z, field.one()))
    try:
        same_field = same_splitting_field(p, q, pair.fps_bound)
    except RootUnavailable as exc:
        return UNKNOWN, [], {"reason": "same-splitting-field test undecided", "detail": str(exc)}

    if same_field:
        try:
            d = homothety_witness(p, q)
        except RootUnavailable as exc:
            return UNKNOWN, [], {"reason": "homothety test undecided", "detail": str(exc)}
        sep = not (char2 and lam.is_zero())
        if d is None and sep:
            fz = factor(pair.fundamental, fps_bound=pair.fps_bound)
            if not fz.is_proven():
                return UNKNOWN, [], {"reason": "fundamental factorization inconclusive"}
            quads = [g for g, _ in fz.factors if g.degree() == 2]
            if len(quads) != 2:
                raise InternalInvariantViolation("expected two quadratic factors")
            return _paired_two_divisors(invf, pair, quads[0], quads[1], step=1)
        if d is None and not sep:
            w = Poly(field, (alpha / beta, field.zero(), field.one()))
            return _paired_single_divisor(invf, pair, w, step=1)
        if not lam.is_zero():
            G = pair.fundamental
            r = G // (lin(d) ** 2)
            if lin(d) ** 2 * r != G:
                raise InternalInvariantViolation("homothety factor mismatch")
            return _translation_mixed(invf, pair, d, r.monic())
        if field.characteristic != 2:
            return _exact_paired_eigen(invf, pair, [d, -d])
        return _exact_paired_eigen(invf, pair, [d])

    if lam.is_zero() and mu.is_zero():
        w = Poly(field, (-pair.delta, field.zero(), field.one()))
        kind = "composed_double" if char2 else "opposite_double"
        return _paired_single_divisor(invf, pair, w, step=0, kind=kind)
    return _paired_single_divisor(invf, pair, pair.fundamental, step=1, kind="quartic_pair")


# ---------------------------------------------------------------------------
# top-level dispatch


def _needs_swap(pair):
    proots = pair.roots_of("p")
    qroots = pair.roots_of("q")
    if proots is not None and qroots is None:
        return True  # p split, q irreducible
    if proots is not None and qroots is not None:
        x1, x2 = proots
        y1, y2 = qroots
        if x1 == x2 and y1 != y2:
            return True  # p double root, q simple roots
        return False
    if proots is None and qroots is None:
        if pair.field.characteristic != 2:
            return False
        lam, mu = trace_of(pair.p), trace_of(pair.q)
        sep_p, sep_q = not lam.is_zero(), not mu.is_zero()
        if not sep_p and sep_q:
            try:
                if not same_splitting_field(pair.p, pair.q, pair.fps_bound):
                    return True  # inseparable p against separable q
            except RootUnavailable:
                return False
        return False
    return False


def classify_matrix(M, pair, isotropy_caps=None):
    """Full classification; returns a Certificate with verdict YES/NO/Unknown."""
    caps = isotropy_caps or {}
    if not M.is_square():
        raise ClassifyError("matrix must be square")
    if M.ring != pair.field:
        raise ClassifyError("matrix and pair live over different fields")
    if pair.mode == QUOTIENT and M.rows and M.det().is_zero():
        raise NotInvertibleInput("quotient mode requires an invertible matrix")

    if pair.factorizations_proven() and _needs_swap(pair):
        swapped = pair.swapped()
        if pair.mode == DIFFERENCE:
            inner = classify_matrix(-M, swapped, caps)
            reduction = "negate_swap"
        else:
            inner = classify_matrix(M.inverse(), swapped, caps)
            reduction = "invert_swap"
        return Certificate(
            inner.verdict,
            pair,
            M,
            failure=inner.failure,
            reduction=reduction,
            inner=inner,
        )

    from .canon import primary_split

    split = primary_split(M, pair.fundamental)
    ME, MR = split.kernel_block, split.image_block
    exc_status, exc_blocks, exc_fail = _analyze_exceptional(ME, pair, caps)
    reg_status, reg_blocks, reg_fail = (
        _analyze_regular(MR, pair, caps) if exc_status != NO else (YES, [], None)
    )
    if exc_status == NO or reg_status == NO:
        failure = exc_fail if exc_status == NO else reg_fail
        return Certificate(NO, pair, M, failure=failure)
    if exc_status == UNKNOWN or reg_status == UNKNOWN:
        failure = exc_fail if exc_status == UNKNOWN else reg_fail
        return Certificate(UNKNOWN, pair, M, failure=failure)
    cert = Certificate(YES, pair, M, exc_blocks, reg_blocks)
    D = cert.block_matrix()
    try:
        cert.transition = find_similarity(M, D)
    except NotSimilar as exc:
        raise InternalInvariantViolation(
            f"certified blocks are not similar to the input: {exc}"
        ) from exc
    return cert


# ---------------------------------------------------------------------------
# atlas of indecomposable canonical representatives


def indecomposable_atlas(pair, size_bound, coefficient_range=3, isotropy_caps=None):
    """Table rows instantiable over the base field with total size <= bound;
    over infinite fields the data parameters range over a small box. Every
    emitted entry classifies YES (self-checked). Returns (matrix, block)."""
    caps = isotropy_caps or {}
    out = []
    seen = set()
    for block in _atlas_blocks(pair, size_bound, coefficient_range, caps):
        mat = block.matrix()
        key = tuple(f.coeffs for f in block.companion_polys)
        if key in seen:
            continue
        seen.add(key)
        cert = classify_matrix(mat, pair, caps)
        if cert.verdict != YES:
            raise InternalInvariantViolation(
                f"atlas row failed its self-check: {block} -> {cert.verdict}"
            )
        out.append((mat, block))
    out.sort(
        key=lambda mb: (
            mb[0].rows,
            tuple(tuple(repr(c) for c in f.coeffs) for f in mb[1].companion_polys),
        )
    )
    return out


def _atlas_candidate_irreducibles(pair, max_degree, coefficient_range):
    field = pair.field
    if getattr(field, "is_finite", False):
        from .poly import irreducible_monic_polys

        for d in range(1, max_degree + 1):
            for r in irreducible_monic_polys(field, d):
                yield r
        return
    # small box over infinite fields
    import itertools as it

    consts = [field.from_int(k) for k in range(-coefficient_range, coefficient_range + 1)]
    for c0 in consts:
        yield Poly(field, (-c0, field.one()))
    if max_degree >= 2:
        for c0, c1 in it.product(consts, repeat=2):
            cand = Poly(field, (c0, c1, field.one()))
            fz = factor(cand, fps_bound=pair.fps_bound)
            if fz.is_proven() and len(fz.factors) == 1 and fz.factors[0][1] == 1:
                yield cand


def _atlas_blocks(pair, size_bound, coefficient_range, caps):
    field = pair.field
    # regular rows
    for r in _atlas_candidate_irreducibles(pair, size_bound // 2, coefficient_range):
        if pair.mode == QUOTIENT and r == Poly.x(field):
            continue
        composed = (
            r.compose(Poly(field, (field.zero(), -pair.delta, field.one())))
            if pair.mode == DIFFERENCE
            else joukowski(r, pair.delta)
        )
        if not gcd(composed, pair.fundamental).degree() == 0:
            continue
        try:
            type_tag, _ = _regular_type(pair, r, caps)
        except (UnsupportedField, InternalInvariantViolation):
            continue
        if type_tag is None:
            continue
        n = 1
        while True:
            single = _regular_block(pair, r, n, type_tag, doubled=(type_tag == 2))
            if single.size() > size_bound:
                break
            yield single
            n += 1
    # exceptional rows: reuse the analyzers by classifying candidate block
    # matrices built from the case data
    yield from _atlas_exceptional(pair, size_bound, coefficient_range, caps)


def _atlas_exceptional(pair, size_bound, coefficient_range, caps):
    """Candidate exceptional rows; every candidate is re-validated by the
    analyzer before being emitted, so over-generation is harmless."""
    field = pair.field
    invf_of = lambda polys: [f for f in polys if f.degree() >= 1]
    made = []

    def consider(kind, payload, polys):
        polys = invf_of(polys)
        if not polys:
            return
        total = sum(f.degree() for f in polys)
        if total > size_bound or total == 0:
            return
        block = Block(kind, payload, polys, "exceptional")
        mat = block.matrix()
        cert = classify_matrix(mat, pair, caps)
        if cert.verdict == YES:
            made.append(block)

    proots = pair.roots_of("p")
    qroots = pair.roots_of("q")
    lin = lambda z: Poly(field, (-z, field.one()))
    max_n = max(1, size_bound)
    if proots and qroots:
        x1, x2 = proots
        y1, y2 = qroots
        zs = sorted(
            {x - y for x in (x1, x2) for y in (y1, y2)}
            if pair.mode == DIFFERENCE
            else {x / y for x in (x1, x2) for y in (y1, y2)},
            key=repr,
        )
        for z in zs:
            for n in range(1, max_n + 1):
                consider("split_single", {"z": z, "n": n}, [lin(z) ** n])
                inv = (pair.delta - z) if pair.mode == DIFFERENCE else (pair.delta / z)
                for eps in (0, 1, 2):
                    if n - eps >= 0:
                        consider(
                            "split_pair",
                            {"z1": z, "n1": n, "z2": inv, "n2": n - eps},
                            [lin(z) ** n, lin(inv) ** (n - eps)],
                        )
    elif proots is None and qroots is not None:
        y1, y2 = qroots
        if pair.mode == DIFFERENCE:
            g1, g2 = translate(pair.p, y1), translate(pair.p, y2)
            kinds = ("translate_single", "translate_pair")
        else:
            g1, g2 = homothety(pair.p, y1), homothety(pair.p, y2)
            kinds = ("homothety_single", "homothety_pair")
        for n in range(1, max_n + 1):
            consider(kinds[0], {"y1": y1, "y2": y2, "n": n, "g": g1}, [g1**n])
            for eps in (0, 1):
                if n - eps >= 0:
                    consider(
                        kinds[1],
                        {"y1": y1, "y2": y2, "n1": n, "n2": n - eps, "g1": g1, "g2": g2},
                        [g1**n, g2 ** (n - eps)],
                    )
    elif proots is None and qroots is None:
        fz = factor(pair.fundamental, fps_bound=pair.fps_bound)
        if fz.is_proven():
            for g, _ in fz.factors:
                for n in range(1, max_n + 1):
                    for eps in (0, 1):
                        if n - eps >= 0:
                            consider(
                                "samefield_step_pair" if eps else "paired_double",
                                {"r": g, "n1": n, "n2": n - eps},
                                [g**n, g ** (n - eps)],
                            )
                    if g.degree() == 1:
                        consider("eigen_double", {"e": -g.coeff(0), "n": n}, [g**n, g**n])
    return made
