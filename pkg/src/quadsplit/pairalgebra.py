"""The 4-dimensional algebra attached to a pair of monic quadratics p, q and
a ring element x: generated by A, B with p(A) = 0, q(B) = 0 and
AB + BA = tr(q) A + tr(p) B - x.

Carries a trace, a conjugation h -> tr(h) - h, and a quaternary norm form N
with h h* = N(h) I. Isotropic nondegenerate N makes the algebra split: the
adapted-pair machinery below produces an explicit isomorphism onto 2x2
matrices, over a field or over F[t]/(r^n) by Hensel lifting.
"""

from __future__ import annotations

from .matrix import Matrix, evaluate_poly_at_matrix, lift_matrix
from .poly import NotMonic, Poly
from .quotient import QuotientRing, embed_poly


class PairAlgebraError(Exception):
    pass


class DegenerateNorm(PairAlgebraError):
    pass


class AnisotropicNorm(PairAlgebraError):
    pass


DIFFERENCE_BASIS = "difference"
QUOTIENT_BASIS = "quotient"


class PairElement:
    __slots__ = ("coords", "algebra")

    def __init__(self, coords, algebra):
        self.coords = tuple(coords)
        self.algebra = algebra

    def __add__(self, o):
        return PairElement([a + b for a, b in zip(self.coords, o.coords)], self.algebra)

    def __sub__(self, o):
        return PairElement([a - b for a, b in zip(self.coords, o.coords)], self.algebra)

    def __neg__(self):
        return PairElement([-a for a in self.coords], self.algebra)

    def scale(self, c):
        return PairElement([a * c for a in self.coords], self.algebra)

    def __mul__(self, o):
        table = self.algebra._table
        ring = self.algebra.ring
        out = [ring.zero()] * 4
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coords):
                if b.is_zero():
                    continue
                ab = a * b
                row = table[i][j]
                for k in range(4):
                    if not row[k].is_zero():
                        out[k] = out[k] + ab * row[k]
        return PairElement(out, self.algebra)

    def trace(self):
        alg = self.algebra
        a, b, c, d = self.coords
        return alg.two * a + alg.lam * b + alg.mu * c + alg.lammu_minus_x * d

    def conjugate(self):
        tr = self.trace()
        a, b, c, d = self.coords
        return PairElement((tr - a, -b, -c, -d), self.algebra)

    def norm(self):
        return self.algebra.norm_coords(self.coords)

    def is_zero(self):
        return all(a.is_zero() for a in self.coords)

    def as_matrix(self):
        alg = self.algebra
        acc = Matrix.zero(alg.ring, 4, 4)
        for c, basis_mat in zip(self.coords, alg.basis_matrices):
            acc = acc + basis_mat.scale(c)
        return acc

    def __eq__(self, o):
        return isinstance(o, PairElement) and self.coords == o.coords and self.algebra is o.algebra

    def __repr__(self):
        return f"<{', '.join(str(c) for c in self.coords)}>"


class PairAlgebra:
    """Structure constants are derived once from the explicit 4x4 matrix
    model (whose first columns read off coordinates directly)."""

    def __init__(self, p, q, ring, x):
        for poly in (p, q):
            if poly.is_zero() or poly.degree() != 2 or not poly.is_monic():
                raise NotMonic("p and q must be monic of degree 2")
        self.p = p
        self.q = q
        self.ring = ring
        self.x = x
        base = p.field

        def emb(c):
            if ring == base:
                return c
            return ring.embed(c)

        self.embed_scalar = emb
        lam = emb(-p.coeff(1))
        mu = emb(-q.coeff(1))
        alpha = emb(p.coeff(0))
        beta = emb(q.coeff(0))
        self.lam, self.mu, self.alpha, self.beta = lam, mu, alpha, beta
        self.two = ring.from_int(2)
        self.lammu_minus_x = lam * mu - x
        self.delta_difference = lam - mu
        z, o = ring.zero(), ring.one()
        A = Matrix(
            ring,
            [
                [z, -alpha, z, z],
                [o, lam, z, z],
                [z, z, z, -alpha],
                [z, z, o, lam],
            ],
        )
        B = Matrix(
            ring,
            [
                [z, -x, -beta, -lam * beta],
                [z, mu, z, beta],
                [o, lam, mu, lam * mu - x],
                [z, -o, z, z],
            ],
        )
        C = A * B
        I4 = Matrix.identity(ring, 4)
        self.basis_matrices = (I4, A, B, C)
        pr = embed_poly(p, ring) if isinstance(ring, QuotientRing) else p
        qr = embed_poly(q, ring) if isinstance(ring, QuotientRing) else q
        if not evaluate_poly_at_matrix(pr, A).is_zero():
            raise PairAlgebraError("p(A) != 0 (construction bug)")
        if not evaluate_poly_at_matrix(qr, B).is_zero():
            raise PairAlgebraError("q(B) != 0 (construction bug)")
        if A * B + B * A != A.scale(mu) + B.scale(lam) - I4.scale(x):
            raise PairAlgebraError("defining commutation relation failed")
        D = A - B
        if D * D - D.scale(self.delta_difference) != I4.scale(x - alpha - beta):
            raise PairAlgebraError("difference square relation failed")
        if self._is_unit(beta):
            Binv = (I4.scale(mu) - B).scale(beta.inverse())
            U = A * Binv
            if U * U.scale(beta) != U.scale(x) - I4.scale(alpha):
                raise PairAlgebraError("quotient square relation failed")
        # products' coordinates are their first columns; only matrix-vector
        # products are needed to derive the structure constants
        first_cols = [[m.entries[k][0] for k in range(4)] for m in self.basis_matrices]
        table = []
        for i in range(4):
            mi = self.basis_matrices[i].entries
            row_i = []
            for j in range(4):
                cj = first_cols[j]
                row_i.append(
                    tuple(
                        mi[k][0] * cj[0] + mi[k][1] * cj[1] + mi[k][2] * cj[2] + mi[k][3] * cj[3]
                        for k in range(4)
                    )
                )
            table.append(tuple(row_i))
        self._table = tuple(table)

    @staticmethod
    def _is_unit(c):
        if hasattr(c, "is_unit"):
            return c.is_unit()
        return not c.is_zero()

    # -- elements -------------------------------------------------------------

    def element(self, a, b, c, d):
        return PairElement((a, b, c, d), self)

    def from_coords(self, coords):
        return PairElement(tuple(coords), self)

    def zero(self):
        z = self.ring.zero()
        return PairElement((z, z, z, z), self)

    def one(self):
        z = self.ring.zero()
        return PairElement((self.ring.one(), z, z, z), self)

    def gen_a(self):
        z = self.ring.zero()
        return PairElement((z, self.ring.one(), z, z), self)

    def gen_b(self):
        z = self.ring.zero()
        return PairElement((z, z, self.ring.one(), z), self)

    def basis(self):
        z, o = self.ring.zero(), self.ring.one()
        return [
            PairElement((o, z, z, z), self),
            PairElement((z, o, z, z), self),
            PairElement((z, z, o, z), self),
            PairElement((z, z, z, o), self),
        ]

    def random_element(self, rng):
        return PairElement(tuple(self.ring.random_element(rng) for _ in range(4)), self)

    # -- the quadratic form ----------------------------------------------------

    def norm_coords(self, coords):
        a, b, c, d = coords
        lam, mu, alpha, beta, x = self.lam, self.mu, self.alpha, self.beta, self.x
        return (
            a * (a + lam * b + mu * c + (lam * mu - x) * d)
            + b * (alpha * b + x * c + alpha * mu * d)
            + beta * c * c
            + (lam * beta * c + alpha * beta * d) * d
        )

    def polar(self, h1, h2):
        return (h1 + h2).norm() - h1.norm() - h2.norm()

    def gram(self):
        """Matrix of the polar form in the standard basis."""
        bas = self.basis()
        return Matrix(
            self.ring, [[self.polar(bi, bj) for bj in bas] for bi in bas]
        )

    def degeneracy_indicator(self):
        """x^2 - tr(p)tr(q) x + gamma, which vanishes exactly on the
        degenerate parameters; gamma = tr(p)^2 q(0) + tr(q)^2 p(0) - 4 p(0)q(0)."""
        lam, mu, alpha, beta, x = self.lam, self.mu, self.alpha, self.beta, self.x
        gamma = lam * lam * beta + mu * mu * alpha - self.ring.from_int(4) * alpha * beta
        return x * x - lam * mu * x + gamma

    def is_degenerate(self):
        if isinstance(self.ring, QuotientRing) and not self.ring.is_field:
            raise PairAlgebraError("degeneracy test needs a field")
        by_indicator = self.degeneracy_indicator().is_zero()
        if self.ring.characteristic != 2:
            by_gram = self.gram().det().is_zero()
            if by_gram != by_indicator:
                raise PairAlgebraError("degeneracy criteria disagree (bug)")
        return by_indicator


def trace(h):
    return h.trace()


def star(h):
    return h.conjugate()


def norm(h):
    return h.norm()


def polar(h1, h2):
    return h1.algebra.polar(h1, h2)


# ---------------------------------------------------------------------------
# adapted pairs and the splitting isomorphism


def _adapted_pair_over_field(algebra, witness):
    """From one isotropic vector, produce X, Y with trace 0, norm 0,
    polar(X, Y) = -1 (whence X^2 = Y^2 = 0 and XY + YX = 1). Entirely
    rational: no square roots are extracted."""
    v = witness
    if v.is_zero() or not v.norm().is_zero():
        raise PairAlgebraError("witness must be nonzero isotropic")
    one = algebra.one()
    basis = algebra.basis()
    vc = v.conjugate()
    X = None
    for g in basis:
        cand = vc * g * v
        if not cand.is_zero():
            X = cand
            break
    if X is None:
        raise PairAlgebraError("no trace-zero nilpotent found (degenerate norm?)")
    if not X.trace().is_zero() or not X.norm().is_zero():
        raise PairAlgebraError("nilpotent normalization failed")
    e = None
    for g in basis:
        t = X * g
        tr = t.trace()
        if not tr.is_zero():
            if t * t != t.scale(tr):
                raise PairAlgebraError("idempotent construction failed")
            e = t.scale(tr.inverse())
            break
    if e is None:
        raise PairAlgebraError("no complement idempotent found")
    f = one - e
    Y0 = None
    for g in basis:
        cand = f * g * e
        if not cand.is_zero():
            Y0 = cand
            break
    if Y0 is None:
        raise PairAlgebraError("opposite corner is empty (bug)")
    c = (X * Y0).trace()
    if c.is_zero():
        raise PairAlgebraError("corner pairing degenerate (bug)")
    Y = Y0.scale(c.inverse())
    _assert_adapted(algebra, X, Y)
    return X, Y


def _assert_adapted(algebra, X, Y):
    one = algebra.one()
    if not (X * X).is_zero() or not (Y * Y).is_zero():
        raise PairAlgebraError("adapted pair: squares do not vanish")
    if X * Y + Y * X != one:
        raise PairAlgebraError("adapted pair: XY + YX != 1")
    if not X.norm().is_zero() or not Y.norm().is_zero():
        raise PairAlgebraError("adapted pair: norms do not vanish")
    if not algebra.polar(one, X).is_zero() or not algebra.polar(one, Y).is_zero():
        raise PairAlgebraError("adapted pair: not orthogonal to 1")
    if not (algebra.polar(X, Y) + algebra.ring.one()).is_zero():
        raise PairAlgebraError("adapted pair: pairing is not -1")
    if not _coordinate_matrix(algebra, X, Y).det().is_zero():
        return
    raise PairAlgebraError("adapted pair: (1, X, Y, XY) is not a basis")


def _coordinate_matrix(algebra, X, Y):
    cols = [algebra.one().coords, X.coords, Y.coords, (X * Y).coords]
    return Matrix(algebra.ring, [[cols[j][i] for j in range(4)] for i in range(4)])


def hensel_adapted_pair(algebra, witness_finder=None):
    """An adapted pair in the algebra over R = F[t]/(r^n): solved exactly on
    the residue field, then lifted one power of r at a time by solving the
    two- and three-equation linear systems of the lifting step."""
    ring = algebra.ring
    if not isinstance(ring, QuotientRing):
        # plain field: a single base-case solve
        residue_alg = algebra
        red = None
    elif ring.is_field:
        residue_alg = algebra
        red = None
    else:
        L = ring.residue_field()
        xbar = L.from_poly(Poly(ring.base, algebra.x.coeffs))
        residue_alg = PairAlgebra(algebra.p, algebra.q, L, xbar)
        red = L
    if residue_alg.is_degenerate():
        raise DegenerateNorm("residue norm form is degenerate")
    if witness_finder is None:
        from .quadform import isotropy, ISOTROPIC

        verdict = isotropy(residue_alg)
        if verdict.outcome != ISOTROPIC:
            raise AnisotropicNorm(f"residue norm form is not isotropic: {verdict.outcome}")
        witness = residue_alg.from_coords(verdict.witness)
    else:
        witness = witness_finder(residue_alg)
    Xr, Yr = _adapted_pair_over_field(residue_alg, witness)
    if red is None:
        return Xr, Yr

    lift = lambda h: algebra.from_coords([ring.lift(c) for c in h.coords])
    reduce_ = lambda c: ring.reduce(c)
    X, Y = lift(Xr), lift(Yr)
    one = algebra.one()
    gram_res = residue_alg.gram()
    Lfield = residue_alg.ring

    def residue_of(elem):
        return residue_alg.from_coords([reduce_(c) for c in elem.coords])

    def solve_for(correction_rows, rhs):
        rows = [
            [gram_row_for(w)[j] for j in range(4)] for w in correction_rows
        ]
        A = Matrix(Lfield, rows)
        b = Matrix(Lfield, [[v] for v in rhs])
        sol = A.solve(b)
        if sol is None:
            raise PairAlgebraError("lifting system unsolvable (bug)")
        return residue_alg.from_coords([sol.entries[i][0] for i in range(4)])

    def gram_row_for(w):
        # linear form u -> polar(w, u) in coordinates
        wc = Matrix(Lfield, [list(w.coords)])
        return (wc * gram_res).entries[0]

    def shrink(value, k):
        # value = root^k * h: return the residue of h
        return reduce_(ring.divide_by_root_power(value, k))

    n = ring.exponent
    eps = ring.from_poly(ring.root)
    for k in range(1, n):
        epsk = eps**k
        h1 = shrink(algebra.polar(one, X), k)
        h2 = shrink(X.norm(), k)
        U = solve_for([residue_alg.one(), residue_of(X)], [-h1, -h2])
        X = X + lift(U).scale(epsk)
        h3 = shrink(algebra.polar(one, Y), k)
        h4 = shrink(Y.norm(), k)
        h5 = shrink(algebra.polar(X, Y) + ring.one(), k)
        V = solve_for(
            [residue_alg.one(), residue_of(Y), residue_of(X)], [-h3, -h4, -h5]
        )
        Y = Y + lift(V).scale(epsk)
    _assert_adapted_local(algebra, X, Y)
    return X, Y


def _assert_adapted_local(algebra, X, Y):
    one = algebra.one()
    checks = (
        (X * X).is_zero(),
        (Y * Y).is_zero(),
        X * Y + Y * X == one,
        X.norm().is_zero(),
        Y.norm().is_zero(),
        algebra.polar(one, X).is_zero(),
        algebra.polar(one, Y).is_zero(),
        (algebra.polar(X, Y) + algebra.ring.one()).is_zero(),
    )
    if not all(checks):
        raise PairAlgebraError("Hensel lifting postconditions failed")
    coordmat = _coordinate_matrix(algebra, X, Y)
    coordmat.inverse()  # raises if not unimodular


def split_to_matrices(algebra, adapted=None, witness_finder=None):
    """Images of the generators under the isomorphism onto 2x2 matrices that
    sends (1, X, Y, XY) to (I, E12, E21, E11)."""
    if adapted is None:
        adapted = hensel_adapted_pair(algebra, witness_finder)
    X, Y = adapted
    ring = algebra.ring
    coordmat = _coordinate_matrix(algebra, X, Y)
    cinv = coordmat.inverse()

    def psi(h):
        col = Matrix(ring, [[c] for c in h.coords])
        y = cinv * col
        y0, y1, y2, y3 = (y.entries[i][0] for i in range(4))
        return Matrix(ring, [[y0 + y3, y1], [y2, y0]])

    a = psi(algebra.gen_a())
    b = psi(algebra.gen_b())
    base = algebra.p.field
    pr = embed_poly(algebra.p, ring) if isinstance(ring, QuotientRing) else algebra.p
    qr = embed_poly(algebra.q, ring) if isinstance(ring, QuotientRing) else algebra.q
    if not evaluate_poly_at_matrix(pr, a).is_zero():
        raise PairAlgebraError("split image: p(a) != 0")
    if not evaluate_poly_at_matrix(qr, b).is_zero():
        raise PairAlgebraError("split image: q(b) != 0")
    I2 = Matrix.identity(ring, 2)
    if a * b + b * a != a.scale(algebra.mu) + b.scale(algebra.lam) - I2.scale(algebra.x):
        raise PairAlgebraError("split image: commutation relation not transported")
    return a, b


def left_regular_representation(algebra, basis_variant):
    """Matrices of left multiplication by the two generators in the ordered
    basis (1, A-B, B, (A-B)B) or (B, A, 1, AB^-1)."""
    one = algebra.one()
    A = algebra.gen_a()
    B = algebra.gen_b()
    if basis_variant == DIFFERENCE_BASIS:
        D = A - B
        basis = [one, D, B, D * B]
    elif basis_variant == QUOTIENT_BASIS:
        if not PairAlgebra._is_unit(algebra.beta):
            raise PairAlgebraError("quotient basis needs q(0) to be a unit")
        binv = (one.scale(algebra.mu) - B).scale(algebra.beta.inverse())
        if B * binv != one:
            raise PairAlgebraError("inverse of B failed (bug)")
        basis = [B, A, one, A * binv]
    else:
        raise ValueError(f"unknown basis variant {basis_variant!r}")
    ring = algebra.ring
    basismat = Matrix(ring, [[basis[j].coords[i] for j in range(4)] for i in range(4)])
    binv_mat = basismat.inverse()  # raises when the four elements fail to be a basis

    def rep(g):
        cols = []
        for e in basis:
            prod = g * e
            col = binv_mat * Matrix(ring, [[c] for c in prod.coords])
            cols.append(col)
        return Matrix.from_columns(ring, cols)

    return rep(A), rep(B)
