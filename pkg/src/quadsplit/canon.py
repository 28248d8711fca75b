"""Canonical forms: invariant factors via the Smith form of tI - M over F[t],
elementary divisors, primary (kernel/image) splitting, Jordan-type counters,
and the block-cyclic normal form law.

Invariant factors are listed largest first: factors[i+1] divides factors[i],
and factors[0] is the minimal polynomial.
"""

from __future__ import annotations

from .matrix import Matrix, MatrixError, companion, direct_sum, evaluate_poly_at_matrix
from .poly import Poly, factor, root_multiplicity


class CanonError(Exception):
    pass


class NotSimilar(CanonError):
    def __init__(self, factors_left, factors_right):
        self.factors_left = factors_left
        self.factors_right = factors_right
        super().__init__("matrices are not similar (distinct invariant factors)")


class AnnihilationFailure(CanonError):
    pass


class InvariantFactors:
    """factors: nonconstant monic polys, factors[i+1] | factors[i];
    transition: P with P*M*P^-1 = rcf = direct sum of companion blocks."""

    __slots__ = ("factors", "transition", "rcf")

    def __init__(self, factors, transition, rcf):
        self.factors = factors
        self.transition = transition
        self.rcf = rcf

    def key(self):
        """Hashable canonical key (coefficient tuples, largest factor first)."""
        return tuple(f.coeffs for f in self.factors)

    def min_poly(self):
        return self.factors[0] if self.factors else None

    def char_poly(self, field):
        out = Poly.one(field)
        for f in self.factors:
            out = out * f
        return out

    def __repr__(self):
        return "[" + ", ".join(str(f) for f in self.factors) + "]"


def _poly_matrix_of(M):
    """tI - M as a mutable list-of-lists of Poly."""
    field = M.ring
    n = M.rows
    t = Poly.x(field)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            e = Poly.constant(-M.entries[i][j])
            if i == j:
                e = e + t
            row.append(e)
        rows.append(row)
    return rows


def _smith_with_row_transform(A, field):
    """Diagonalize A by unimodular row/column operations; returns
    (diagonal polys ascending-divisibility, Uinv) where U*A*V = D."""
    n = len(A)
    # Uinv starts as identity (entries Poly); row op L on A updates Uinv by
    # the inverse column op so that Uinv stays the inverse of the accumulated U.
    uinv = [[Poly.one(field) if i == j else Poly.zero(field) for j in range(n)] for i in range(n)]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        for r in range(n):
            uinv[r][i], uinv[r][j] = uinv[r][j], uinv[r][i]

    def row_add(i, j, q):
        # row_i += q*row_j ; Uinv: col_j -= q*col_i
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        for r in range(n):
            uinv[r][j] = uinv[r][j] - q * uinv[r][i]

    def row_scale(i, c):
        A[i] = [a * Poly.constant(c) for a in A[i]]
        cinv = Poly.constant(c.inverse())
        for r in range(n):
            uinv[r][i] = uinv[r][i] * cinv

    def col_swap(i, j):
        for r in range(n):
            A[r][i], A[r][j] = A[r][j], A[r][i]

    def col_add(i, j, q):
        # col_i += q*col_j
        for r in range(n):
            A[r][i] = A[r][i] + q * A[r][j]

    for k in range(n):
        while True:
            # minimal-degree pivot in the trailing submatrix
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if not A[i][j].is_zero():
                        d = A[i][j].degree()
                        if best is None or d < best[0]:
                            best = (d, i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != k:
                row_swap(k, bi)
            if bj != k:
                col_swap(k, bj)
            clean = True
            for i in range(k + 1, n):
                if not A[i][k].is_zero():
                    q = A[i][k] // A[k][k]
                    row_add(i, k, -q)
                    if not A[i][k].is_zero():
                        clean = False
            for j in range(k + 1, n):
                if not A[k][j].is_zero():
                    q = A[k][j] // A[k][k]
                    col_add(j, k, -q)
                    if not A[k][j].is_zero():
                        clean = False
            if not clean:
                continue
            # pivot must divide every remaining entry
            offender = None
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if not (A[i][j] % A[k][k]).is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(k, offender, Poly.one(field))
        if not A[k][k].is_zero() and not A[k][k].is_monic():
            row_scale(k, A[k][k].lead().inverse())
    return [A[i][i] for i in range(n)], uinv


def invariant_factors(M):
    """Smith normal form of tI - M, with the change of basis to rational
    canonical form; the result is verified by explicit multiplication."""
    if not M.is_square():
        raise MatrixError("invariant factors of a non-square matrix")
    field = M.ring
    n = M.rows
    if n == 0:
        return InvariantFactors([], Matrix.zero(field, 0, 0), Matrix.zero(field, 0, 0))
    A = _poly_matrix_of(M)
    diag, uinv = _smith_with_row_transform(A, field)
    # generators of the cyclic summands: columns of U^-1, coefficients
    # bundled as vectors and pushed through powers of M
    maxdeg = max((e.degree() for col in uinv for e in col if not e.is_zero()), default=0)
    powers = [Matrix.identity(field, n)]
    for _ in range(maxdeg):
        powers.append(powers[-1] * M)
    nontrivial = [(i, d) for i, d in enumerate(diag) if d.is_zero() or d.degree() >= 1]
    # descending divisibility order: largest factor first
    nontrivial.sort(key=lambda t: -t[1].degree())
    cols = []
    factors = []
    for i, d in nontrivial:
        gen = Matrix.zero(field, n, 1)
        for k in range(maxdeg + 1):
            w = Matrix(field, [[uinv[j][i].coeff(k)] for j in range(n)])
            gen = gen + powers[k] * w
        factors.append(d)
        vec = gen
        for _ in range(d.degree()):
            cols.append(vec)
            vec = M * vec
    if len(cols) != n:
        raise CanonError("cyclic generators do not span (Smith form bug)")
    pc = Matrix.from_columns(field, cols)
    try:
        p = pc.inverse()
    except MatrixError as exc:  # pragma: no cover - guarded by theory
        raise CanonError("transition matrix is singular (Smith form bug)") from exc
    rcf = direct_sum(field, [companion(f) for f in factors])
    if p * M * pc != rcf:
        raise CanonError("rational canonical form verification failed")
    return InvariantFactors(factors, p, rcf)


def elementary_divisors(M_or_factors, **factor_kwargs):
    """Multiset of (irreducible monic, exponent) pairs."""
    if isinstance(M_or_factors, Matrix):
        facs = invariant_factors(M_or_factors).factors
    elif isinstance(M_or_factors, InvariantFactors):
        facs = M_or_factors.factors
    else:
        facs = M_or_factors
    out = []
    for f in facs:
        fz = factor(f, **factor_kwargs)
        if not fz.is_proven():
            raise CanonError("elementary divisors need a proven factorization")
        for g, m in fz.factors:
            out.append((g, m))
    return sorted(out, key=lambda gm: (gm[0].degree(), tuple(repr(c) for c in gm[0].coeffs), gm[1]))


def invariant_factors_from_elementary(eds, field):
    """Reassemble the descending invariant-factor chain from elementary
    divisors given as (irreducible, exponent) pairs."""
    by_irred = {}
    for g, e in eds:
        by_irred.setdefault(g, []).append(e)
    for g in by_irred:
        by_irred[g].sort(reverse=True)
    depth = max((len(v) for v in by_irred.values()), default=0)
    factors = []
    for i in range(depth):
        f = Poly.one(field)
        for g, exps in by_irred.items():
            if i < len(exps):
                f = f * g ** exps[i]
        factors.append(f)
    factors.sort(key=lambda f: -f.degree())
    return factors


def kernel_increment(M, lam, k):
    """dim ker (M - lam I)^k - dim ker (M - lam I)^(k-1): the number of
    Jordan cells of size at least k at the eigenvalue lam."""
    if not M.is_square():
        raise MatrixError("square matrix required")
    n = M.rows
    shifted = M - Matrix.identity(M.ring, n).scale(lam)
    def kdim(j):
        if j == 0:
            return 0
        return n - (shifted**j).rank()
    return kdim(k) - kdim(k - 1)


def intertwined(a, b, lag):
    """Non-increasing integer sequences a, b (zero-extended):
    a[n+lag] <= b[n] and b[n+lag] <= a[n] for all n >= 1."""
    def get(seq, i):  # 1-based with implicit zero tail
        return seq[i - 1] if 1 <= i <= len(seq) else 0
    top = max(len(a), len(b)) + lag + 1
    for n in range(1, top + 1):
        if get(a, n + lag) > get(b, n) or get(b, n + lag) > get(a, n):
            return False
    return True


class PrimarySplit:
    __slots__ = ("kernel_basis", "image_basis", "kernel_block", "image_block", "transition")

    def __init__(self, kernel_basis, image_basis, kernel_block, image_block, transition):
        self.kernel_basis = kernel_basis
        self.image_basis = image_basis
        self.kernel_block = kernel_block
        self.image_block = image_block
        # transition T with T^-1 * M * T = kernel_block (+) image_block
        self.transition = transition


def primary_split(M, f):
    """Split the space into the stabilized kernel and stabilized image of
    f(M); both are M-stable, and M restricts to the returned blocks."""
    if not M.is_square():
        raise MatrixError("square matrix required")
    field = M.ring
    n = M.rows
    N = evaluate_poly_at_matrix(f, M)
    power = N
    prev_rank = None
    while True:
        r = power.rank()
        if r == prev_rank:
            break
        prev_rank = r
        power = power * N
    ker_cols = power.kernel_basis()
    # image basis: pivot columns of the stabilized power
    work, pivots, _ = power._echelon()
    img_cols = [power.column(j) for j in pivots]
    cols = ker_cols + img_cols
    if len(cols) != n:
        raise CanonError("kernel/image split does not fill the space")
    T = Matrix.from_columns(field, cols) if cols else Matrix.zero(field, n, n)
    Tinv = T.inverse()
    full = Tinv * M * T
    ke = len(ker_cols)
    kblock = Matrix(field, [row[:ke] for row in full.entries[:ke]]) if ke else Matrix.zero(field, 0, 0)
    iblock = (
        Matrix(field, [row[ke:] for row in full.entries[ke:]])
        if n - ke
        else Matrix.zero(field, 0, 0)
    )
    # M-stability: the off-diagonal blocks of the conjugated matrix vanish
    for i in range(ke):
        for j in range(ke, n):
            if not full.entries[i][j].is_zero():
                raise CanonError("kernel part not M-stable (bug)")
    for i in range(ke, n):
        for j in range(ke):
            if not full.entries[i][j].is_zero():
                raise CanonError("image part not M-stable (bug)")
    return PrimarySplit(ker_cols, img_cols, kblock, iblock, T)


def block_jordan_matrix(N, n):
    """The nd x nd block lower-bidiagonal matrix with N on the diagonal and
    identity blocks on the subdiagonal."""
    field = N.ring
    d = N.rows
    out = Matrix.zero(field, n * d, n * d)
    rows = [list(r) for r in out.entries]
    for b in range(n):
        for i in range(d):
            for j in range(d):
                rows[b * d + i][b * d + j] = N.entries[i][j]
        if b:
            for i in range(d):
                rows[b * d + i][(b - 1) * d + i] = field.one()
    return Matrix(field, rows)


def block_cyclic_invariants(N, P, n):
    """Predicted and computed invariant factors of the block-bidiagonal
    matrix built from N (annihilated by the irreducible monic P); the two
    must agree, and the common value is returned (largest factor first)."""
    if not evaluate_poly_at_matrix(P, N).is_zero():
        raise AnnihilationFailure("P(N) != 0")
    m = root_multiplicity(P)
    q, r = divmod(n, m)
    predicted = [P ** (q + 1)] * r + [P**q] * (m - r)
    predicted = [f for f in predicted if f.degree() >= 1]
    predicted.sort(key=lambda f: -f.degree())
    M = block_jordan_matrix(N, n)
    computed = invariant_factors(M).factors
    if predicted != computed:
        raise CanonError(
            f"block-cyclic law violated: predicted {predicted}, computed {computed}"
        )
    return computed


def find_similarity(M, N):
    """Invertible S with S*M*S^-1 = N, via the two canonical bases;
    raises NotSimilar when the invariant factors differ."""
    fm = invariant_factors(M)
    fn = invariant_factors(N)
    if [f.coeffs for f in fm.factors] != [f.coeffs for f in fn.factors]:
        raise NotSimilar(fm.factors, fn.factors)
    s = fn.transition.inverse() * fm.transition
    if s * M * s.inverse() != N:
        raise CanonError("similarity transport verification failed")
    return s
