"""Dense exact matrices over a field or quotient ring.

Row-major immutable entries. The 0x0 matrix is legal: it is the companion
matrix of the constant 1 and the identity of the empty direct sum.
"""

from __future__ import annotations

from .poly import NotMonic, Poly, lcm as poly_lcm
from .quotient import QuotientRing, embed_poly


class MatrixError(Exception):
    pass


class NotInvertible(MatrixError):
    pass


class Matrix:
    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, entries):
        self.ring = ring
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(ring, rows, cols=None):
        cols = rows if cols is None else cols
        z = ring.zero()
        return Matrix(ring, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(ring, n):
        z, o = ring.zero(), ring.one()
        return Matrix(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def from_rows(ring, rows):
        return Matrix(ring, rows)

    @staticmethod
    def from_int_rows(ring, rows):
        return Matrix(ring, [[ring.from_int(v) for v in row] for row in rows])

    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, o):
        return Matrix(
            self.ring,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, o.entries)],
        )

    def __sub__(self, o):
        return Matrix(
            self.ring,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, o.entries)],
        )

    def __neg__(self):
        return Matrix(self.ring, [[-a for a in row] for row in self.entries])

    def __mul__(self, o):
        if isinstance(o, Matrix):
            if self.cols != o.rows:
                raise MatrixError("dimension mismatch")
            if self.rows == 0 or o.cols == 0 or self.cols == 0:
                return Matrix.zero(self.ring, self.rows, o.cols)
            ot = list(zip(*o.entries))
            out = []
            for row in self.entries:
                orow = []
                for col in ot:
                    acc = row[0] * col[0]
                    for a, b in zip(row[1:], col[1:]):
                        acc = acc + a * b
                    orow.append(acc)
                out.append(orow)
            return Matrix(self.ring, out)
        return Matrix(self.ring, [[a * o for a in row] for row in self.entries])

    def scale(self, c):
        return Matrix(self.ring, [[a * c for a in row] for row in self.entries])

    def __pow__(self, n):
        if not self.is_square():
            raise MatrixError("power of a non-square matrix")
        acc = Matrix.identity(self.ring, self.rows)
        b = self
        while n:
            if n & 1:
                acc = acc * b
            b = b * b
            n >>= 1
        return acc

    def transpose(self):
        return Matrix(self.ring, list(zip(*self.entries)) if self.rows else [])

    def direct_sum(self, o):
        n, m = self.rows, o.rows
        z = self.ring.zero()
        out = []
        for i in range(n):
            out.append(list(self.entries[i]) + [z] * o.cols)
        for i in range(m):
            out.append([z] * self.cols + list(o.entries[i]))
        return Matrix(self.ring, out)

    def is_zero(self):
        return all(a.is_zero() for row in self.entries for a in row)

    def __eq__(self, o):
        return isinstance(o, Matrix) and self.ring == o.ring and self.entries == o.entries

    def __hash__(self):
        return hash((self.entries, self.ring))

    def __repr__(self):
        if self.rows == 0:
            return "[0x0]"
        body = "; ".join(" ".join(str(a) for a in row) for row in self.entries)
        return f"[{body}]"

    # -- elimination over a field ---------------------------------------------

    def _echelon(self, augment=None):
        """Row echelon form; returns (rows, pivot column list, augmented rows)."""
        work = [list(r) for r in self.entries]
        aug = [list(r) for r in augment.entries] if augment is not None else None
        pivots = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if not work[i][c].is_zero()), None)
            if piv is None:
                continue
            work[r], work[piv] = work[piv], work[r]
            if aug is not None:
                aug[r], aug[piv] = aug[piv], aug[r]
            inv = work[r][c].inverse()
            work[r] = [v * inv for v in work[r]]
            if aug is not None:
                aug[r] = [v * inv for v in aug[r]]
            for i in range(self.rows):
                if i != r and not work[i][c].is_zero():
                    f = work[i][c]
                    work[i] = [v - f * w for v, w in zip(work[i], work[r])]
                    if aug is not None:
                        aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return work, pivots, aug

    def rank(self):
        _, pivots, _ = self._echelon()
        return len(pivots)

    def kernel_basis(self):
        """Columns spanning the right kernel."""
        work, pivots, _ = self._echelon()
        z, o = self.ring.zero(), self.ring.one()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            vec = [z] * self.cols
            vec[fc] = o
            for r, pc in enumerate(pivots):
                vec[pc] = -work[r][fc]
            basis.append(vec)
        return [Matrix(self.ring, [[v] for v in vec]) for vec in basis]

    def solve(self, b):
        """One solution of self * x = b (b a column matrix), or None."""
        work, pivots, aug = self._echelon(augment=b)
        z = self.ring.zero()
        for i in range(len(pivots), self.rows):
            if any(not v.is_zero() for v in aug[i]):
                return None
        x = [[z] * b.cols for _ in range(self.cols)]
        for r, pc in enumerate(pivots):
            x[pc] = aug[r]
        return Matrix(self.ring, x)

    def inverse(self):
        if not self.is_square():
            raise NotInvertible("non-square")
        if isinstance(self.ring, QuotientRing) and not self.ring.is_field:
            return self._inverse_local()
        n = self.rows
        work, pivots, aug = self._echelon(augment=Matrix.identity(self.ring, n))
        if len(pivots) != n:
            raise NotInvertible("singular matrix")
        return Matrix(self.ring, aug)

    def _inverse_local(self):
        """Gauss-Jordan with unit pivots; valid over a local ring."""
        n = self.rows
        work = [list(r) for r in self.entries]
        aug = [list(r) for r in Matrix.identity(self.ring, n).entries]
        for c in range(n):
            piv = next((i for i in range(c, n) if work[i][c].is_unit()), None)
            if piv is None:
                raise NotInvertible("no unit pivot; matrix not invertible over local ring")
            work[c], work[piv] = work[piv], work[c]
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = work[c][c].inverse()
            work[c] = [v * inv for v in work[c]]
            aug[c] = [v * inv for v in aug[c]]
            for i in range(n):
                if i != c and not work[i][c].is_zero():
                    f = work[i][c]
                    work[i] = [v - f * w for v, w in zip(work[i], work[c])]
                    aug[i] = [v - f * w for v, w in zip(aug[i], aug[c])]
        return Matrix(self.ring, aug)

    def det(self):
        if not self.is_square():
            raise MatrixError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return self.ring.one()
        work = [list(r) for r in self.entries]
        det = self.ring.one()
        for c in range(n):
            piv = next((i for i in range(c, n) if not work[i][c].is_zero()), None)
            if piv is None:
                return self.ring.zero()
            if piv != c:
                work[c], work[piv] = work[piv], work[c]
                det = -det
            det = det * work[c][c]
            inv = work[c][c].inverse()
            for i in range(c + 1, n):
                if not work[i][c].is_zero():
                    f = work[i][c] * inv
                    work[i] = [v - f * w for v, w in zip(work[i], work[c])]
        return det

    def column(self, j):
        return Matrix(self.ring, [[self.entries[i][j]] for i in range(self.rows)])

    @staticmethod
    def from_columns(ring, cols):
        rows = len(cols[0].entries) if cols else 0
        return Matrix(ring, [[c.entries[i][0] for c in cols] for i in range(rows)])


def direct_sum(ring, blocks):
    out = Matrix.zero(ring, 0, 0)
    for b in blocks:
        out = out.direct_sum(b)
    return out


def companion(r):
    """Companion matrix: subdiagonal ones, last column the negated low
    coefficients; C(1) is the 0x0 matrix."""
    if r.is_zero() or not r.is_monic():
        raise NotMonic("companion matrix needs a monic polynomial")
    field = r.field
    n = r.degree()
    if n == 0:
        return Matrix.zero(field, 0, 0)
    z = field.zero()
    o = field.one()
    rows = []
    for i in range(n):
        row = [z] * n
        if i > 0:
            row[i - 1] = o
        row[n - 1] = -r.coeff(i)
        rows.append(row)
    return Matrix(field, rows)


def evaluate_poly_at_matrix(r, M):
    """Horner evaluation; lifts base-field coefficients into a quotient ring."""
    if not M.is_square():
        raise MatrixError("polynomial of a non-square matrix")
    if isinstance(M.ring, QuotientRing) and r.field == M.ring.base:
        r = embed_poly(r, M.ring)
    if r.field != M.ring:
        raise MatrixError("coefficient field does not match the matrix ring")
    n = M.rows
    acc = Matrix.zero(M.ring, n, n)
    for c in reversed(r.coeffs):
        acc = acc * M + Matrix.identity(M.ring, n).scale(c)
    return acc


def min_poly(M):
    """Minimal polynomial by iterated Krylov closure (lcm of the local
    annihilators of the standard basis vectors)."""
    if not M.is_square():
        raise MatrixError("minimal polynomial of a non-square matrix")
    field = M.ring
    n = M.rows
    if n == 0:
        return Poly.one(field)
    acc = Poly.one(field)
    for start in range(n):
        e = Matrix.zero(field, n, 1)
        rows = [[field.zero()] * 1 for _ in range(n)]
        rows[start][0] = field.one()
        e = Matrix(field, rows)
        seq = [e]
        while True:
            nxt = M * seq[-1]
            stacked = Matrix.from_columns(field, seq)
            sol = stacked.solve(nxt)
            if sol is not None:
                coeffs = [-sol.entries[i][0] for i in range(len(seq))] + [field.one()]
                local = Poly(field, coeffs)
                acc = poly_lcm(acc, local)
                break
            seq.append(nxt)
        if acc.degree() == n:
            break
    return acc.monic()


def restrict_scalars(M):
    """Reinterpret a matrix over F[t]/(r^n) as a block matrix over F."""
    ring = M.ring
    if not isinstance(ring, QuotientRing):
        raise MatrixError("restrict_scalars needs a quotient-ring matrix")
    d = ring.size
    base = ring.base
    out = [[base.zero()] * (M.cols * d) for _ in range(M.rows * d)]
    for i in range(M.rows):
        for j in range(M.cols):
            cols = ring.regular_representation_columns(M.entries[i][j])
            for jj in range(d):
                for ii in range(d):
                    out[i * d + ii][j * d + jj] = cols[jj][ii]
    return Matrix(base, out)


def lift_matrix(M, ring):
    """Entrywise embedding of a base-field matrix into a quotient ring."""
    return Matrix(ring, [[ring.embed(a) for a in row] for row in M.entries])
