"""Quotient rings F[t]/(r^n) for r monic irreducible over an exact field.

With n = 1 these double as extension fields (towers allowed: the base may
itself be a quotient-ring field). Elements are canonical coefficient tuples
of length deg(r^n), so equality and hashing are structural.
"""

from __future__ import annotations

from .fields import FieldError, ZeroDivisionInField
from .poly import (
    Factorization,
    NotIrreducible,
    NotMonic,
    Poly,
    factor,
    xgcd,
)


class QuotientRingElement:
    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field):
        self.coeffs = coeffs  # tuple over the base field, padded to full length
        self.field = field

    def _poly(self):
        return Poly(self.field.base, self.coeffs)

    def __add__(self, o):
        return QuotientRingElement(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)), self.field)

    def __sub__(self, o):
        return QuotientRingElement(tuple(a - b for a, b in zip(self.coeffs, o.coeffs)), self.field)

    def __neg__(self):
        return QuotientRingElement(tuple(-a for a in self.coeffs), self.field)

    def __mul__(self, o):
        ring = self.field
        a, b = self.coeffs, o.coeffs
        size = ring.size
        zero = ring.base.zero()
        conv = [zero] * (2 * size - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    conv[i + j] = conv[i + j] + x * y
        out = list(conv[:size])
        tails = ring._monomial_tails()
        for k in range(size, 2 * size - 1):
            c = conv[k]
            if c.is_zero():
                continue
            tail = tails[k - size]
            for idx in range(size):
                t = tail[idx]
                if not t.is_zero():
                    out[idx] = out[idx] + c * t
        return QuotientRingElement(tuple(out), ring)

    def __pow__(self, n):
        acc, b = self.field.one(), self
        while n:
            if n & 1:
                acc = acc * b
            b = b * b
            n >>= 1
        return acc

    def __truediv__(self, o):
        return self * o.inverse()

    def inverse(self):
        g, u, _ = xgcd(self._poly(), self.field.modulus)
        if g.is_zero() or g.degree() != 0:
            raise ZeroDivisionInField("element is not a unit in the quotient ring")
        return self.field.from_poly(u * Poly.constant(g.lead().inverse()))

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def is_unit(self):
        return not self.field.reduce(self).is_zero()

    def __eq__(self, o):
        return (
            isinstance(o, QuotientRingElement)
            and self.field == o.field
            and self.coeffs == o.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, "QR"))

    def __repr__(self):
        return repr(self._poly())


class QuotientRing:
    """F[t]/(root^exponent); a field exactly when exponent == 1."""

    def __init__(self, base, root, exponent, check_irreducible=True):
        if root.is_zero() or not root.is_monic() or root.degree() < 1:
            raise NotMonic("modulus root must be monic of degree >= 1")
        if exponent < 1:
            raise FieldError("exponent must be positive")
        if check_irreducible and root.degree() > 1:
            self._check_irreducible(base, root)
        self.base = base
        self.root = root
        self.exponent = exponent
        self.modulus = root**exponent
        self.size = self.modulus.degree()
        self.characteristic = base.characteristic
        self.is_finite = getattr(base, "is_finite", False)

    @staticmethod
    def _check_irreducible(base, root):
        try:
            fz = factor(root)
        except FieldError:
            # extension-field base: only quadratic moduli are used there
            if root.degree() == 2:
                from .roots import quadratic_roots

                if quadratic_roots(root):
                    raise NotIrreducible(f"{root} has a root in the base field")
                return
            raise
        if not fz.is_proven():
            raise NotIrreducible("irreducibility of the modulus could not be certified")
        if len(fz.factors) != 1 or fz.factors[0][1] != 1:
            raise NotIrreducible(f"{root} is reducible")

    @property
    def is_field(self):
        return self.exponent == 1

    def zero(self):
        z = self.base.zero()
        return QuotientRingElement((z,) * self.size, self)

    def one(self):
        z = self.base.zero()
        return QuotientRingElement((self.base.one(),) + (z,) * (self.size - 1), self)

    def from_int(self, n):
        z = self.base.zero()
        return QuotientRingElement((self.base.from_int(n),) + (z,) * (self.size - 1), self)

    def embed(self, c):
        """Constant embedding of a base-field element."""
        z = self.base.zero()
        return QuotientRingElement((c,) + (z,) * (self.size - 1), self)

    def from_poly(self, p):
        r = p % self.modulus
        z = self.base.zero()
        c = r.coeffs + (z,) * (self.size - len(r.coeffs))
        return QuotientRingElement(c, self)

    def generator(self):
        """The class of t."""
        return self.from_poly(Poly.x(self.base))

    def order(self):
        return self.base.order() ** self.size

    def elements(self):
        import itertools

        for c in itertools.product(list(self.base.elements()), repeat=self.size):
            yield QuotientRingElement(tuple(c), self)

    def random_element(self, rng):
        return QuotientRingElement(
            tuple(self.base.random_element(rng) for _ in range(self.size)), self
        )

    def _monomial_tails(self):
        """Reductions of t^(size), ..., t^(2 size - 2) modulo the modulus."""
        if not hasattr(self, "_tails"):
            tails = []
            t = Poly.x(self.base)
            z = self.base.zero()
            cur = (t**self.size) % self.modulus
            for _ in range(self.size - 1):
                tails.append(cur.coeffs + (z,) * (self.size - len(cur.coeffs)))
                cur = (cur * t) % self.modulus
            self._tails = tails
        return self._tails

    def residue_field(self):
        return QuotientRing(self.base, self.root, 1, check_irreducible=False)

    def reduce(self, x):
        """Ring homomorphism onto the residue field."""
        res = self.residue_field()
        return res.from_poly(x._poly())

    def lift(self, y):
        """The representative of degree < deg(root); a section of reduce."""
        z = self.base.zero()
        c = y.coeffs + (z,) * (self.size - len(y.coeffs))
        return QuotientRingElement(tuple(c), self)

    def root_valuation(self, x):
        """Largest k <= exponent with root^k dividing x (exponent for x = 0)."""
        p = x._poly()
        if p.is_zero():
            return self.exponent
        return min(p.valuation(self.root), self.exponent)

    def divide_by_root_power(self, x, k):
        """Exact division by root^k; raises if not divisible."""
        p = x._poly()
        q, rem = divmod(p, self.root**k)
        if not rem.is_zero():
            raise FieldError("element is not divisible by the requested root power")
        return self.from_poly(q)

    def regular_representation_columns(self, x):
        """Columns (coefficient tuples) of multiplication-by-x in the power basis."""
        cols = []
        t = Poly.x(self.base)
        cur = x._poly()
        for _ in range(self.size):
            red = cur % self.modulus
            z = self.base.zero()
            cols.append(red.coeffs + (z,) * (self.size - len(red.coeffs)))
            cur = cur * t
        return cols

    def __eq__(self, o):
        return (
            isinstance(o, QuotientRing)
            and self.base == o.base
            and self.root == o.root
            and self.exponent == o.exponent
        )

    def __hash__(self):
        return hash(("QRing", self.base, self.root, self.exponent))

    def __repr__(self):
        if self.exponent == 1:
            return f"{self.base}[t]/({self.root})"
        return f"{self.base}[t]/(({self.root})^{self.exponent})"


def make_quotient_ring(base, root, exponent):
    """Public constructor with full precondition checks."""
    return QuotientRing(base, root, exponent)


def is_unit(x):
    """Unit test in a quotient ring; returns (True, inverse) or (False, None)."""
    if x.is_unit():
        return True, x.inverse()
    return False, None


def embed_poly(p, ring):
    """Map a polynomial over the base into one over the (quotient) ring."""
    return Poly(ring, tuple(ring.embed(c) for c in p.coeffs))
