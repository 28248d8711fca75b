"""Exact base fields: F_p, Q, and the rational function field F_p(s).

Every element is immutable, canonical (equal values compare and hash equal)
and carries a reference to its field. No floating point anywhere.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


class FieldError(Exception):
    pass


class ZeroDivisionInField(FieldError):
    pass


# ---------------------------------------------------------------------------
# dense polynomials over F_p as int tuples, low-to-high; internal helpers for
# the rational function field only (the public Poly class is generic and
# lives in poly.py)


def _pp_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _pp_add(a, b, p):
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return _pp_trim([(x + y) % p for x, y in zip(a, b)])


def _pp_neg(a, p):
    return tuple((-x) % p for x in a)


def _pp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pp_trim(out)


def _pp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionInField("polynomial division by zero")
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], p - 2, p)
    for i in range(len(a) - len(b), -1, -1):
        c = (a[i + len(b) - 1] * inv_lead) % p
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    return _pp_trim(q), _pp_trim(a)


def _pp_gcd(a, b, p):
    while b:
        a, b = b, _pp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple((x * inv) % p for x in a)
    return a


def _pp_str(c):
    if not c:
        return "0"
    parts = []
    for i in range(len(c) - 1, -1, -1):
        k = c[i]
        if k == 0:
            continue
        if i == 0:
            parts.append(str(k))
        elif i == 1:
            parts.append("s" if k == 1 else f"{k}*s")
        else:
            parts.append(f"s^{i}" if k == 1 else f"{k}*s^{i}")
    return "+".join(parts)


# ---------------------------------------------------------------------------


class PrimeFieldElement:
    __slots__ = ("v", "field")

    def __init__(self, v, field):
        self.v = v
        self.field = field

    def __add__(self, o):
        return PrimeFieldElement((self.v + o.v) % self.field.p, self.field)

    def __sub__(self, o):
        return PrimeFieldElement((self.v - o.v) % self.field.p, self.field)

    def __neg__(self):
        return PrimeFieldElement((-self.v) % self.field.p, self.field)

    def __mul__(self, o):
        return PrimeFieldElement((self.v * o.v) % self.field.p, self.field)

    def __truediv__(self, o):
        return self * o.inverse()

    def __pow__(self, n):
        return PrimeFieldElement(pow(self.v, n, self.field.p), self.field)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionInField("inverse of 0 in F_%d" % self.field.p)
        return PrimeFieldElement(pow(self.v, self.field.p - 2, self.field.p), self.field)

    def is_zero(self):
        return self.v == 0

    def __eq__(self, o):
        return isinstance(o, PrimeFieldElement) and self.v == o.v and self.field.p == o.field.p

    def __hash__(self):
        return hash((self.v, self.field.p))

    def __repr__(self):
        return str(self.v)


class PrimeField:
    """F_p for a prime p >= 2."""

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.is_finite = True

    def zero(self):
        return PrimeFieldElement(0, self)

    def one(self):
        return PrimeFieldElement(1, self)

    def from_int(self, n):
        return PrimeFieldElement(n % self.p, self)

    def order(self):
        return self.p

    def elements(self):
        return (PrimeFieldElement(v, self) for v in range(self.p))

    def random_element(self, rng):
        return PrimeFieldElement(rng.randrange(self.p), self)

    def __eq__(self, o):
        return isinstance(o, PrimeField) and o.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"


class RationalElement:
    __slots__ = ("v", "field")

    def __init__(self, v, field):
        self.v = v  # Fraction, already canonical
        self.field = field

    def __add__(self, o):
        return RationalElement(self.v + o.v, self.field)

    def __sub__(self, o):
        return RationalElement(self.v - o.v, self.field)

    def __neg__(self):
        return RationalElement(-self.v, self.field)

    def __mul__(self, o):
        return RationalElement(self.v * o.v, self.field)

    def __truediv__(self, o):
        return self * o.inverse()

    def __pow__(self, n):
        return RationalElement(self.v**n, self.field)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionInField("inverse of 0 in Q")
        return RationalElement(1 / self.v, self.field)

    def is_zero(self):
        return self.v == 0

    def __eq__(self, o):
        return isinstance(o, RationalElement) and self.v == o.v

    def __hash__(self):
        return hash(("Q", self.v))

    def __repr__(self):
        return str(self.v)


class RationalField:
    characteristic = 0
    is_finite = False

    def zero(self):
        return RationalElement(Fraction(0), self)

    def one(self):
        return RationalElement(Fraction(1), self)

    def from_int(self, n):
        return RationalElement(Fraction(n), self)

    def from_fraction(self, num, den=1):
        return RationalElement(Fraction(num, den), self)

    def random_element(self, rng, size=6):
        return RationalElement(Fraction(rng.randint(-size, size), rng.randint(1, size)), self)

    def __eq__(self, o):
        return isinstance(o, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class RationalFunctionElement:
    """Reduced fraction num/den of polynomials in s over F_p, den monic."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den, field):
        self.num = num
        self.den = den
        self.field = field

    @staticmethod
    def _make(num, den, field):
        p = field.p
        if not den:
            raise ZeroDivisionInField("zero denominator in F_p(s)")
        if not num:
            return RationalFunctionElement((), (1,), field)
        g = _pp_gcd(num, den, p)
        if len(g) > 1 or g[0] != 1:
            num = _pp_divmod(num, g, p)[0]
            den = _pp_divmod(den, g, p)[0]
        lead = den[-1]
        if lead != 1:
            inv = pow(lead, p - 2, p)
            num = tuple((x * inv) % p for x in num)
            den = tuple((x * inv) % p for x in den)
        return RationalFunctionElement(num, den, field)

    def __add__(self, o):
        p = self.field.p
        num = _pp_add(_pp_mul(self.num, o.den, p), _pp_mul(o.num, self.den, p), p)
        return self._make(num, _pp_mul(self.den, o.den, p), self.field)

    def __sub__(self, o):
        return self + (-o)

    def __neg__(self):
        return RationalFunctionElement(_pp_neg(self.num, self.field.p), self.den, self.field)

    def __mul__(self, o):
        p = self.field.p
        return self._make(_pp_mul(self.num, o.num, p), _pp_mul(self.den, o.den, p), self.field)

    def __truediv__(self, o):
        return self * o.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        acc, b = self.field.one(), self
        while n:
            if n & 1:
                acc = acc * b
            b = b * b
            n >>= 1
        return acc

    def inverse(self):
        if not self.num:
            raise ZeroDivisionInField("inverse of 0 in F_p(s)")
        return self._make(self.den, self.num, self.field)

    def is_zero(self):
        return not self.num

    def height(self):
        """Max degree of numerator and denominator; search-bound measure."""
        return max(len(self.num) - 1, len(self.den) - 1, 0)

    def __eq__(self, o):
        return (
            isinstance(o, RationalFunctionElement)
            and self.num == o.num
            and self.den == o.den
            and self.field.p == o.field.p
        )

    def __hash__(self):
        return hash((self.num, self.den, self.field.p))

    def __repr__(self):
        if self.den == (1,):
            return _pp_str(self.num)
        return f"({_pp_str(self.num)})/({_pp_str(self.den)})"


class RationalFunctionField:
    """F_p(s), stored as reduced fractions of dense polynomials in s."""

    is_finite = False

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def zero(self):
        return RationalFunctionElement((), (1,), self)

    def one(self):
        return RationalFunctionElement((1,), (1,), self)

    def from_int(self, n):
        n %= self.p
        return RationalFunctionElement((n,) if n else (), (1,), self)

    def s(self):
        return RationalFunctionElement((0, 1), (1,), self)

    def from_coeffs(self, num, den=(1,)):
        num = _pp_trim([c % self.p for c in num])
        den = _pp_trim([c % self.p for c in den])
        return RationalFunctionElement._make(num, den, self)

    def polynomials(self, max_degree):
        """All elements with polynomial form (den = 1) and degree <= max_degree."""
        for c in itertools.product(range(self.p), repeat=max_degree + 1):
            yield RationalFunctionElement(_pp_trim(c), (1,), self)

    def random_element(self, rng, size=2):
        num = [rng.randrange(self.p) for _ in range(rng.randint(1, size + 1))]
        den = [rng.randrange(self.p) for _ in range(rng.randint(1, size + 1))]
        if not _pp_trim(den):
            den = [1]
        return RationalFunctionElement._make(_pp_trim(num), _pp_trim(den), self)

    def __eq__(self, o):
        return isinstance(o, RationalFunctionField) and o.p == self.p

    def __hash__(self):
        return hash(("Fps", self.p))

    def __repr__(self):
        return f"F{self.p}(s)"
