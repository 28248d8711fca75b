"""Univariate polynomials over an exact field.

Coefficients are stored low-to-high with no trailing zeros. The zero
polynomial has an empty coefficient tuple and degree() raises; use is_zero().
"""

from __future__ import annotations

import itertools
import math
import random

from .fields import FieldError, RationalField, RationalFunctionField


class PolyError(Exception):
    pass


class NotMonic(PolyError):
    pass


class ZeroPolynomial(PolyError):
    pass


class NotIrreducible(PolyError):
    pass


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        while coeffs and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        self.field = field
        self.coeffs = tuple(coeffs)

    @staticmethod
    def from_ints(field, ints):
        return Poly(field, [field.from_int(n) for n in ints])

    @staticmethod
    def zero(field):
        return Poly(field, ())

    @staticmethod
    def one(field):
        return Poly(field, (field.one(),))

    @staticmethod
    def x(field):
        return Poly(field, (field.zero(), field.one()))

    @staticmethod
    def constant(c):
        return Poly(c.field, (c,))

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        if not self.coeffs:
            raise ZeroPolynomial("degree of the zero polynomial")
        return len(self.coeffs) - 1

    def lead(self):
        if not self.coeffs:
            raise ZeroPolynomial("leading coefficient of the zero polynomial")
        return self.coeffs[-1]

    def coeff(self, i):
        if i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one()

    def monic(self):
        if self.is_zero():
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        if self.is_monic():
            return self
        inv = self.lead().inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def __add__(self, o):
        n = max(len(self.coeffs), len(o.coeffs))
        z = self.field.zero()
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = o.coeffs + (z,) * (n - len(o.coeffs))
        return Poly(self.field, [x + y for x, y in zip(a, b)])

    def __sub__(self, o):
        return self + (-o)

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, o):
        if isinstance(o, Poly):
            if not self.coeffs or not o.coeffs:
                return Poly(self.field, ())
            z = self.field.zero()
            out = [z] * (len(self.coeffs) + len(o.coeffs) - 1)
            for i, x in enumerate(self.coeffs):
                if x.is_zero():
                    continue
                for j, y in enumerate(o.coeffs):
                    out[i + j] = out[i + j] + x * y
            return Poly(self.field, out)
        return Poly(self.field, [c * o for c in self.coeffs])  # scalar

    def __pow__(self, n):
        r = Poly.one(self.field)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __divmod__(self, o):
        if o.is_zero():
            raise ZeroPolynomial("polynomial division by zero")
        rem = list(self.coeffs)
        db, z = len(o.coeffs) - 1, self.field.zero()
        if len(rem) <= db:
            return Poly(self.field, ()), self
        q = [z] * (len(rem) - db)
        inv = o.lead().inverse()
        for i in range(len(rem) - db - 1, -1, -1):
            c = rem[i + db] * inv
            if not c.is_zero():
                q[i] = c
                for j, y in enumerate(o.coeffs):
                    rem[i + j] = rem[i + j] - c * y
        return Poly(self.field, q), Poly(self.field, rem)

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def divides(self, o):
        return (o % self).is_zero()

    def __eq__(self, o):
        return isinstance(o, Poly) and self.field == o.field and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.field))

    def __call__(self, x):
        """Horner evaluation at a field (or compatible ring) element."""
        if not self.coeffs:
            return x.field.zero() if hasattr(x, "field") else x * 0
        acc = self.coeffs[-1]
        if acc.field != getattr(x, "field", acc.field):
            raise PolyError("evaluation point lives in a different field")
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, g):
        """self(g(t)) by Horner over polynomials."""
        acc = Poly(self.field, ())
        for c in reversed(self.coeffs):
            acc = acc * g + Poly.constant(c)
        return acc

    def derivative(self):
        return hasse_derivative(self, 1)

    def valuation(self, d):
        """Multiplicity of the monic divisor d in self."""
        if self.is_zero():
            raise ZeroPolynomial("valuation of the zero polynomial")
        v, f = 0, self
        while True:
            q, r = divmod(f, d)
            if not r.is_zero():
                return v
            v, f = v + 1, q
            if f.is_zero():
                return v

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            cs = str(c)
            if i == 0:
                parts.append(cs)
            else:
                var = "t" if i == 1 else f"t^{i}"
                parts.append(var if cs == "1" else f"({cs})*{var}")
        return " + ".join(parts)


def gcd(a, b):
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def xgcd(a, b):
    """(g, u, v) with u*a + v*b = g, g monic (or zero)."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(f), Poly.zero(f)
    t0, t1 = Poly.zero(f), Poly.one(f)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = r0.lead().inverse()
    scale = Poly.constant(inv)
    return r0.monic(), s0 * scale, t0 * scale


def lcm(a, b):
    if a.is_zero() or b.is_zero():
        return Poly.zero(a.field)
    return ((a * b) // gcd(a, b)).monic()


def trace_of(p):
    """Minus the subleading coefficient of a monic polynomial (sum of roots)."""
    if p.is_zero() or not p.is_monic():
        raise NotMonic("trace is defined for monic polynomials only")
    if p.degree() < 1:
        raise NotMonic("trace needs degree >= 1")
    return -p.coeff(p.degree() - 1)


def resultant(a, b):
    """res(a, b) over the coefficient field, by the Euclidean remainder chain."""
    if a.is_zero() or b.is_zero():
        raise ZeroPolynomial("resultant of a zero polynomial")
    f = a.field
    res = f.one()
    while True:
        da = a.degree()
        db = b.degree()
        if db == 0:
            return res * b.lead() ** da
        r = a % b
        if r.is_zero():
            return f.zero() if da > 0 or db > 0 else res
        dr = r.degree()
        sign = f.one() if (da * db) % 2 == 0 else -f.one()
        res = res * sign * b.lead() ** (da - dr)
        a, b = b, r


def translate(p, d):
    """p(t + d), by repeated synthetic division; valid in any characteristic."""
    if p.is_zero():
        return p
    coeffs = list(p.coeffs)
    n = len(coeffs)
    out = []
    for _ in range(n):
        # divide by (t - (-d)) i.e. evaluate remainder at t = -d ... do shift
        rem = coeffs[-1]
        newc = [coeffs[-1]]
        for c in reversed(coeffs[:-1]):
            rem = rem * d + c
            newc.append(rem)
        newc.reverse()
        out.append(newc[0])
        coeffs = newc[1:]
        if not coeffs:
            break
    return Poly(p.field, out)


def homothety(p, d):
    """d^-2 * p(d*t) for a monic quadratic p; rescales the roots by 1/d."""
    if p.is_zero() or p.degree() != 2 or not p.is_monic():
        raise NotMonic("homothety is defined for monic quadratics")
    if d.is_zero():
        raise PolyError("homothety ratio must be nonzero")
    dinv = d.inverse()
    c0, c1, _ = p.coeff(0), p.coeff(1), p.coeff(2)
    return Poly(p.field, (c0 * dinv * dinv, c1 * dinv, p.field.one()))


def joukowski(r, delta):
    """t^deg(r) * r(t + delta/t): pushes each root z to the pair w, delta/w
    with w + delta/w = z. Monic of degree 2*deg(r) with nonzero constant."""
    if r.is_zero() or not r.is_monic():
        raise NotMonic("transform needs a monic polynomial")
    if delta.is_zero():
        raise PolyError("delta must be nonzero")
    f = r.field
    d = r.degree()
    t = Poly.x(f)
    core = t * t + Poly.constant(delta)  # t^2 + delta
    out = Poly.zero(f)
    for k in range(d + 1):
        c = r.coeff(k)
        if c.is_zero():
            continue
        out = out + core**k * t ** (d - k) * c
    return out


def hasse_derivative(r, n):
    """Coefficient of x^n in r(t + x); n! times it is the n-th derivative."""
    if r.is_zero() or n > (len(r.coeffs) - 1):
        return Poly.zero(r.field)
    f = r.field
    out = []
    for k in range(n, len(r.coeffs)):
        out.append(r.coeffs[k] * f.from_int(math.comb(k, n)))
    return Poly(f, out)


def reciprocal_decompose(R, m, delta):
    """Unique (P, Q), deg P <= m, deg Q <= m-1, with
    R = t^m * P(t + delta/t) + t^(m-1) * Q(t + delta/t); deg R <= 2m required."""
    if delta.is_zero():
        raise PolyError("delta must be nonzero")
    f = R.field
    if not R.is_zero() and R.degree() > 2 * m:
        raise PolyError("degree exceeds 2m")
    t = Poly.x(f)
    core = t * t + Poly.constant(delta)
    basis = []
    for j in range(m + 1):  # t^(m-j) (t^2+delta)^j, degree m+j
        basis.append(core**j * t ** (m - j))
    for j in range(m):  # t^(m-1-j) (t^2+delta)^j, degree m-1+j
        basis.append(core**j * t ** (m - 1 - j))
    n = 2 * m + 1
    # solve sum_i c_i basis_i = R coefficientwise (n unknowns, n equations)
    rows = [[basis[i].coeff(k) for i in range(n)] + [R.coeff(k)] for k in range(n)]
    sol = _solve_dense(rows, f)
    P = Poly(f, sol[: m + 1])
    Q = Poly(f, sol[m + 1 :])
    return P, Q


def _solve_dense(rows, f):
    """Tiny Gaussian solver for reciprocal_decompose; square system, exact."""
    n = len(rows)
    for col in range(n):
        piv = next((r for r in range(col, n) if not rows[r][col].is_zero()), None)
        if piv is None:
            raise PolyError("decomposition system is singular (bug)")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            if r != col and not rows[r][col].is_zero():
                c = rows[r][col]
                rows[r] = [v - c * w for v, w in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def decompose_in_quadratic(f_poly, w):
    """h with h(w) = f_poly for a monic quadratic w, or None."""
    if f_poly.is_zero():
        return Poly.zero(f_poly.field)
    fld = f_poly.field
    acc = []
    cur = f_poly
    while not cur.is_zero():
        d = cur.degree()
        if d % 2:
            return None
        k = d // 2
        c = cur.lead()
        acc.append((k, c))
        cur = cur - w**k * c
        if not cur.is_zero() and cur.degree() >= d:
            return None
    top = acc[0][0]
    coeffs = [fld.zero()] * (top + 1)
    for k, c in acc:
        coeffs[k] = c
    return Poly(fld, coeffs)


def root_multiplicity(r):
    """Multiplicity of each root of an irreducible monic polynomial in its
    splitting field: 1 if separable, else the inseparability power p^e."""
    if r.is_zero() or not r.is_monic() or r.degree() < 1:
        raise NotMonic("need a monic nonconstant polynomial")
    p = r.field.characteristic
    if gcd(r, hasse_derivative(r, 1)) == Poly.one(r.field) or r.degree() == 0:
        return 1
    if p == 0:
        raise NotIrreducible("inseparable polynomial in characteristic 0 is not irreducible")
    e = 0
    while not r.is_zero() and r.degree() > 0 and hasse_derivative(r, 1).is_zero():
        r = Poly(r.field, [r.coeff(i) for i in range(0, r.degree() + 1, p)])
        e += 1
    if not gcd(r, hasse_derivative(r, 1)) == Poly.one(r.field):
        raise NotIrreducible("input was not irreducible")
    return p**e


# ---------------------------------------------------------------------------
# factorization


PROVEN = "Proven"
BOUNDED_SEARCH_INCONCLUSIVE = "BoundedSearchInconclusive"

_DETERMINISTIC_CANDIDATE_CAP = 10**6
_default_seed = 0


def set_default_seed(seed):
    """Seed for the randomized equal-degree splitting fallback (only
    reachable when the deterministic candidate cap is exceeded)."""
    global _default_seed
    _default_seed = seed


class Factorization:
    """unit * prod(factor_i ^ mult_i); factors monic, sorted deterministically."""

    def __init__(self, unit, factors, certainty=PROVEN):
        self.unit = unit
        self.factors = sorted(factors, key=lambda fm: _poly_sort_key(fm[0]))
        self.certainty = certainty

    def reassemble(self):
        out = Poly.constant(self.unit)
        for f, m in self.factors:
            out = out * f**m
        return out

    def roots(self):
        """Roots in the base field, with multiplicity (degree-1 factors)."""
        return [(-f.coeff(0), m) for f, m in self.factors if f.degree() == 1]

    def is_proven(self):
        return self.certainty == PROVEN

    def __repr__(self):
        inner = " * ".join(f"({f})^{m}" for f, m in self.factors)
        return f"{self.unit} * {inner} [{self.certainty}]"


def _poly_sort_key(p):
    return (len(p.coeffs),) + tuple(repr(c) for c in p.coeffs)


def monic_polys(field, degree):
    """All monic polynomials of exact degree over a finite field."""
    one = field.one()
    elems = list(field.elements())
    for tail in itertools.product(elems, repeat=degree):
        yield Poly(field, tuple(tail) + (one,))


_irreducible_cache = {}


def irreducible_monic_polys(field, degree):
    """Sorted list of monic irreducibles of exact degree over a finite field."""
    key = (field, degree)
    if key in _irreducible_cache:
        return _irreducible_cache[key]
    out = []
    for cand in monic_polys(field, degree):
        if _is_irreducible_finite(cand, field, degree):
            out.append(cand)
    out.sort(key=_poly_sort_key)
    _irreducible_cache[key] = out
    return out


def _is_irreducible_finite(cand, field, degree):
    if degree == 0:
        return False
    for d in range(1, degree // 2 + 1):
        for g in irreducible_monic_polys(field, d):
            if (cand % g).is_zero():
                return False
    return True


def is_irreducible(p):
    f = factor(p)
    if not f.is_proven():
        raise NotIrreducible("irreducibility not decided within search bounds")
    return len(f.factors) == 1 and f.factors[0][1] == 1 and f.factors[0][0].degree() == p.degree()


def factor(p, rng=None, fps_bound=4):
    """Complete factorization into monic irreducibles with a unit.

    Finite fields: deterministic trial division for small search spaces,
    seeded Cantor-Zassenhaus above the cap, re-verified by multiplication.
    Q: rational roots plus Kronecker interpolation. F_p(s): bounded search
    over cleared-denominator candidates, with an explicit certainty flag.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    unit = p.lead()
    mp = p.monic()
    field = p.field
    if mp.degree() == 0:
        return Factorization(unit, [])
    if getattr(field, "is_finite", False):
        factors = _factor_finite(mp, field, rng)
        certainty = PROVEN
    elif isinstance(field, RationalField):
        factors = _factor_rationals(mp)
        certainty = PROVEN
    elif isinstance(field, RationalFunctionField):
        factors, certainty = _factor_ratfunc(mp, fps_bound)
    else:
        raise FieldError(f"factorization over {field!r} is not supported")
    fz = Factorization(unit, factors, certainty)
    assert fz.reassemble() == p, "factorization re-verification failed"
    return fz


def _factor_finite(mp, field, rng):
    order = field.order()
    deg = mp.degree()
    if order ** max(1, deg // 2) <= _DETERMINISTIC_CANDIDATE_CAP:
        return _factor_finite_trial(mp, field)
    return _factor_finite_cz(mp, field, rng or random.Random(_default_seed))


def _factor_finite_trial(mp, field):
    out = []
    rem = mp
    d = 1
    while rem.degree() >= 1:
        if d > rem.degree() // 2:
            out.append((rem, 1))
            break
        for g in irreducible_monic_polys(field, d):
            m = 0
            while (rem % g).is_zero():
                rem = rem // g
                m += 1
            if m:
                out.append((g, m))
            if rem.degree() < 1:
                break
        d += 1
    merged = {}
    for g, m in out:
        merged[g] = merged.get(g, 0) + m
    return list(merged.items())


def _frobenius_root(c, field):
    # p-th root in a finite field of order p^m: c ** (p^(m-1))
    p = field.characteristic
    m = 1
    o = field.order()
    while p**m != o:
        m += 1
    e = p ** (m - 1)
    acc = field.one()
    base = c
    while e:
        if e & 1:
            acc = acc * base
        base = base * base
        e >>= 1
    return acc


def _squarefree_finite(mp, field):
    """Map squarefree monic factor -> multiplicity (char p version)."""
    p = field.characteristic
    result = {}

    def add(fac, mult):
        if fac.degree() >= 1:
            result[fac] = result.get(fac, 0) + mult

    def run(f, scale):
        d1 = hasse_derivative(f, 1)
        if d1.is_zero():
            # f = h(t^p) with coefficients replaced by their p-th roots
            h = Poly(field, [_frobenius_root(f.coeff(i), field) for i in range(0, f.degree() + 1, p)])
            run(h, scale * p)
            return
        c = gcd(f, d1)
        w = f // c
        i = 1
        while w.degree() >= 1:
            y = gcd(w, c)
            fac = w // y
            add(fac.monic() if not fac.is_zero() else fac, scale * i)
            w = y
            c = c // y
            i += 1
        if c.degree() >= 1:
            run(c.monic(), scale * p)

    run(mp, 1)
    return result


def _factor_finite_cz(mp, field, rng):
    out = []
    for sqf, mult in _squarefree_finite(mp, field).items():
        for g in _ddf_edf(sqf, field, rng):
            out.append((g, mult))
    merged = {}
    for g, m in out:
        merged[g] = merged.get(g, 0) + m
    return list(merged.items())


def _powmod(base, e, mod):
    acc = Poly.one(base.field)
    b = base % mod
    while e:
        if e & 1:
            acc = (acc * b) % mod
        b = (b * b) % mod
        e >>= 1
    return acc


def _ddf_edf(f, field, rng):
    """Irreducible factors of a squarefree monic f over a finite field."""
    q = field.order()
    out = []
    h = Poly.x(field)
    rem = f
    d = 0
    while rem.degree() > 0:
        d += 1
        if rem.degree() < 2 * d:
            out.append(rem)
            break
        h = _powmod(h, q, rem)
        g = gcd(h - Poly.x(field), rem)
        if g.degree() > 0:
            out.extend(_edf(g, d, field, rng))
            rem = rem // g
            h = h % rem
    return out


def _edf(f, d, field, rng):
    if f.degree() == d:
        return [f]
    q = field.order()
    p = field.characteristic
    n = f.degree()
    while True:
        a = Poly(field, [field.random_element(rng) for _ in range(n)])
        if a.is_zero() or a.degree() == 0:
            continue
        if p == 2:
            m = 1
            o = q
            while 2**m != o:
                m += 1
            g = Poly.zero(field)
            cur = a % f
            for _ in range(d * m):
                g = (g + cur) % f
                cur = (cur * cur) % f
        else:
            g = _powmod(a, (q**d - 1) // 2, f) - Poly.one(field)
        split = gcd(g, f)
        if 0 < (split.degree() if not split.is_zero() else 0) < f.degree():
            return _edf(split, d, field, rng) + _edf(f // split, d, field, rng)


# -- rationals ---------------------------------------------------------------


def _factor_rationals(mp):
    field = mp.field
    out = {}

    # Yun squarefree decomposition (characteristic 0)
    def yun(f):
        parts = []
        fp = hasse_derivative(f, 1)
        a = gcd(f, fp)
        b = f // a
        c = fp // a
        i = 1
        while b.degree() >= 1:
            d = c - hasse_derivative(b, 1)
            g = gcd(b, d)
            if g.degree() >= 1:
                parts.append((g, i))
            b = b // g
            c = d // g
            i += 1
        return parts

    for sqf, mult in yun(mp):
        for g in _factor_sqfree_q(sqf):
            out[g] = out.get(g, 0) + mult
    return list(out.items())


def _to_int_poly(mp):
    """Primitive integer coefficient list of a monic rational polynomial."""
    den = 1
    for c in mp.coeffs:
        den = den * c.v.denominator // math.gcd(den, c.v.denominator)
    ints = [int(c.v * den) for c in mp.coeffs]
    content = 0
    for v in ints:
        content = math.gcd(content, abs(v))
    if content > 1:
        ints = [v // content for v in ints]
    return ints


def _int_divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _factor_sqfree_q(sq):
    """Irreducible monic factors of a squarefree monic rational polynomial."""
    field = sq.field
    if sq.degree() == 1:
        return [sq]
    ints = _to_int_poly(sq)

    # rational roots first
    out = []
    changed = True
    while changed and sq.degree() > 1:
        changed = False
        ints = _to_int_poly(sq)
        lead, const = ints[-1], ints[0]
        if const == 0:
            root = field.zero()
            out.append(Poly.x(field))
            sq = sq // Poly.x(field)
            changed = True
            continue
        for pn in _int_divisors(const):
            done = False
            for qd in _int_divisors(lead):
                for sgn in (1, -1):
                    cand = field.from_fraction(sgn * pn, qd)
                    if sq(cand).is_zero():
                        lin = Poly(field, (-cand, field.one()))
                        out.append(lin)
                        sq = sq // lin
                        changed = done = True
                        break
                if done:
                    break
            if done:
                break
    if sq.degree() == 0:
        return out
    if sq.degree() == 1:
        return out + [sq.monic()]
    return out + _kronecker(sq)


def _kronecker(sq):
    """Kronecker factor search for a squarefree monic rational polynomial
    with no rational roots; desk-scale degrees only."""
    field = sq.field
    n = sq.degree()
    ints = _to_int_poly(sq)

    def int_eval(a):
        acc = 0
        for c in reversed(ints):
            acc = acc * a + c
        return acc

    for d in range(2, n // 2 + 1):
        # choose d+1 evaluation points with the fewest divisors
        pts = []
        a = 0
        while len(pts) < d + 1:
            for cand in (a, -a) if a else (0,):
                v = int_eval(cand)
                if v != 0 and cand not in [p0 for p0, _ in pts]:
                    pts.append((cand, v))
                if len(pts) == d + 1:
                    break
            a += 1
        pts.sort(key=lambda pv: len(_int_divisors(pv[1])))
        pts = pts[: d + 1]
        choices = []
        for _, v in pts:
            divs = _int_divisors(v)
            choices.append([x for dd in divs for x in (dd, -dd)])
        xs = [field.from_int(a0) for a0, _ in pts]
        for combo in itertools.product(*choices):
            cand = _lagrange(xs, [field.from_int(v) for v in combo], field)
            if cand.is_zero() or cand.degree() != d:
                continue
            cand = cand.monic()
            if (sq % cand).is_zero():
                return _factor_sqfree_q(cand) + _factor_sqfree_q(sq // cand)
    return [sq]


def _lagrange(xs, ys, field):
    acc = Poly.zero(field)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        num = Poly.constant(yi)
        den = field.one()
        for j, xj in enumerate(xs):
            if i == j:
                continue
            num = num * Poly(field, (-xj, field.one()))
            den = den * (xi - xj)
        acc = acc + num * Poly.constant(den.inverse())
    return acc


# -- rational function field -------------------------------------------------


def _factor_ratfunc(mp, bound):
    """Bounded-search factorization over F_p(s).

    Monic factors of a monic polynomial with F_p[s] coefficients again have
    F_p[s] coefficients, with each coefficient's s-degree at most the maximal
    s-degree of the input (Gauss valuation); so after rescaling the variable
    to clear denominators the search over polynomial candidates is complete
    whenever it fits under the bound and candidate cap.
    """
    field = mp.field
    inconclusive = False

    def max_den_deg(f):
        return max((len(c.den) - 1 for c in f.coeffs), default=0)

    def factor_rec(f):
        nonlocal inconclusive
        if f.degree() <= 1:
            return {f: 1} if f.degree() == 1 else {}
        d1 = hasse_derivative(f, 1)
        if not d1.is_zero():
            g = gcd(f, d1)
            if 1 <= g.degree() < f.degree():
                out = factor_rec(g)
                for k, v in factor_rec(f // g).items():
                    out[k] = out.get(k, 0) + v
                return out
        if max_den_deg(f) > 0:
            return factor_scaled(f)
        return factor_polycoeff(f)

    def factor_scaled(f):
        # substitute t = u/D, multiply by D^deg: polynomial coefficients
        from .fields import _pp_gcd, _pp_mul, _pp_divmod

        p = field.p
        den = (1,)
        for c in f.coeffs:
            g = _pp_gcd(den, c.den, p)
            den = _pp_mul(_pp_divmod(den, g, p)[0], c.den, p)
        D = field.from_coeffs(den)
        n = f.degree()
        scaled = Poly(field, [f.coeff(i) * D ** (n - i) for i in range(n + 1)])
        out = {}
        for g, m in factor_rec(scaled).items():
            k = g.degree()
            back = Poly(field, [g.coeff(i) * D**i for i in range(k + 1)]).monic()
            out[back] = out.get(back, 0) + m
        return out

    def factor_polycoeff(f):
        nonlocal inconclusive
        p = field.p
        n = f.degree()
        sdeg = max((len(c.num) - 1 for c in f.coeffs), default=0)
        sbound = min(sdeg, bound) if bound is not None else sdeg
        complete = sbound >= sdeg
        for k in range(1, n // 2 + 1):
            count = (p ** (sbound + 1)) ** k
            if count > 2 * 10**5:
                complete = False
                break
            found = _search_poly_factor(f, k, sbound, field)
            if found is not None:
                out = factor_rec(found)
                for kk, v in factor_rec(f // found).items():
                    out[kk] = out.get(kk, 0) + v
                return out
        if not complete:
            inconclusive = True
        return {f: 1}

    factors = factor_rec(mp)
    return list(factors.items()), (BOUNDED_SEARCH_INCONCLUSIVE if inconclusive else PROVEN)


def _search_poly_factor(f, k, sbound, field):
    one = field.one()
    coeff_space = list(field.polynomials(sbound))
    for tail in itertools.product(coeff_space, repeat=k):
        cand = Poly(field, tuple(tail) + (one,))
        if (f % cand).is_zero():
            return cand
    return None
