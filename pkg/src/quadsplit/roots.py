"""Exact square roots and monic-quadratic root finding.

Covers all supported coefficient fields, including quotient-ring field
towers built from degree-2 moduli. Everything returns exact elements or
raises RootUnavailable; nothing is ever approximated.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .fields import (
    PrimeField,
    RationalField,
    RationalFunctionField,
    RationalFunctionElement,
    _pp_divmod,
    _pp_gcd,
    _pp_mul,
    _pp_trim,
)
from .poly import Poly
from .quotient import QuotientRing


class RootUnavailable(Exception):
    """No root exists, or deciding existence is out of scope for the field."""


_BRUTE_ORDER_CAP = 1 << 16


def sqrt_in_field(a):
    """An x with x*x = a, or None when provably absent; RootUnavailable when
    existence cannot be decided for the field."""
    field = a.field
    if a.is_zero():
        return field.zero()
    if isinstance(field, PrimeField):
        return _sqrt_prime(a)
    if isinstance(field, RationalField):
        return _sqrt_rational(a)
    if isinstance(field, RationalFunctionField):
        return _sqrt_ratfunc(a)
    if isinstance(field, QuotientRing) and field.is_field:
        if field.is_finite:
            return _sqrt_finite_ext(a)
        if field.root.degree() == 1:
            inner = sqrt_in_field(a.coeffs[0])
            return None if inner is None else field.embed(inner)
        if field.root.degree() == 2:
            return _sqrt_quadratic_ext(a)
    raise RootUnavailable(f"square roots over {field!r} are not supported")


def _sqrt_prime(a):
    p = a.field.p
    if p == 2:
        return a
    if pow(a.v, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return a.field.from_int(pow(a.v, (p + 1) // 4, p))
    for x in range(p):  # fields here are tiny; no Tonelli-Shanks needed
        if (x * x) % p == a.v:
            return a.field.from_int(x)
    return None


def _sqrt_rational(a):
    num, den = a.v.numerator, a.v.denominator
    if num < 0:
        return None
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return a.field.from_fraction(rn, rd)


def _poly_sqrt_modp(c, p):
    """Square root of an int-tuple polynomial over F_p, or None."""
    if not c:
        return ()
    if (len(c) - 1) % 2:
        return None
    if p == 2:
        if any(c[i] for i in range(1, len(c), 2)):
            return None
        return _pp_trim([c[i] for i in range(0, len(c), 2)])
    # long square root, highest terms first
    n = (len(c) - 1) // 2
    lead = c[-1]
    r = None
    for x in range(p):
        if (x * x) % p == lead:
            r = x
            break
    if r is None:
        return None
    res = [0] * (n + 1)
    res[n] = r
    inv2r = pow(2 * r, p - 2, p)
    for i in range(n - 1, -1, -1):
        # match the coefficient of s^(n+i): c[n+i] = 2 r_n r_i + sum over
        # ordered pairs (j, n+i-j) with i < j < n
        acc = 0
        for j in range(i + 1, n):
            acc = (acc + res[j] * res[n + i - j]) % p
        target = c[n + i] if n + i < len(c) else 0
        res[i] = ((target - acc) * inv2r) % p
    cand = _pp_trim(res)
    if _pp_mul(cand, cand, p) == _pp_trim(c):
        return cand
    return None


def _sqrt_ratfunc(a):
    p = a.field.p
    sn = _poly_sqrt_modp(a.num, p)
    sd = _poly_sqrt_modp(a.den, p)
    if sn is None or sd is None:
        return None
    return a.field.from_coeffs(sn, sd)


def _sqrt_finite_ext(a):
    field = a.field
    q = field.order()
    if field.characteristic == 2:
        return a ** (q // 2)  # squaring is an automorphism
    if q <= _BRUTE_ORDER_CAP:
        for x in field.elements():
            if x * x == a:
                return x
        return None
    raise RootUnavailable("finite field too large for exhaustive square root")


def _sqrt_quadratic_ext(a):
    """Square root in K = base[w]/(w^2 + alpha*w + beta)."""
    field = a.field
    base = field.base
    if base.characteristic == 2:
        return _sqrt_quadratic_ext_char2(a)
    alpha = field.root.coeff(1)
    beta = field.root.coeff(0)
    a0, a1 = a.coeffs[0], a.coeffs[1]
    two = base.from_int(2)
    four = base.from_int(4)

    def elem(u, v):
        return field.from_poly(Poly(base, (u, v)))

    if a1.is_zero():
        u = _sqrt_base(a0)
        if u is not None:
            return elem(u, base.zero())
        denom = alpha * alpha / four - beta
        if not denom.is_zero():
            tau = a0 / denom
            v = _sqrt_base(tau)
            if v is not None:
                return elem(alpha * v / two, v)
        return None
    # v != 0: u = (a1 + alpha v^2) / (2v); (alpha^2-4beta) tau^2 + (2 alpha a1 - 4 a0) tau + a1^2 = 0
    A = alpha * alpha - four * beta
    B = two * alpha * a1 - four * a0
    C = a1 * a1
    for tau in _base_quadratic_roots(A, B, C, base):
        if tau.is_zero():
            continue
        v = _sqrt_base(tau)
        if v is None:
            continue
        u = (a1 + alpha * v * v) / (two * v)
        cand = elem(u, v)
        if cand * cand == a:
            return cand
    return None


def _sqrt_quadratic_ext_char2(a):
    """Square root in K = base[z]/(z^2 + b z + c), characteristic 2.

    Separable modulus (b != 0): (x + y z)^2 = (x^2 + c y^2) + b y^2 z forces
    y^2 = a1/b and x^2 = a0 + c a1/b, so existence reduces to two base
    square roots. Inseparable modulus (b = 0): squares of K land inside the
    base, so a1 must vanish; over F_2(s) the extension is the unique
    degree-2 subfield of the perfect closure, which contains sqrt(s), and
    every base element has the closed form sqrt(u) = A + B*sqrt(s)."""
    field = a.field
    base = field.base
    b = field.root.coeff(1)
    c = field.root.coeff(0)
    a0, a1 = a.coeffs[0], a.coeffs[1]
    if not b.is_zero():
        binv = b.inverse()
        y = _sqrt_base(a1 * binv)
        if y is None:
            return None
        x = _sqrt_base(a0 + c * a1 * binv)
        if x is None:
            return None
        cand = field.from_poly(Poly(base, (x, y)))
        return cand if cand * cand == a else None
    if not a1.is_zero():
        return None  # squares of an inseparable quadratic extension lie in the base
    if not isinstance(base, RationalFunctionField):
        raise RootUnavailable(
            "inseparable extension square roots need an F_2(s) base"
        )
    Ac, Bc = _char2_sqrt_split(c)
    if Bc.is_zero():
        raise RootUnavailable("modulus constant is a square (reducible modulus)")
    z = field.generator()
    sqrt_s = (z + field.embed(Ac)) * field.embed(Bc.inverse())
    A0, B0 = _char2_sqrt_split(a0)
    cand = field.embed(A0) + sqrt_s * field.embed(B0)
    return cand if cand * cand == a else None


def _char2_sqrt_split(f):
    """(A, B) in F_2(s) with sqrt(f) = A + B*sqrt(s), via the even/odd
    coefficient split of numerator and denominator."""
    F = f.field

    def split_poly(c):
        ev = _pp_trim([c[i] for i in range(0, len(c), 2)])
        od = _pp_trim([c[i] for i in range(1, len(c), 2)])
        return F.from_coeffs(ev), F.from_coeffs(od)

    Au, Bu = split_poly(f.num)  # sqrt(num) = Au + Bu*sqrt(s)
    Av, Bv = split_poly(f.den)
    s = F.s()
    den = F.from_coeffs(f.den)
    A = (Au * Av + Bu * Bv * s) / den
    B = (Au * Bv + Av * Bu) / den
    return A, B


def _sqrt_base(a):
    try:
        return sqrt_in_field(a)
    except RootUnavailable:
        return None


def _base_quadratic_roots(A, B, C, base):
    """Roots of A x^2 + B x + C in the base field (char != 2), possibly empty."""
    if A.is_zero():
        if B.is_zero():
            return []
        return [-C / B]
    disc = B * B - base.from_int(4) * A * C
    s = _sqrt_base(disc)
    if s is None:
        return []
    two_a = base.from_int(2) * A
    out = [(-B + s) / two_a, (-B - s) / two_a]
    return out[:1] if out[0] == out[1] else out


def artin_schreier_root(w):
    """z with z*z + z = w in a characteristic-2 field, or None."""
    field = w.field
    if getattr(field, "is_finite", False):
        if field.order() <= _BRUTE_ORDER_CAP:
            for z in field.elements():
                if z * z + z == w:
                    return z
            return None
        raise RootUnavailable("field too large for exhaustive Artin-Schreier solve")
    if isinstance(field, RationalFunctionField):
        return _as_root_ratfunc(w)
    raise RootUnavailable(f"Artin-Schreier solve over {field!r} unsupported")


def _as_root_ratfunc(w):
    # z^2 + z = u/v: needs v = d^2; then z = x/d with x^2 + d x = u over F_2[s]
    p = w.field.p
    d = _poly_sqrt_modp(w.den, p)
    if d is None:
        return None
    u = w.num
    bound = max(len(u), len(d)) + 2
    # F_2-linear system in the coefficients of x (degree < bound)
    rows = bound + max(len(d), 1) + 2
    cols = bound
    mat = [[0] * (cols + 1) for _ in range(rows)]
    for j in range(cols):
        # x = s^j contributes s^(2j) + d*s^j
        if 2 * j < rows:
            mat[2 * j][j] ^= 1
        for k, dk in enumerate(d):
            if dk and j + k < rows:
                mat[j + k][j] ^= 1
    for k, uk in enumerate(u):
        if k < rows:
            mat[k][cols] = uk
    sol = _solve_gf2(mat, cols)
    if sol is None:
        return None
    x = _pp_trim(sol)
    return w.field.from_coeffs(x, d)


def _solve_gf2(mat, cols):
    rows = len(mat)
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(rows):
            if i != r and mat[i][c]:
                mat[i] = [a ^ b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if mat[i][cols]:
            return None
    sol = [0] * cols
    for i, c in enumerate(pivots):
        sol[c] = mat[i][cols]
    return sol


def quadratic_roots(g):
    """Roots (in the coefficient field) of a monic quadratic; [] / [r] / [r1, r2]."""
    field = g.field
    if g.is_zero() or g.degree() != 2 or not g.is_monic():
        raise ValueError("need a monic quadratic")
    b, c = g.coeff(1), g.coeff(0)
    if field.characteristic != 2:
        disc = b * b - field.from_int(4) * c
        s = _sqrt_base(disc)
        if s is None:
            return []
        two = field.from_int(2)
        r1, r2 = (-b + s) / two, (-b - s) / two
        return [r1] if r1 == r2 else [r1, r2]
    if b.is_zero():
        s = _sqrt_char2(c)
        return [] if s is None else [s]
    try:
        z = artin_schreier_root(c / (b * b))
    except RootUnavailable:
        raise
    if z is None:
        return []
    return [b * z, b * z + b]


def _sqrt_char2(c):
    try:
        s = sqrt_in_field(c)
    except RootUnavailable:
        raise
    if s is not None and not (s * s == c):
        return None
    return s


def roots_in(g, ext):
    """Roots in an extension field of a monic quadratic over the base."""
    from .quotient import embed_poly

    return quadratic_roots(embed_poly(g, ext))
