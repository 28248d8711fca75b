import random

import pytest

from quadsplit import (
    NotMonic,
    Poly,
    ZeroPolynomial,
    factor,
    gcd,
    hasse_derivative,
    homothety,
    joukowski,
    reciprocal_decompose,
    resultant,
    root_multiplicity,
    trace_of,
    translate,
    xgcd,
)
from quadsplit.poly import decompose_in_quadratic

from conftest import F2, F3, F5, Q, F2S, random_poly, sylvester_resultant


def P(field, *ints):
    return Poly.from_ints(field, list(ints))


# -- trace ---------------------------------------------------------------


def test_trace_examples():
    assert trace_of(P(F2, 1, 1, 1)) == F2.one()
    assert trace_of(P(Q, 1, 0, 1)).is_zero()
    assert trace_of(P(Q, 2, -3, 1)) == Q.from_int(3)
    with pytest.raises(NotMonic):
        trace_of(P(Q, 1, 2))  # not monic
    with pytest.raises(NotMonic):
        trace_of(Poly.one(Q))


# -- factor ---------------------------------------------------------------


def test_factor_examples():
    fz = factor(P(F2, 1, 0, 1, 0, 1))  # t^4 + t^2 + 1
    assert fz.is_proven()
    assert fz.factors == [(P(F2, 1, 1, 1), 2)]

    fz = factor(P(Q, 0, 0, 4, 0, 1))  # t^2 (t^2 + 4)
    facs = dict(fz.factors)
    assert facs[P(Q, 0, 1)] == 2
    assert facs[P(Q, 4, 0, 1)] == 1

    ts = Poly(F2S, (F2S.s(), F2S.zero(), F2S.one()))  # t^2 + s
    fz = factor(ts)
    assert fz.is_proven()
    assert fz.factors == [(ts, 1)]


def test_factor_zero_raises():
    with pytest.raises(ZeroPolynomial):
        factor(Poly.zero(Q))


@pytest.mark.parametrize("field,deg", [(F2, 8), (F3, 8), (F5, 8), (Q, 6)])
def test_factor_roundtrip_random(field, deg, rng):
    for _ in range(60):
        f = random_poly(field, rng, rng.randint(1, deg), monic=False)
        fz = factor(f)
        assert fz.reassemble() == f
        assert fz.is_proven()
        for g, _ in fz.factors:
            assert g.is_monic()


def test_factor_kronecker_irreducible_quartic():
    f = P(Q, 1, 0, 0, 0, 1)  # t^4 + 1, irreducible over Q
    fz = factor(f)
    assert len(fz.factors) == 1 and fz.factors[0][1] == 1


def test_factor_ratfunc_square():
    F = F2S
    s = F.s()
    # (t + s)^2 = t^2 + s^2
    f = Poly(F, (s * s, F.zero(), F.one()))
    fz = factor(f)
    assert fz.is_proven()
    assert fz.factors == [(Poly(F, (s, F.one())), 2)]


# -- resultant ---------------------------------------------------------------


def test_resultant_examples():
    assert resultant(P(Q, -2, 1), P(Q, -3, 1)) == Q.from_int(-1)
    assert resultant(P(Q, 1, 0, 1), P(Q, 1, 0, 1)).is_zero()
    # frozen from the independent Sylvester determinant
    assert resultant(P(Q, 1, 0, 1), P(Q, -2, 0, 1)) == Q.from_int(9)
    assert sylvester_resultant(P(Q, 1, 0, 1), P(Q, -2, 0, 1)) == Q.from_int(9)


def test_resultant_matches_sylvester_random(rng):
    for field in (Q, F3, F5):
        for _ in range(40):
            a = random_poly(field, rng, rng.randint(1, 4), monic=False)
            b = random_poly(field, rng, rng.randint(1, 4), monic=False)
            assert resultant(a, b) == sylvester_resultant(a, b)


# -- transforms ---------------------------------------------------------------


def test_translate_examples():
    assert translate(P(Q, 1, 0, 1), Q.from_int(1)) == P(Q, 2, 2, 1)
    assert translate(P(F2, 1, 1, 1), F2.one()) == P(F2, 1, 1, 1)
    f = P(Q, 3, 1, 4, 1)
    assert translate(f, Q.zero()) == f


def test_translate_inverse_property(rng):
    for field in (F2, F3, Q):
        for _ in range(350):
            f = random_poly(field, rng, rng.randint(0, 5), monic=False)
            d = field.random_element(rng)
            assert translate(translate(f, d), -d) == f


def test_homothety_examples():
    assert homothety(P(Q, 1, 0, 1), Q.from_int(2)) == Poly(
        Q, (Q.from_fraction(1, 4), Q.zero(), Q.one())
    )
    assert homothety(P(F2, 1, 1, 1), F2.one()) == P(F2, 1, 1, 1)
    assert homothety(P(Q, -1, 0, 1), Q.from_int(-1)) == P(Q, -1, 0, 1)


def test_homothety_inverse_property(rng):
    for field in (F3, F5, Q):
        for _ in range(350):
            f = random_poly(field, rng, 2)
            d = field.random_element(rng)
            if d.is_zero():
                continue
            g = homothety(f, d)
            assert trace_of(g) == trace_of(f) / d
            assert g.coeff(0) == f.coeff(0) / (d * d)
            assert homothety(g, d.inverse()) == f


def test_joukowski_examples():
    one = Q.from_int(1)
    assert joukowski(P(Q, 0, 1), one) == P(Q, 1, 0, 1)
    assert joukowski(P(Q, -2, 1), one) == P(Q, 1, -2, 1)
    # multiplicativity on the quoted product
    a, b = P(Q, -2, 1), P(Q, -3, 1)
    assert joukowski(a * b, one) == joukowski(a, one) * joukowski(b, one)


def test_joukowski_multiplicative_and_coprime(rng):
    for field in (F2, F3, Q):
        for _ in range(350):
            delta = field.random_element(rng)
            if delta.is_zero():
                continue
            r = random_poly(field, rng, rng.randint(1, 3))
            s = random_poly(field, rng, rng.randint(1, 3))
            assert joukowski(r * s, delta) == joukowski(r, delta) * joukowski(s, delta)
            if gcd(r, s).degree() == 0:
                assert gcd(joukowski(r, delta), joukowski(s, delta)).degree() == 0


# -- reciprocal decomposition ---------------------------------------------


def test_reciprocal_decompose_examples():
    one = Q.from_int(1)
    Pp, Qq = reciprocal_decompose(P(Q, 5, 3, 1), 1, one)
    assert Pp == P(Q, 3, 1) and Qq == P(Q, 4)
    Pp, Qq = reciprocal_decompose(P(Q, 0, 0, 1), 1, one)
    assert Pp == P(Q, 0, 1) and Qq == P(Q, -1)
    Pp, Qq = reciprocal_decompose(Poly.zero(Q), 2, one)
    assert Pp.is_zero() and Qq.is_zero()


def test_reciprocal_decompose_identity_random(rng):
    for field in (F2, F3, Q):
        t = Poly.x(field)
        for _ in range(350):
            m = rng.randint(1, 4)
            delta = field.random_element(rng)
            if delta.is_zero():
                continue
            R = random_poly(field, rng, rng.randint(0, 2 * m), monic=False)
            Pout, Qout = reciprocal_decompose(R, m, delta)
            core = t * t + Poly.constant(delta)
            # t^m P(t + delta/t) = sum P_k (t^2+delta)^k t^(m-k)
            rebuilt = Poly.zero(field)
            for k in range(m + 1):
                rebuilt = rebuilt + core**k * t ** (m - k) * Pout.coeff(k)
            for k in range(m):
                rebuilt = rebuilt + core**k * t ** (m - 1 - k) * Qout.coeff(k)
            assert rebuilt == R
            again = reciprocal_decompose(R, m, delta)
            assert again == (Pout, Qout)


# -- Hasse derivative ---------------------------------------------------------


def test_hasse_examples():
    assert hasse_derivative(P(F2, 0, 0, 1), 1).is_zero()
    assert hasse_derivative(P(F2, 0, 0, 1), 2) == Poly.one(F2)
    f = P(Q, 3, 1, 4)
    assert hasse_derivative(f, 0) == f


def test_hasse_expansion_identity(rng):
    for field in (F2, F3, Q):
        for _ in range(350):
            r = random_poly(field, rng, rng.randint(0, 5), monic=False)
            x0 = field.random_element(rng)
            t0 = field.random_element(rng)
            # r(t0 + x0) = sum_n G^n(r)(t0) x0^n
            lhs = r(t0 + x0) if not r.is_zero() else field.zero()
            rhs = field.zero()
            n = 0
            while True:
                g = hasse_derivative(r, n)
                if g.is_zero() and (r.is_zero() or n > r.degree()):
                    break
                rhs = rhs + (g(t0) if not g.is_zero() else field.zero()) * x0**n
                n += 1
            assert lhs == rhs


# -- root multiplicity ---------------------------------------------------------


def test_root_multiplicity_examples():
    assert root_multiplicity(P(F2, 1, 1, 1)) == 1
    ts = Poly(F2S, (F2S.s(), F2S.zero(), F2S.one()))
    assert root_multiplicity(ts) == 2
    assert root_multiplicity(P(Q, 1, 0, 1)) == 1


# -- misc helpers ---------------------------------------------------------------


def test_xgcd_bezout(rng):
    for field in (F2, F5, Q):
        for _ in range(100):
            a = random_poly(field, rng, rng.randint(0, 4), monic=False)
            b = random_poly(field, rng, rng.randint(0, 4), monic=False)
            g, u, v = xgcd(a, b)
            assert u * a + v * b == g


def test_decompose_in_quadratic():
    w = P(Q, 0, 0, 1)
    f = P(Q, 4, 0, 4, 0, 1)
    h = decompose_in_quadratic(f, w)
    assert h == P(Q, 2, 1) * P(Q, 2, 1)
    assert decompose_in_quadratic(P(Q, 0, 1), w) is None
