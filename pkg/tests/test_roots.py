import pytest

from quadsplit import (
    Poly,
    QuotientRing,
    RootUnavailable,
    artin_schreier_root,
    quadratic_roots,
    roots_in,
    sqrt_in_field,
)

from conftest import F2, F3, F5, Q, F2S, F3S


def P(field, *ints):
    return Poly.from_ints(field, list(ints))


def test_sqrt_prime_fields():
    assert sqrt_in_field(F2.one()) == F2.one()
    s = sqrt_in_field(F5.from_int(4))
    assert s is not None and s * s == F5.from_int(4)
    assert sqrt_in_field(F3.from_int(2)) is None


def test_sqrt_rationals():
    assert sqrt_in_field(Q.from_fraction(4, 9)) == Q.from_fraction(2, 3)
    assert sqrt_in_field(Q.from_int(2)) is None
    assert sqrt_in_field(Q.from_int(-1)) is None


def test_sqrt_rational_functions():
    s = F2S.s()
    sq = s * s
    r = sqrt_in_field(sq)
    assert r == s
    assert sqrt_in_field(s) is None
    v = F3S.from_coeffs((1, 2, 1))  # (s+1)^2
    r3 = sqrt_in_field(v)
    assert r3 is not None and r3 * r3 == v


def test_sqrt_quadratic_extension_over_q():
    K = QuotientRing(Q, P(Q, 1, 0, 1), 1)  # Q[i]
    for target in (-4, -9, 4):
        e = K.from_int(target)
        r = sqrt_in_field(e)
        assert r is not None and r * r == e
    # tower: sqrt in K[u]/(u^2 - i) style towers exercises the recursion
    i = K.generator()
    mod = Poly(K, (-i, K.zero(), K.one()))  # u^2 - i
    K2 = QuotientRing(K, mod, 1, check_irreducible=False)
    e = K2.embed(i)
    r = sqrt_in_field(e)
    assert r is not None and r * r == e


def test_sqrt_finite_extensions():
    F9 = QuotientRing(F3, P(F3, 1, 0, 1), 1)
    for x in F9.elements():
        sq = x * x
        r = sqrt_in_field(sq)
        assert r is not None and r * r == sq
    F4 = QuotientRing(F2, P(F2, 1, 1, 1), 1)
    for x in F4.elements():
        r = sqrt_in_field(x)  # squaring is bijective in characteristic 2
        assert r is not None and r * r == x


def test_artin_schreier():
    F4 = QuotientRing(F2, P(F2, 1, 1, 1), 1)
    t = F4.generator()
    w = t * t + t  # solvable by construction
    z = artin_schreier_root(w)
    assert z is not None and z * z + z == w
    assert artin_schreier_root(F2.one()) is None  # z^2+z=1 has no root in F2
    s = F2S.s()
    w2 = s * s + s
    z2 = artin_schreier_root(w2)
    assert z2 is not None and z2 * z2 + z2 == w2
    assert artin_schreier_root(s) is None  # odd-degree pole obstruction


def test_quadratic_roots_examples():
    assert sorted(r.v for r in quadratic_roots(P(Q, -1, 0, 1))) == [-1, 1]
    assert quadratic_roots(P(Q, 1, 0, 1)) == []
    assert quadratic_roots(P(Q, 1, -2, 1)) == [Q.one()]  # double root
    r2 = quadratic_roots(P(F2, 0, 1, 1))  # t(t+1)
    assert len(r2) == 2
    assert quadratic_roots(P(F2, 1, 1, 1)) == []


def test_roots_in_extension():
    F4 = QuotientRing(F2, P(F2, 1, 1, 1), 1)
    roots = roots_in(P(F2, 1, 1, 1), F4)
    assert len(roots) == 2
    K = QuotientRing(Q, P(Q, 4, 0, 1), 1)  # Q[t]/(t^2+4)
    roots_q = roots_in(P(Q, 1, 0, 1), K)  # x = tbar/2 works
    assert len(roots_q) == 2
    pK = Poly(K, (K.embed(Q.one()), K.zero(), K.one()))
    for r in roots_q:
        assert pK(r).is_zero()


def test_char2_insep_extension_sqrt_via_sqrt_s():
    # K = F2(s)[t]/(t^2 + (s^3+s)) contains sqrt of every base element
    s = F2S.s()
    gamma = s * s * s + s
    K = QuotientRing(F2S, Poly(F2S, (gamma, F2S.zero(), F2S.one())), 1)
    for target in (s, s + F2S.one(), gamma * s):
        e = K.embed(target)
        r = sqrt_in_field(e)
        assert r is not None and r * r == e
