import random

import pytest

from quadsplit import (
    DIFFERENCE_BASIS,
    QUOTIENT_BASIS,
    DegenerateNorm,
    Matrix,
    PairAlgebra,
    Poly,
    QuotientRing,
    hensel_adapted_pair,
    irreducible_monic_polys,
    left_regular_representation,
    split_to_matrices,
)
from quadsplit.pairalgebra import PairAlgebraError

from conftest import F2, F3, F5, Q, random_poly


def P(field, *ints):
    return Poly.from_ints(field, list(ints))


def _random_algebra(field, rng):
    p = random_poly(field, rng, 2)
    q = random_poly(field, rng, 2)
    x = field.random_element(rng)
    return PairAlgebra(p, q, field, x)


@pytest.mark.parametrize("field", [F2, F3, F5, Q], ids=repr)
def test_identity_suite(field, rng):
    """Star is an anti-automorphism, h h* = N(h) 1, and the polar identity;
    the defining relations are asserted at construction time."""
    for _ in range(30):
        alg = _random_algebra(field, rng)
        one = alg.one()
        for _ in range(10):
            h1 = alg.random_element(rng)
            h2 = alg.random_element(rng)
            assert (h1 * h2).conjugate() == h2.conjugate() * h1.conjugate()
            assert h1 * h1.conjugate() == one.scale(h1.norm())
            assert h1.conjugate() * h1 == one.scale(h1.norm())
            lhs = h1 * h2.conjugate() + h2 * h1.conjugate()
            assert lhs == one.scale(alg.polar(h1, h2))
            assert h1.conjugate().conjugate() == h1


def test_trace_values():
    alg = PairAlgebra(P(Q, 1, 0, 1), P(Q, 2, -3, 1), Q, Q.from_int(5))
    assert alg.one().trace() == Q.from_int(2)
    assert alg.gen_a().trace().is_zero()  # tr p = 0
    assert alg.gen_b().trace() == Q.from_int(3)
    # char 2: the trace of 1 vanishes
    alg2 = PairAlgebra(P(F2, 1, 1, 1), P(F2, 1, 1, 1), F2, F2.one())
    assert alg2.one().trace().is_zero()


def test_star_and_norm_of_generator():
    alg = PairAlgebra(P(Q, 3, -2, 1), P(Q, 1, 0, 1), Q, Q.from_int(1))
    A = alg.gen_a()
    assert A.conjugate() == alg.one().scale(Q.from_int(2)) - A
    assert A.norm() == Q.from_int(3)  # N(A) = p(0)
    assert alg.one().norm() == Q.one()


def test_norm_isotropic_at_split_root():
    # N(A - z) = 0 for a root z of p
    p = P(Q, 6, -5, 1)  # (t-2)(t-3)
    alg = PairAlgebra(p, P(Q, 1, 0, 1), Q, Q.from_int(7))
    z = Q.from_int(2)
    h = alg.gen_a() - alg.one().scale(z)
    assert h.norm().is_zero()


def test_degeneracy_examples():
    pq = P(Q, 1, 0, 1)
    assert PairAlgebra(pq, pq, Q, Q.from_int(2)).is_degenerate()
    assert not PairAlgebra(pq, pq, Q, Q.from_int(0)).is_degenerate()
    p2 = P(F2, 1, 1, 1)
    assert PairAlgebra(p2, p2, F2, F2.one()).is_degenerate()


def test_degeneracy_matches_gram_char_not_2(rng):
    # is_degenerate already cross-checks internally; sweep it on randoms
    for field in (F3, F5, Q):
        for _ in range(120):
            alg = _random_algebra(field, rng)
            alg.is_degenerate()


def test_degeneracy_root_criterion_split(rng):
    # for split p, q the degenerate x are exactly x1 y1 + x2 y2 and x1 y2 + x2 y1
    for _ in range(60):
        x1, x2 = (F5.random_element(rng) for _ in range(2))
        y1, y2 = (F5.random_element(rng) for _ in range(2))
        lin = lambda c: Poly(F5, (-c, F5.one()))
        p = lin(x1) * lin(x2)
        q = lin(y1) * lin(y2)
        bad = {repr(x1 * y1 + x2 * y2), repr(x1 * y2 + x2 * y1)}
        for xv in F5.elements():
            alg = PairAlgebra(p, q, F5, xv)
            assert alg.is_degenerate() == (repr(xv) in bad)


def _eligible_hensel_cases():
    from quadsplit import ISOTROPIC, isotropy
    from quadsplit.poly import monic_polys

    cases = []
    for field in (F2, F3):
        quads = [f for f in monic_polys(field, 2)]
        for p in quads:
            for q in quads:
                for r in irreducible_monic_polys(field, 1) + irreducible_monic_polys(field, 2):
                    L = QuotientRing(field, r, 1, check_irreducible=False)
                    x = L.generator() + L.embed(p.coeff(0) + q.coeff(0))
                    alg = PairAlgebra(p, q, L, x)
                    if alg.is_degenerate():
                        continue
                    if isotropy(alg).outcome != ISOTROPIC:
                        continue
                    cases.append((field, p, q, r))
    return cases


def test_hensel_postconditions_small_sweep():
    cases = _eligible_hensel_cases()
    assert cases
    for field, p, q, r in cases[:40]:
        for n in (1, 2, 3):
            R = QuotientRing(field, r, n, check_irreducible=False)
            x = R.generator() + R.embed(p.coeff(0) + q.coeff(0))
            alg = PairAlgebra(p, q, R, x)
            X, Y = hensel_adapted_pair(alg)
            one = alg.one()
            assert (X * X).is_zero() and (Y * Y).is_zero()
            assert X * Y + Y * X == one
            a, b = split_to_matrices(alg, adapted=(X, Y))
            assert a.rows == 2 and b.rows == 2


def test_hensel_rejects_degenerate():
    pq = P(Q, 1, 0, 1)
    alg = PairAlgebra(pq, pq, Q, Q.from_int(2))
    with pytest.raises(DegenerateNorm):
        hensel_adapted_pair(alg)


def test_regular_representation_difference_shape():
    p = P(F2, 1, 1, 1)
    R = QuotientRing(F2, p, 1, check_irreducible=False)
    x = R.generator()  # p(0) + q(0) = 0 over F2 for p = q
    alg = PairAlgebra(p, p, R, x)
    Ad, Bd = left_regular_representation(alg, DIFFERENCE_BASIS)
    D = Ad - Bd
    t = R.generator()
    z = R.zero()
    o = R.one()
    delta = alg.delta_difference
    expected = Matrix(
        R,
        [
            [z, t, z, z],
            [o, delta, z, z],
            [z, z, z, t],
            [z, z, o, delta],
        ],
    )
    assert D == expected


def test_regular_representation_quotient_shape():
    p = P(F3, 1, 0, 1)
    R = QuotientRing(F3, p, 1, check_irreducible=False)
    x = R.generator()
    alg = PairAlgebra(p, p, R, x * R.embed(p.coeff(0)))
    Aq, Bq = left_regular_representation(alg, QUOTIENT_BASIS)
    U = Aq * Bq.inverse()
    z = R.zero()
    o = R.one()
    mdelta = -R.embed(p.coeff(0) * p.coeff(0).inverse())
    t = R.generator()
    expected = Matrix(
        R,
        [
            [z, mdelta, z, z],
            [o, t, z, z],
            [z, z, z, mdelta],
            [z, z, o, t],
        ],
    )
    assert U == expected


def test_quotient_basis_requires_unit_constant():
    p = P(F3, 0, 1, 1)  # q(0) = 0
    alg = PairAlgebra(P(F3, 1, 0, 1), p, F3, F3.one())
    with pytest.raises(PairAlgebraError):
        left_regular_representation(alg, QUOTIENT_BASIS)
