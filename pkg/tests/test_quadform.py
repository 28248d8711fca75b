import pytest

from quadsplit import (
    ANISOTROPIC,
    ISOTROPIC,
    DegenerateForm,
    PairAlgebra,
    Poly,
    QuotientRing,
    UnsupportedField,
    isotropy,
)
from quadsplit.quadform import UNKNOWN as Q_UNKNOWN, _quaternary_isotropic_over_q
from quadsplit.poly import monic_polys

from conftest import F2, F3, F5, Q, F2S


def P(field, *ints):
    return Poly.from_ints(field, list(ints))


def test_rationals_interval_examples():
    pq = P(Q, 1, 0, 1)
    v1 = isotropy(PairAlgebra(pq, pq, Q, Q.from_int(1)))
    assert v1.outcome == ANISOTROPIC and "real" in v1.reason
    v3 = isotropy(PairAlgebra(pq, pq, Q, Q.from_int(3)))
    assert v3.outcome == ISOTROPIC and v3.witness is not None


def test_finite_field_exhaustive_example():
    p31 = P(F3, 1, 0, 1)
    v = isotropy(PairAlgebra(p31, p31, F3, F3.from_int(0)))
    assert v.outcome == ISOTROPIC


def test_degenerate_rejected():
    pq = P(Q, 1, 0, 1)
    with pytest.raises(DegenerateForm):
        isotropy(PairAlgebra(pq, pq, Q, Q.from_int(2)))


def test_every_witness_annihilates_the_norm(rng):
    from conftest import random_poly

    for field in (F2, F3, F5):
        for _ in range(40):
            p = random_poly(field, rng, 2)
            q = random_poly(field, rng, 2)
            x = field.random_element(rng)
            alg = PairAlgebra(p, q, field, x)
            if alg.is_degenerate():
                continue
            v = isotropy(alg)
            assert v.outcome == ISOTROPIC  # nondegenerate quaternary over finite
            assert alg.norm_coords(v.witness).is_zero()


def test_finite_nondegenerate_always_isotropic_sweep():
    # Chevalley-Warning consequence, swept over every (p, q, x) triple
    for field in (F2, F3):
        quads = list(monic_polys(field, 2))
        for p in quads:
            for q in quads:
                for x in field.elements():
                    alg = PairAlgebra(p, q, field, x)
                    if alg.is_degenerate():
                        continue
                    assert isotropy(alg).outcome == ISOTROPIC


def test_extension_field_search():
    r = P(F3, 1, 0, 1)
    L = QuotientRing(F3, r, 1)
    p = P(F3, 1, 0, 1)
    x = L.generator()
    alg = PairAlgebra(p, p, L, x)
    if not alg.is_degenerate():
        v = isotropy(alg)
        assert v.outcome == ISOTROPIC


def test_square_scaling_stability():
    # multiplying every diagonal entry by a square changes nothing locally
    diag = [Q.from_int(1), Q.from_int(1), Q.from_int(1), Q.from_int(-7)]
    base = _quaternary_isotropic_over_q(diag)
    scaled = [d * Q.from_int(9) for d in diag]
    assert _quaternary_isotropic_over_q(scaled)[0] == base[0]
    diag2 = [Q.from_int(1), Q.from_int(2), Q.from_int(3), Q.from_int(4)]
    assert (
        _quaternary_isotropic_over_q([d * Q.from_int(25) for d in diag2])[0]
        == _quaternary_isotropic_over_q(diag2)[0]
    )


def test_unsupported_number_field_extension():
    r = P(Q, 1, 0, 1)
    L = QuotientRing(Q, r, 1)
    p = P(Q, -2, 0, 1)
    q = P(Q, -3, 0, 1)
    alg = PairAlgebra(p, q, L, L.generator())
    if not alg.is_degenerate():
        with pytest.raises(UnsupportedField):
            isotropy(alg)


def test_split_fast_path_over_extension():
    # p has a root in L even though L is a number-field extension
    r = P(Q, 1, 0, 1)
    L = QuotientRing(Q, r, 1)
    p = P(Q, 1, 0, 1)  # splits over L = Q[i]
    q = P(Q, -3, 0, 1)
    alg = PairAlgebra(p, q, L, L.generator())
    if not alg.is_degenerate():
        v = isotropy(alg)
        assert v.outcome == ISOTROPIC


def test_fps_unknown_honesty():
    s = F2S.s()
    ts = Poly(F2S, (s, F2S.zero(), F2S.one()))
    alg = PairAlgebra(ts, ts, F2S, s)
    assert not alg.is_degenerate()
    v = isotropy(alg, height_cap=1)
    assert v.outcome == Q_UNKNOWN
    assert v.search_bound == 1


def test_rational_verdicts_along_parameter_line():
    # the [-4, 0] window for the difference-mode parameter x + 2
    pq = P(Q, 1, 0, 1)
    for xv, expect in ((-5, ISOTROPIC), (-3, ANISOTROPIC), (-1, ANISOTROPIC), (1, ISOTROPIC)):
        alg = PairAlgebra(pq, pq, Q, Q.from_int(xv + 2))
        assert isotropy(alg).outcome == expect
