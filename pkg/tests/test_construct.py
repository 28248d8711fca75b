import pytest

from quadsplit import (
    DIFFERENCE,
    QUOTIENT,
    YES,
    Matrix,
    Poly,
    QuadraticPair,
    SearchExhausted,
    build_witness,
    classify_matrix,
    companion,
    direct_sum,
    evaluate_poly_at_matrix,
    indecomposable_atlas,
    search_witness,
    verify_witness,
)

from conftest import F2, F3, Q


def P(field, *ints):
    return Poly.from_ints(field, list(ints))


def test_trivial_witnesses():
    p = P(F3, 1, 0, 1)
    pair = QuadraticPair(p, p, DIFFERENCE)
    M = Matrix.zero(F3, 2, 2)
    w = build_witness(M, classify_matrix(M, pair))
    assert verify_witness(M, pair, w.A, w.B)
    pairq = QuadraticPair(P(F2, 1, 1, 1), P(F2, 1, 1, 1), QUOTIENT)
    I2 = Matrix.identity(F2, 2)
    w2 = build_witness(I2, classify_matrix(I2, pairq))
    assert verify_witness(I2, pairq, w2.A, w2.B)


def test_quotient_hensel_route_over_q():
    pq = P(Q, 1, 0, 1)
    pair = QuadraticPair(pq, pq, QUOTIENT)
    M = companion(P(Q, 1, -3, 1))
    cert = classify_matrix(M, pair)
    assert cert.verdict == YES
    w = build_witness(M, cert)
    assert verify_witness(M, pair, w.A, w.B)
    assert evaluate_poly_at_matrix(pq, w.A).is_zero()


def test_search_budget_zero():
    p = P(F2, 1, 1, 1)
    pair = QuadraticPair(p, p, DIFFERENCE)
    with pytest.raises(SearchExhausted):
        search_witness(Matrix.identity(F2, 2), pair, budget=0)


def test_search_finds_f2_identity():
    p = P(F2, 1, 1, 1)
    pair = QuadraticPair(p, p, DIFFERENCE)
    w = search_witness(Matrix.identity(F2, 2), pair)
    assert verify_witness(Matrix.identity(F2, 2), pair, w.A, w.B)


def test_search_exhausts_on_unreachable():
    p = P(F2, 1, 1, 1)
    pair = QuadraticPair(p, p, DIFFERENCE)
    M = companion(p)  # classifies NO; complete enumeration must fail
    with pytest.raises(SearchExhausted) as ei:
        search_witness(M, pair)
    assert ei.value.tried


def test_lemma_and_search_agree_where_both_feasible(rng):
    # both routes must produce (possibly different) valid witnesses
    field = F3
    p = P(field, 1, 0, 1)
    q = P(field, 2, 1, 1)
    for mode in (DIFFERENCE, QUOTIENT):
        pair = QuadraticPair(p, q, mode)
        from quadsplit.poly import monic_polys

        count = 0
        for f in monic_polys(field, 2):
            M = companion(f)
            if mode == QUOTIENT and M.det().is_zero():
                continue
            cert = classify_matrix(M, pair)
            if cert.verdict != YES:
                continue
            w1 = build_witness(M, cert)
            w2 = search_witness(M, pair)
            assert verify_witness(M, pair, w1.A, w1.B)
            assert verify_witness(M, pair, w2.A, w2.B)
            count += 1
        assert count > 0


def test_verify_witness_rejects_bad_input():
    p = P(F2, 1, 1, 1)
    pair = QuadraticPair(p, p, DIFFERENCE)
    A = companion(p)
    B = Matrix.identity(F2, 2)  # p(B) != 0
    from quadsplit import ConstructError

    with pytest.raises(ConstructError):
        verify_witness(A - B, pair, A, B)


def test_distinct_splitting_field_witnesses_over_q():
    # p = t^2+1, q = t^2-2: distinct quadratic fields; quartic blocks
    p = P(Q, 1, 0, 1)
    q = P(Q, -2, 0, 1)
    pair = QuadraticPair(p, q, DIFFERENCE)
    F = pair.fundamental
    single = companion(F)
    cert = classify_matrix(single, pair)
    assert cert.verdict == YES  # (n, n-1) = (1, 0) row
    w = build_witness(single, cert)
    assert verify_witness(single, pair, w.A, w.B)
    doubled = direct_sum(Q, [companion(F), companion(F)])
    cert2 = classify_matrix(doubled, pair)
    assert cert2.verdict == YES
    w2 = build_witness(doubled, cert2)
    assert verify_witness(doubled, pair, w2.A, w2.B)


def test_opposite_double_quotient_over_q():
    # trace-zero pair with distinct fields: doubled C(t^2 - delta)
    p = P(Q, 1, 0, 1)   # roots +-i
    q = P(Q, -2, 0, 1)  # roots +-sqrt(2)
    pair = QuadraticPair(p, q, QUOTIENT)
    w_poly = Poly(Q, (-pair.delta, Q.zero(), Q.one()))
    M = direct_sum(Q, [companion(w_poly), companion(w_poly)])
    cert = classify_matrix(M, pair)
    assert cert.verdict == YES
    w = build_witness(M, cert)
    assert verify_witness(M, pair, w.A, w.B)
    single = companion(w_poly)
    assert classify_matrix(single, pair).verdict == "NO"


def test_round_trip_atlas_small_fields():
    for field, bound in ((F2, 4), (F3, 4)):
        quads = [P(field, 1, 1, 1), P(field, 1, 0, 1)]
        for p in quads:
            for q in quads:
                for mode in (DIFFERENCE, QUOTIENT):
                    pair = QuadraticPair(p, q, mode)
                    for mat, _ in indecomposable_atlas(pair, bound):
                        cert = classify_matrix(mat, pair)
                        assert cert.verdict == YES
                        w = build_witness(mat, cert)
                        assert verify_witness(mat, pair, w.A, w.B)


def test_round_trip_lemma_routes_size6_f2():
    # non-split pairs: constructive routes carry blocks past the search cap
    p = P(F2, 1, 1, 1)
    pair = QuadraticPair(p, p, DIFFERENCE)
    rows = indecomposable_atlas(pair, 6)
    big = [m for m, _ in rows if m.rows >= 5]
    assert big
    for mat in big:
        cert = classify_matrix(mat, pair)
        w = build_witness(mat, cert)
        assert verify_witness(mat, pair, w.A, w.B)
