import pytest

from quadsplit import (
    DIFFERENCE,
    NO,
    QUOTIENT,
    UNKNOWN,
    YES,
    Matrix,
    NotInvertibleInput,
    Poly,
    QuadraticPair,
    classify_matrix,
    companion,
    direct_sum,
    indecomposable_atlas,
    root_difference_poly,
    root_ratio_poly,
    same_splitting_field,
    translation_witness,
    homothety_witness,
)

from conftest import F2, F3, F5, Q, F2S, random_invertible


def P(field, *ints):
    return Poly.from_ints(field, list(ints))


# -- fundamental polynomials ---------------------------------------------------


def test_root_difference_examples():
    pq = P(Q, 1, 0, 1)
    F, core, delta = root_difference_poly(pq, pq)
    assert F == P(Q, 0, 0, 4, 0, 1)  # t^2 (t^2 + 4)
    assert core == P(Q, 0, 4, 1)  # t(t + 4)
    assert delta.is_zero()
    # q with a double root: F = p(t+1)^2 in char 0
    from quadsplit import translate

    p = P(Q, 1, 0, 1)
    q = P(Q, 1, -2, 1)  # (t-1)^2
    F2_, _, _ = root_difference_poly(p, q)
    g = translate(p, Q.one())
    assert F2_ == g * g


def test_root_ratio_examples():
    pq = P(Q, 1, 0, 1)
    G, core, delta = root_ratio_poly(pq, pq)
    assert G == P(Q, -1, 0, 1) * P(Q, -1, 0, 1)  # (t-1)^2 (t+1)^2
    assert delta == Q.one()
    p2 = P(F2, 1, 1, 1)
    G2, _, _ = root_ratio_poly(p2, p2)
    assert G2 == P(F2, 1, 1) * P(F2, 1, 1) * P(F2, 1, 1, 1)
    p3 = P(Q, -2, 0, 1)
    q3 = P(Q, -3, 0, 1)
    _, theta, _ = root_ratio_poly(p3, q3)
    assert theta == P(Q, -24, 0, 1)


def test_quotient_requires_nonzero_constants():
    from quadsplit import ClassifyError

    with pytest.raises(ClassifyError):
        QuadraticPair(P(Q, 0, 1, 1), P(Q, 1, 0, 1), QUOTIENT)


# -- case helpers ---------------------------------------------------------------


def test_same_splitting_field_cases():
    assert same_splitting_field(P(Q, 1, 0, 1), P(Q, 4, 0, 1))  # Q(i) both
    assert not same_splitting_field(P(Q, 1, 0, 1), P(Q, -2, 0, 1))
    assert same_splitting_field(P(F3, 1, 0, 1), P(F3, 2, 1, 1))  # unique quadratic ext
    # char 2 separable: Artin-Schreier classes
    assert same_splitting_field(P(F2, 1, 1, 1), P(F2, 1, 1, 1))
    s = F2S.s()
    p_sep = Poly(F2S, (F2S.one(), F2S.one(), F2S.one()))
    q_sep = Poly(F2S, (s, F2S.one(), F2S.one()))
    assert not same_splitting_field(p_sep, q_sep)
    # inseparable pair over F2(s): always the same radicial extension
    p_in = Poly(F2S, (s, F2S.zero(), F2S.one()))
    q_in = Poly(F2S, (s * s * s, F2S.zero(), F2S.one()))
    assert same_splitting_field(p_in, q_in)


def test_translation_and_homothety_witnesses():
    p = P(Q, 1, 0, 1)
    assert translation_witness(p, P(Q, 2, 2, 1)) == Q.from_int(1)
    assert translation_witness(p, P(Q, -2, 0, 1)) is None
    # F3: q = p(t+2)
    p3 = P(F3, 1, 0, 1)
    q3 = P(F3, 2, 1, 1)
    assert translation_witness(p3, q3) == F3.from_int(2)
    assert homothety_witness(p, P(Q, 4, 0, 1)) is not None  # q = H_{1/2}(p)
    assert homothety_witness(p, P(Q, -1, 0, 1)) is None


# -- classifier spec examples -----------------------------------------------


def test_classify_zero_matrix_difference():
    p = P(F3, 1, 0, 1)
    pair = QuadraticPair(p, p, DIFFERENCE)
    cert = classify_matrix(Matrix.zero(F3, 2, 2), pair)
    assert cert.verdict == YES


def test_classify_f2_companion_examples():
    p = P(F2, 1, 1, 1)
    M = companion(p)
    diff = classify_matrix(M, QuadraticPair(p, p, DIFFERENCE))
    assert diff.verdict == NO
    quot = classify_matrix(M, QuadraticPair(p, p, QUOTIENT))
    assert quot.verdict == YES


def test_classify_quotient_interval_rows():
    pq = P(Q, 1, 0, 1)
    pair = QuadraticPair(pq, pq, QUOTIENT)
    for n in (1, 2):
        M = companion(P(Q, 1, -1, 1) ** n)
        assert classify_matrix(M, pair).verdict == NO
        Md = direct_sum(Q, [M, M])
        assert classify_matrix(Md, pair).verdict == YES
    M3 = companion(P(Q, 1, -3, 1))
    assert classify_matrix(M3, pair).verdict == YES


def test_classify_not_invertible_quotient():
    p = P(Q, 1, 0, 1)
    pair = QuadraticPair(p, p, QUOTIENT)
    with pytest.raises(NotInvertibleInput):
        classify_matrix(Matrix.zero(Q, 2, 2), pair)


def test_classify_0x0():
    p = P(Q, 1, 0, 1)
    for mode in (DIFFERENCE, QUOTIENT):
        cert = classify_matrix(Matrix.zero(Q, 0, 0), QuadraticPair(p, p, mode))
        assert cert.verdict == YES


def test_unknown_over_fps():
    s = F2S.s()
    ts = Poly(F2S, (s, F2S.zero(), F2S.one()))
    pair = QuadraticPair(ts, ts, DIFFERENCE)
    M = companion(ts)  # regular block whose Type cannot be decided
    cert = classify_matrix(M, pair)
    assert cert.verdict == UNKNOWN
    assert cert.failure


# -- structural properties -------------------------------------------------


def test_similarity_invariance(rng):
    for field in (F2, F3):
        quads = [P(field, 1, 1, 1), P(field, 1, 0, 1)]
        for p in quads:
            for q in quads:
                for mode in (DIFFERENCE, QUOTIENT):
                    pair = QuadraticPair(p, q, mode)
                    for _ in range(6):
                        n = rng.randint(1, 3)
                        M = companion(P(field, *(rng.randrange(field.characteristic) for _ in range(n)), 1))
                        if mode == QUOTIENT and M.rows and M.det().is_zero():
                            continue
                        S = random_invertible(field, rng, n)
                        c1 = classify_matrix(M, pair)
                        c2 = classify_matrix(S * M * S.inverse(), pair)
                        assert c1.verdict == c2.verdict


def test_direct_sum_closure(rng):
    field = F3
    p = P(field, 1, 0, 1)
    q = P(field, 2, 1, 1)
    for mode in (DIFFERENCE, QUOTIENT):
        pair = QuadraticPair(p, q, mode)
        yes_mats = []
        from quadsplit.poly import monic_polys

        for f in monic_polys(field, 2):
            M = companion(f)
            if mode == QUOTIENT and M.det().is_zero():
                continue
            if classify_matrix(M, pair).verdict == YES:
                yes_mats.append(M)
        for i, M1 in enumerate(yes_mats):
            for M2 in yes_mats[i:]:
                MM = direct_sum(field, [M1, M2])
                assert classify_matrix(MM, pair).verdict == YES


def test_partwise_consistency(rng):
    # verdict of a block-diagonal assembly = AND of part verdicts
    field = F2
    p = P(field, 1, 1, 1)
    pair = QuadraticPair(p, p, DIFFERENCE)
    excs = [Matrix.zero(field, 2, 2), Matrix.identity(field, 2)]  # exceptional parts
    regs = [companion(P(field, 1, 0, 0, 0, 1)), companion(P(field, 1, 1, 0, 1, 1))]
    for E in excs:
        for R in regs:
            M = direct_sum(field, [E, R])
            verdict = classify_matrix(M, pair).verdict
            ve = classify_matrix(E, pair).verdict
            vr = classify_matrix(R, pair).verdict
            assert verdict == (YES if (ve == YES and vr == YES) else NO)


def test_atlas_f2_quotient_bound2():
    p = P(F2, 1, 1, 1)
    pair = QuadraticPair(p, p, QUOTIENT)
    atlas = indecomposable_atlas(pair, 2)
    mats = sorted(tuple(tuple(v.v for v in row) for row in m.entries) for m, _ in atlas)
    # exactly I2 (doubled t-1 row) and C(t^2+t+1)
    assert mats == [((0, 1), (1, 1)), ((1, 0), (0, 1))]


def test_atlas_bound_zero_empty():
    p = P(F2, 1, 1, 1)
    pair = QuadraticPair(p, p, DIFFERENCE)
    assert indecomposable_atlas(pair, 0) == []


def test_halving_a_forced_double_flips_to_no():
    # rows doubled by the anisotropy or exact-pairing conditions lose YES
    # when one copy is removed (step-paired rows may legitimately halve)
    pq = P(Q, 1, 0, 1)
    forced = {"regular_double", "eigen_double", "distinct_double", "opposite_double"}
    flipped = 0
    for mode in (DIFFERENCE, QUOTIENT):
        pair = QuadraticPair(pq, pq, mode)
        for mat, block in indecomposable_atlas(pair, 6):
            if block.kind not in forced or len(block.companion_polys) != 2:
                continue
            half = companion(block.companion_polys[0])
            assert classify_matrix(half, pair).verdict == NO
            flipped += 1
    assert flipped >= 4


def test_atlas_self_check_f3(rng):
    p = P(F3, 1, 0, 1)
    q = P(F3, 2, 1, 1)
    for mode in (DIFFERENCE, QUOTIENT):
        pair = QuadraticPair(p, q, mode)
        rows = indecomposable_atlas(pair, 4)
        assert rows
        for mat, _ in rows:
            assert classify_matrix(mat, pair).verdict == YES


def test_eigenvalue_gate_structural():
    # YES certificates split the space exactly: exceptional companions are
    # annihilated by a power of the fundamental quartic, regular companions
    # have the composed shape
    from quadsplit import factor, gcd
    from quadsplit.poly import decompose_in_quadratic, monic_polys
    from quadsplit.poly import reciprocal_decompose

    field = F3
    p = P(field, 1, 0, 1)
    for mode in (DIFFERENCE, QUOTIENT):
        pair = QuadraticPair(p, p, mode)
        for f in monic_polys(field, 3):
            M = companion(f)
            if mode == QUOTIENT and M.det().is_zero():
                continue
            cert = classify_matrix(M, pair)
            if cert.verdict != YES:
                continue
            for block in cert.exceptional_blocks:
                for g in block.companion_polys:
                    power = pair.fundamental ** g.degree()
                    assert (power % g).is_zero()
            t = Poly.x(field)
            w = t * t - t * pair.delta
            for block in cert.regular_blocks:
                for g in block.companion_polys:
                    if mode == DIFFERENCE:
                        assert decompose_in_quadratic(g, w) is not None
                    else:
                        Pp, Qq = reciprocal_decompose(g, g.degree() // 2, pair.delta)
                        assert Qq.is_zero()
