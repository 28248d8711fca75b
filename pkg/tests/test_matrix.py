import pytest

from quadsplit import (
    Matrix,
    NotMonic,
    NotSimilar,
    Poly,
    QuotientRing,
    companion,
    direct_sum,
    evaluate_poly_at_matrix,
    find_similarity,
    invariant_factors,
    lift_matrix,
    min_poly,
    restrict_scalars,
)

from conftest import F2, F3, Q, random_invertible, random_matrix


def P(field, *ints):
    return Poly.from_ints(field, list(ints))


def test_companion_examples():
    C = companion(P(F2, 1, 1, 1))
    assert C == Matrix.from_int_rows(F2, [[0, 1], [1, 1]])
    assert companion(Poly.one(Q)).rows == 0
    assert companion(P(Q, -5, 1)) == Matrix.from_int_rows(Q, [[5]])
    with pytest.raises(NotMonic):
        companion(P(Q, 1, 2))


def test_zero_by_zero_matrix_is_legal():
    Z = Matrix.zero(Q, 0, 0)
    assert (Z * Z) == Z
    assert Z.direct_sum(companion(P(Q, -1, 1))).rows == 1
    assert min_poly(Z) == Poly.one(Q)


def test_min_poly_examples():
    assert min_poly(Matrix.zero(Q, 2, 2)) == P(Q, 0, 1)
    assert min_poly(companion(P(F2, 1, 1, 1))) == P(F2, 1, 1, 1)
    assert min_poly(Matrix.identity(Q, 2)) == P(Q, -1, 1)


def test_min_poly_agrees_with_largest_invariant_factor(rng):
    for field in (F2, F3):
        for _ in range(40):
            M = random_matrix(field, rng, rng.randint(1, 4))
            assert min_poly(M) == invariant_factors(M).factors[0]


def test_evaluate_examples():
    C = companion(P(F2, 1, 1, 1))
    assert evaluate_poly_at_matrix(P(F2, 1, 1, 1), C).is_zero()
    M = Matrix.from_int_rows(Q, [[1, 2], [3, 4]])
    assert evaluate_poly_at_matrix(P(Q, 0, 1), M) == M
    assert evaluate_poly_at_matrix(Poly.one(Q), M) == Matrix.identity(Q, 2)


def test_find_similarity_examples():
    A = Matrix.from_int_rows(Q, [[0, 1], [0, 0]])
    B = Matrix.from_int_rows(Q, [[0, 0], [1, 0]])
    S = find_similarity(A, B)
    assert S * A * S.inverse() == B
    I2 = Matrix.identity(Q, 2)
    assert find_similarity(I2, I2) * I2 == I2
    with pytest.raises(NotSimilar) as ei:
        find_similarity(Matrix.zero(Q, 2, 2), I2)
    assert ei.value.factors_left and ei.value.factors_right


def test_find_similarity_iff_invariant_factors(rng):
    # exhaustive-ish over F2 2x2 backed by random conjugates over F3
    for field, n, trials in ((F2, 2, 60), (F3, 3, 25)):
        for _ in range(trials):
            M = random_matrix(field, rng, n)
            S = random_invertible(field, rng, n)
            N = S * M * S.inverse()
            T = find_similarity(M, N)
            assert T * M * T.inverse() == N


def test_local_ring_inverse():
    R = QuotientRing(F2, P(F2, 1, 1), 2)  # F2[t]/((t+1)^2)
    t = R.generator()
    M = Matrix(R, [[t, R.one()], [R.zero(), t]])
    Minv = M.inverse()
    assert M * Minv == Matrix.identity(R, 2)


def test_restrict_scalars_regular_representation():
    F4 = QuotientRing(F2, P(F2, 1, 1, 1), 1)
    t = F4.generator()
    M = Matrix(F4, [[t]])
    assert restrict_scalars(M) == companion(P(F2, 1, 1, 1))
    # multiplication is preserved through the blow-down
    N = Matrix(F4, [[t + F4.one()]])
    assert restrict_scalars(M * N) == restrict_scalars(M) * restrict_scalars(N)


def test_lift_matrix_roundtrip():
    R = QuotientRing(F3, P(F3, 1, 0, 1), 1)
    M = Matrix.from_int_rows(F3, [[1, 2], [0, 1]])
    lifted = lift_matrix(M, R)
    assert lifted.ring == R
    assert restrict_scalars(lifted).rows == 4


def test_direct_sum_invariant_factors(rng):
    # invariant factors of a direct sum refine correctly
    for _ in range(25):
        f = P(F3, rng.randrange(3), rng.randrange(3), 1)
        g = P(F3, rng.randrange(3), 1)
        M = direct_sum(F3, [companion(f), companion(g)])
        facs = invariant_factors(M).factors
        prod = Poly.one(F3)
        for h in facs:
            prod = prod * h
        assert prod == f * g
