import itertools
import random

import pytest

from quadsplit import (
    Matrix,
    Poly,
    PrimeField,
    RationalField,
    RationalFunctionField,
    evaluate_poly_at_matrix,
)

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
Q = RationalField()
F2S = RationalFunctionField(2)
F3S = RationalFunctionField(3)


@pytest.fixture
def rng():
    return random.Random(20240809)


def random_poly(field, rng, degree, monic=True):
    coeffs = [field.random_element(rng) for _ in range(degree)]
    lead = field.one() if monic else field.random_element(rng)
    while lead.is_zero():
        lead = field.random_element(rng)
    return Poly(field, coeffs + [lead])


def random_matrix(field, rng, n):
    return Matrix(field, [[field.random_element(rng) for _ in range(n)] for _ in range(n)])


def random_invertible(field, rng, n):
    while True:
        M = random_matrix(field, rng, n)
        if M.rank() == n:
            return M


def all_matrices(field, n):
    elems = list(field.elements())
    for vals in itertools.product(elems, repeat=n * n):
        yield Matrix(field, [vals[i * n : (i + 1) * n] for i in range(n)])


def annihilated_matrices(poly, n):
    return [M for M in all_matrices(poly.field, n) if evaluate_poly_at_matrix(poly, M).is_zero()]


def sylvester_resultant(a, b):
    """Independent resultant oracle: determinant of the Sylvester matrix,
    computed by cofactor expansion over the coefficient field."""
    field = a.field
    m, n = a.degree(), b.degree()
    size = m + n
    rows = []
    for i in range(n):
        row = [field.zero()] * size
        for k in range(m + 1):
            row[i + k] = a.coeff(m - k)
        rows.append(row)
    for i in range(m):
        row = [field.zero()] * size
        for k in range(n + 1):
            row[i + k] = b.coeff(n - k)
        rows.append(row)

    def det(mat):
        if len(mat) == 1:
            return mat[0][0]
        acc = field.zero()
        sign = field.one()
        for j in range(len(mat)):
            if not mat[0][j].is_zero():
                minor = [r[:j] + r[j + 1 :] for r in mat[1:]]
                acc = acc + sign * mat[0][j] * det(minor)
            sign = -sign
        return acc

    return det(rows)
