from __future__ import annotations

import random

import pytest

from spinorss.linalg import (
    evaluation_rank,
    fraction_free_rref,
    gaussian_integer_rank,
    kernel_from_rref,
    rank,
    span_rank,
)
from spinorss.scalar_algebra import GaussianRational, Polynomial, Symbol


def _random_matrix(rng, n, m, r):
    """n x m integer matrix of rank at most r."""
    a = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(n)]
    b = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(r)]
    return [[sum(a[i][k] * b[k][j] for k in range(r)) for j in range(m)] for i in range(n)]


@pytest.mark.parametrize("seed", range(40))
def test_three_rank_routes_agree(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 6), rng.randint(1, 6)
    mat = _random_matrix(rng, n, m, rng.randint(1, min(n, m)))
    sparse = [{j: GaussianRational(v) for j, v in enumerate(row) if v} for row in mat]
    r1 = rank(sparse)
    r2 = gaussian_integer_rank([[(v, 0) for v in row] for row in mat])
    rows, pivots, _ = fraction_free_rref([[Polynomial.const(v) for v in row] for row in mat],
                                         lambda e: 0)
    assert r1 == r2 == len(pivots)


def test_rank_matches_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(11)
    for _ in range(50):
        n, m = rng.randint(1, 7), rng.randint(1, 7)
        mat = _random_matrix(rng, n, m, rng.randint(1, min(n, m)))
        sparse = [{j: GaussianRational(v) for j, v in enumerate(row) if v} for row in mat]
        assert rank(sparse) == sympy.Matrix(mat).rank()


@pytest.mark.parametrize("seed", range(20))
def test_polynomial_kernel_annihilates(seed):
    rng = random.Random(seed)
    a = Polynomial.symbol("a")
    b = Polynomial.symbol("b", "real")
    pool = [Polynomial.const(0), Polynomial.const(1), Polynomial.const(-2), a, b, a * b, a + 1]
    mat = [[rng.choice(pool) for _ in range(4)] for _ in range(3)]
    rows, pivots, det = fraction_free_rref(mat, lambda e: (0 if e.is_constant() else 1, len(e)))
    for r, c in pivots:
        assert rows[r][c] == det
    for v in kernel_from_rref(rows, pivots, det, 4):
        assert any(not e.is_zero() for e in v)
        for row in mat:
            assert sum((x * y for x, y in zip(row, v)), Polynomial()).is_zero()
    assert len(pivots) + len(kernel_from_rref(rows, pivots, det, 4)) == 4


def test_span_and_evaluation_rank():
    x = Polynomial.symbol("x")
    y = Polynomial.symbol("y")
    polys = [x * y, 2 * x * y + x, x]
    assert span_rank(polys) == 2
    rng = random.Random(3)
    pts = []
    for _ in range(5):
        vx = GaussianRational(rng.randint(-9, 9), rng.randint(-9, 9))
        vy = GaussianRational(rng.randint(-9, 9), rng.randint(-9, 9))
        pts.append({Symbol("x"): vx, Symbol("x").conj(): vx.conj(),
                    Symbol("y"): vy, Symbol("y").conj(): vy.conj()})
    assert evaluation_rank(polys, pts) == 2
