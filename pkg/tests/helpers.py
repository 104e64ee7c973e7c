"""Seeded random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from pvgauge import MatRF, Poly, RatFn


def rand_poly(rnd: random.Random, deg: int, lo: int = -3, hi: int = 3) -> Poly:
    return Poly([rnd.randint(lo, hi) for _ in range(deg + 1)])


def rand_ratfn(rnd: random.Random, deg: int = 2, poly_share: float = 0.75) -> RatFn:
    """Mostly polynomials; otherwise a numerator over a monic linear factor."""
    num = rand_poly(rnd, rnd.randint(0, deg))
    if rnd.random() < poly_share:
        return RatFn(num)
    return RatFn(num, Poly([rnd.randint(-2, 2), 1]))


def rand_mat(rnd: random.Random, n: int, deg: int = 2, poly_share: float = 0.75) -> MatRF:
    return MatRF([[rand_ratfn(rnd, deg, poly_share) for _ in range(n)] for _ in range(n)])


def rand_invertible(rnd: random.Random, n: int, deg: int = 2, poly_share: float = 0.75) -> MatRF:
    while True:
        m = rand_mat(rnd, n, deg, poly_share)
        if not m.det().is_zero():
            return m


def rand_const_invertible(rnd: random.Random, n: int, lo: int = -3, hi: int = 3) -> MatRF:
    while True:
        m = MatRF([[rnd.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if not m.det().is_zero():
            return m


def rand_unimodular(rnd: random.Random, n: int) -> MatRF:
    """Integer matrix with determinant +-1, from elementary row operations."""
    m = MatRF.identity(n)
    for _ in range(3 * n):
        i, j = rnd.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            break
        e = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        e[i][j] = rnd.randint(-2, 2)
        m = MatRF(e) @ m
    return m


def rand_int_eigen_residue(rnd: random.Random, n: int, lo: int = -2, hi: int = 2) -> MatRF:
    """Constant matrix with integer eigenvalues: a conjugated upper-triangular matrix."""
    t = [[rnd.randint(lo, hi) if c >= r else 0 for c in range(n)] for r in range(n)]
    p = rand_unimodular(rnd, n)
    return p @ MatRF(t) @ p.inverse()


def frac(s) -> Fraction:
    return Fraction(s)
