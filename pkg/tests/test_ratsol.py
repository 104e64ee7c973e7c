import random
from functools import reduce
from fractions import Fraction

import pytest
import sympy

from helpers import rand_const_invertible, rand_int_eigen_residue, rand_invertible, rand_mat
from pvgauge import (
    DegreeBounds,
    MatRF,
    Poly,
    RatFn,
    SylvesterSystem,
    decide_equivalence,
    denominator_bound,
    equivalent,
    gauge_act,
    is_trivial,
    rational_solutions,
    sylvester_residual,
)
from pvgauge.algebra import poly_lcm, rational_rank
from pvgauge.errors import DimensionMismatch, Inconclusive, NeedsUserBound
from pvgauge.ratsol import vector_rational_solutions, vectorize

x = RatFn.x()
ZERO1 = MatRF([[0]])
UNIP = MatRF([[0, 1 / x], [0, 0]])


def sys1(a1, a2):
    return SylvesterSystem(MatRF([[a1]]), MatRF([[a2]]))


def test_residual_examples():
    s = sys1(0, 1 / x)
    assert sylvester_residual(MatRF.zero(1), s).is_zero()
    assert sylvester_residual(MatRF([[x]]), s).is_zero()
    assert sylvester_residual(MatRF([[1]]), s) == MatRF([[-1 / x]])
    with pytest.raises(DimensionMismatch):
        sylvester_residual(MatRF.identity(2), s)


def test_vectorize_examples():
    assert vectorize(SylvesterSystem(MatRF.zero(2), MatRF.zero(2))).is_zero()
    assert vectorize(sys1(x, 1 / x)) == MatRF([[1 / x - x]])
    assert vectorize(SylvesterSystem(MatRF.zero(2), UNIP)) == MatRF.identity(2).kron(UNIP)


def test_vectorization_faithful_random():
    rnd = random.Random(5)
    for k in range(110):
        n = 1 + k % 3
        s = SylvesterSystem(rand_mat(rnd, n, 1), rand_mat(rnd, n, 1))
        m = rand_mat(rnd, n, 2)
        vec = m.column_stack()
        lmat = vectorize(s)
        lhs = sylvester_residual(m, s).column_stack()
        rhs = [vec[i].derive() - sum((lmat[i, j] * vec[j] for j in range(n * n)), RatFn(0)) for i in range(n * n)]
        assert lhs == rhs


def test_residual_linearity_random():
    rnd = random.Random(6)
    for _ in range(40):
        n = rnd.randint(1, 2)
        s = SylvesterSystem(rand_mat(rnd, n), rand_mat(rnd, n))
        m, nn = rand_mat(rnd, n), rand_mat(rnd, n)
        a, b = Fraction(rnd.randint(-5, 5), rnd.randint(1, 4)), Fraction(rnd.randint(-5, 5))
        lhs = sylvester_residual(m * a + nn * b, s)
        assert lhs == sylvester_residual(m, s) * a + sylvester_residual(nn, s) * b


def test_denominator_bound_examples():
    b = denominator_bound(SylvesterSystem(MatRF.zero(2), MatRF.zero(2)))
    assert b.pole_orders == () and b.numerator_degree == 0 and b.provenance == "computed"
    b = denominator_bound(sys1(0, 1 / x))
    assert b.as_dict() == {Poly.x(): 0} and b.numerator_degree == 1
    with pytest.raises(NeedsUserBound):
        denominator_bound(sys1(0, 1 / (x * x)))
    with pytest.raises(NeedsUserBound):
        denominator_bound(sys1(0, x))


def test_user_bounds():
    s = sys1(0, 1 / (x * x))
    ub = DegreeBounds({Poly.x(): 3}, 5, "user_supplied")
    sol = rational_solutions(s, ub)
    assert sol.dimension == 0 and sol.bounds_used.provenance == "user_supplied"
    with pytest.raises(ValueError):
        rational_solutions(s, DegreeBounds({}, 5, "user_supplied"))
    with pytest.raises(ValueError):
        DegreeBounds({Poly.x(): -1}, 0)


def test_rational_solutions_examples():
    assert [b for b in rational_solutions(sys1(0, 0)).basis] == [MatRF([[1]])]
    assert [b for b in rational_solutions(sys1(0, 1 / x)).basis] == [MatRF([[x]])]
    sol = rational_solutions(SylvesterSystem(MatRF.zero(2), UNIP))
    assert list(sol.basis) == [MatRF([[1, 0], [0, 0]]), MatRF([[0, 1], [0, 0]])]


def _ansatz_basis_dim(a2, deg=3, dpow=3):
    """Brute-force dimension of {M : M' = a2 M} with M = P / x^dpow, deg P <= deg (sympy route)."""
    t = sympy.Symbol("t")
    n = a2.n
    cs = sympy.symbols(f"c0:{n * n * (deg + 1)}")
    it = iter(cs)
    mm = sympy.Matrix(n, n, lambda i, j: sum(next(it) * t**k for k in range(deg + 1)) / t**dpow)
    am = sympy.Matrix(n, n, lambda i, j: sympy.sympify(str(a2[i, j]).replace("^", "**"), locals={"x": t}))
    res = (mm.diff(t) - am * mm).applyfunc(lambda e: sympy.numer(sympy.together(e)))
    eqs = [c for e in res for c in sympy.Poly(sympy.expand(e), t).all_coeffs()]
    mat = sympy.Matrix([[sympy.diff(e, c) for c in cs] for e in eqs])
    return len(cs) - mat.rank()


def test_unipotent_basis_matches_ansatz():
    assert _ansatz_basis_dim(UNIP) == rational_solutions(SylvesterSystem(MatRF.zero(2), UNIP)).dimension == 2


def test_basis_residual_zero_and_independent():
    rnd = random.Random(7)
    for _ in range(20):
        n = rnd.randint(1, 2)
        r0 = rand_int_eigen_residue(rnd, n)
        a1 = r0 * (1 / x)
        w = rand_const_invertible(rnd, n)
        a2 = gauge_act(w, a1)
        s = SylvesterSystem(a1, a2)
        try:
            sol = rational_solutions(s)
        except NeedsUserBound:
            continue
        assert sol.dimension <= n * n
        for m in sol.basis:
            assert sylvester_residual(m, s).is_zero()
        d = reduce_den(sol.basis)
        rows = [[c for e in (m * d).column_stack() for c in e.num.coeffs + (0,) * 12][: n * n * 12] for m in sol.basis]
        assert rational_rank(rows) == sol.dimension


def reduce_den(basis):
    return RatFn(reduce(poly_lcm, (b.denominator() for b in basis), Poly.const(1)))


def test_equivalence_examples():
    a = MatRF([[1 / x, 1], [0, 2 / x]])
    assert equivalent(a, a) == MatRF.identity(2)
    assert equivalent(ZERO1, MatRF([[1 / x]])) == MatRF([[x]])
    res = decide_equivalence(ZERO1, MatRF([[1 / (2 * x)]]))
    assert res.witness is None and res.method == "empty"
    with pytest.raises(DimensionMismatch):
        equivalent(ZERO1, MatRF.zero(2))


def test_is_trivial_examples():
    assert is_trivial(MatRF.zero(2)) == MatRF.identity(2)
    assert is_trivial(MatRF([[1 / x]])) == MatRF([[x]])
    res = decide_equivalence(MatRF.zero(2), UNIP)
    assert res.witness is None and res.method == "generic-zero" and res.solution_dimension == 2
    assert len(vector_rational_solutions(UNIP)) == 1


def test_trivial_witness_is_fundamental():
    rnd = random.Random(8)
    for _ in range(10):
        u = rand_invertible(rnd, 2, 1, 1.0)
        a = gauge_act(u, MatRF.zero(2))
        try:
            w = is_trivial(a)
        except NeedsUserBound:
            continue
        assert w is not None and w.derive() == a @ w


def test_symmetry_and_transitivity():
    rnd = random.Random(9)
    checked = 0
    for _ in range(30):
        n = rnd.randint(1, 2)
        a = rand_int_eigen_residue(rnd, n) * (1 / x)
        b = gauge_act(rand_const_invertible(rnd, n), a)
        c = gauge_act(rand_const_invertible(rnd, n), b)
        try:
            u, v = equivalent(a, b), equivalent(b, c)
        except (NeedsUserBound, Inconclusive):
            continue
        assert u is not None and v is not None
        assert gauge_act(u, a) == b and gauge_act(v, b) == c
        assert gauge_act(u.inverse(), b) == a
        assert gauge_act(v @ u, a) == c
        checked += 1
    assert checked >= 10


def test_seed_and_jobs_do_not_change_result():
    a = MatRF([[0, 0], [0, 0]])
    b = MatRF([[1 / x, 0], [0, 1 / (x - 1)]])
    r1 = decide_equivalence(a, b, seed=1, jobs=1)
    r2 = decide_equivalence(a, b, seed=1, jobs=4)
    assert r1.witness == r2.witness and r1.method == r2.method
    assert gauge_act(r1.witness, a) == b
