import random

import pytest

from helpers import rand_invertible, rand_mat
from pvgauge import GaugeClass, HPair, MatRF, RatFn, conjugation_action_check, delta_elem, gauge_act, h_identity, h_inv, h_mul
from pvgauge.errors import DimensionMismatch, SingularMatrix

x = RatFn.x()
I2 = MatRF.identity(2)
ZERO2 = MatRF.zero(2)


def test_gauge_act_examples():
    a = MatRF([[1, x], [1 / x, 0]])
    assert gauge_act(I2, a) == a
    assert gauge_act(MatRF.diag(x, 1), ZERO2) == MatRF.diag(1 / x, 0)
    u, v, a = MatRF([[1, x], [0, 1]]), MatRF.diag(x, 1), MatRF([[0, 1], [0, 0]])
    assert gauge_act(u, gauge_act(v, a)) == gauge_act(u @ v, a)


def test_gauge_act_errors():
    with pytest.raises(SingularMatrix):
        gauge_act(MatRF([[1, x], [1, x]]), ZERO2)
    with pytest.raises(DimensionMismatch):
        gauge_act(I2, MatRF.zero(3))


def test_h_mul_examples():
    b, g = MatRF([[x, 1], [0, 1 / x]]), MatRF([[1, x], [0, 2]])
    assert h_mul(h_identity(2), HPair(b, g)) == HPair(b, g)
    p = HPair(MatRF([[1, 0], [x, 1]]), MatRF.diag(x, 1))
    assert h_mul(p, h_inv(p)) == h_identity(2)
    q = h_mul(HPair(MatRF([[0]]), MatRF([[x]])), HPair(MatRF([[5]]), MatRF([[1]])))
    assert q == HPair(MatRF([[5]]), MatRF([[x]]))
    with pytest.raises(DimensionMismatch):
        h_mul(h_identity(1), h_identity(2))


def test_hpair_requires_invertible_f():
    with pytest.raises(SingularMatrix):
        HPair(ZERO2, ZERO2)


def test_h_inv_examples():
    assert h_inv(h_identity(2)) == h_identity(2)
    a = MatRF([[x, 1], [2, 0]])
    assert h_inv(HPair(a, I2)) == HPair(-a, I2)
    assert h_inv(HPair(MatRF([[1]]), MatRF([[x]]))) == HPair(MatRF([[-1]]), MatRF([[1 / x]]))


def test_delta_elem_examples():
    assert delta_elem(I2) == h_identity(2)
    assert delta_elem(MatRF.diag(x, 1)) == HPair(MatRF.diag(1 / x, 0), MatRF.diag(x, 1))
    u, v = MatRF([[1, x], [0, 1]]), MatRF.diag(x, 1)
    assert h_mul(delta_elem(u), delta_elem(v)) == delta_elem(u @ v)


def test_conjugation_action_examples():
    a = MatRF([[x, 1], [0, 3]])
    assert conjugation_action_check(I2, a) == a
    assert conjugation_action_check(MatRF.diag(x, 1), ZERO2) == MatRF.diag(1 / x, 0)
    assert conjugation_action_check(MatRF([[x * x]]), MatRF([[1 / x]])) == MatRF([[3 / x]])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_action_and_delta_laws_random(n):
    rnd = random.Random(n)
    for _ in range(15):
        u, v = rand_invertible(rnd, n), rand_invertible(rnd, n)
        a = rand_mat(rnd, n)
        assert gauge_act(u @ v, a) == gauge_act(u, gauge_act(v, a))
        assert h_inv(delta_elem(u)) == delta_elem(u.inverse())
        assert conjugation_action_check(u, a) == gauge_act(u, a)
        p, q = HPair(a, u), HPair(rand_mat(rnd, n), MatRF.identity(n))
        assert h_mul(h_mul(p, q), h_inv(p)).f == MatRF.identity(n)


def test_gauge_class_transform():
    c = GaugeClass(MatRF([[0]]))
    assert c.n == 1
    assert c.transform(MatRF([[x]])).rep == MatRF([[1 / x]])
