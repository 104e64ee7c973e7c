import random
from fractions import Fraction

import pytest

from helpers import rand_invertible
from pvgauge import (
    ClosedFormScalar,
    FundamentalMatrix,
    GaloisGen,
    MatRF,
    Obj,
    RatFn,
    arrow_add,
    arrow_compose,
    arrow_equal,
    arrow_inverse,
    arrow_new,
    arrow_scale,
    arrow_transport,
    cf_log,
    cf_power,
    from_constant_morphism,
    identity_arrow,
    param,
    to_constant_morphism,
)
from pvgauge.closedform import param_matrix
from pvgauge.errors import (
    NotAnIntertwiner,
    NotRational,
    SingularMatrix,
    SourceTargetMismatch,
)

x = RatFn.x()
A0, AX, A2X = MatRF([[0]]), MatRF([[1 / x]]), MatRF([[2 / x]])
ONE, ZERO = ClosedFormScalar.coerce(1), ClosedFormScalar()
UNIP = MatRF([[0, 1 / x], [0, 0]])
UNIP_F = FundamentalMatrix.from_entries([[ONE, cf_log(0)], [ZERO, ONE]])
F_ONE = FundamentalMatrix.from_entries([[ONE]])
F_X = FundamentalMatrix.from_entries([[ClosedFormScalar.coerce(x)]])


def test_arrow_new_examples():
    a = MatRF([[1 / x, 0], [1, 0]])
    assert identity_arrow(a) == arrow_new(a, a, MatRF.identity(2))
    f = arrow_new(A0, AX, MatRF([[x]]))
    assert f.src == Obj.of(A0) and f.dst == Obj.of(AX)
    with pytest.raises(NotAnIntertwiner) as err:
        arrow_new(A0, AX, MatRF([[1]]))
    assert err.value.residual == MatRF([[-1 / x]])


def test_compose_examples():
    f = arrow_new(A0, AX, MatRF([[x]]))
    g = arrow_new(AX, A2X, MatRF([[x]]))
    assert arrow_compose(identity_arrow(AX), f) == f
    assert arrow_compose(f, identity_arrow(A0)) == f
    assert arrow_compose(g, f) == arrow_new(A0, A2X, MatRF([[x * x]]))
    with pytest.raises(SourceTargetMismatch):
        arrow_compose(f, g)


def test_inverse_examples():
    ida = identity_arrow(AX)
    assert arrow_inverse(ida) == ida
    f = arrow_new(A0, AX, MatRF([[x]]))
    assert arrow_inverse(f) == arrow_new(AX, A0, MatRF([[1 / x]]))
    assert arrow_compose(arrow_inverse(f), f) == identity_arrow(A0)
    assert arrow_compose(f, arrow_inverse(f)) == identity_arrow(AX)
    with pytest.raises(SingularMatrix):
        arrow_inverse(arrow_new(A0, AX, MatRF([[0]])))


def test_transport_examples():
    f = arrow_new(A0, AX, MatRF([[x]]))
    one = MatRF([[1]])
    assert arrow_transport(f, one, one) == f
    t = arrow_transport(f, one, MatRF([[x]]))
    assert t == arrow_new(A0, A0, one)
    with pytest.raises(SingularMatrix):
        arrow_transport(f, MatRF([[0]]), one)


def test_transport_preserves_rank_random():
    rnd = random.Random(1)
    a = MatRF([[1 / x, 0], [0, 0]])
    f = arrow_new(a, a, MatRF([[1, 0], [0, 0]]))
    for _ in range(10):
        u1, u2 = rand_invertible(rnd, 2, 1), rand_invertible(rnd, 2, 1)
        t = arrow_transport(f, u1, u2)
        assert t.m.rank() == f.m.rank() == 1


def test_arrow_equal_examples():
    f = arrow_new(A0, A0, MatRF([[1]]))
    assert arrow_equal(f, f)
    assert arrow_equal(f, arrow_new(A0, A0, MatRF([[2]])))
    z = MatRF.zero(2)
    assert not arrow_equal(arrow_new(z, z, MatRF([[1, 0], [0, 0]])), arrow_new(z, z, MatRF.identity(2)))
    with pytest.raises(SourceTargetMismatch):
        arrow_equal(f, identity_arrow(AX))


def test_hom_set_linearity():
    z = MatRF.zero(2)
    f = arrow_new(z, UNIP, MatRF([[1, 0], [0, 0]]))
    g = arrow_new(z, UNIP, MatRF([[0, 1], [0, 0]]))
    h = arrow_add(arrow_scale(f, 3), arrow_scale(g, Fraction(-1, 2)))
    assert h.m == MatRF([[3, Fraction(-1, 2)], [0, 0]])


def test_to_constant_morphism_examples():
    assert to_constant_morphism(identity_arrow(AX), F_X, F_X) == param_matrix([[1]])
    f = arrow_new(A0, AX, MatRF([[x]]))
    assert to_constant_morphism(f, F_ONE, F_X) == param_matrix([[1]])
    shift = GaloisGen("shift", logs={0: param("c1")})
    assert to_constant_morphism(identity_arrow(UNIP), UNIP_F, UNIP_F, [shift]) == param_matrix([[1, 0], [0, 1]])


def test_constant_morphism_intertwines_representations():
    w = MatRF.diag(1, 2)
    b = MatRF([[0, 1 / (2 * x)], [0, 0]])
    f = arrow_new(UNIP, b, w)
    fb = FundamentalMatrix.from_entries([[ONE, cf_log(0) * Fraction(1, 2)], [ZERO, ONE]])
    shift = GaloisGen("shift", logs={0: param("c1")})
    assert to_constant_morphism(f, UNIP_F, fb, [shift]) == param_matrix([[1, 0], [0, 2]])


def test_from_constant_morphism_examples():
    assert from_constant_morphism([[1, 0], [0, 1]], UNIP_F, UNIP_F) == identity_arrow(UNIP)
    f = from_constant_morphism([[1]], F_ONE, F_X)
    assert f == arrow_new(A0, AX, MatRF([[x]]))
    sqrt = FundamentalMatrix.from_entries([[cf_power(0, Fraction(1, 2))]])
    with pytest.raises(NotRational):
        from_constant_morphism([[1]], F_ONE, sqrt)


def test_round_trips():
    f = arrow_new(A0, AX, MatRF([[x * 3]]))
    c = to_constant_morphism(f, F_ONE, F_X)
    assert from_constant_morphism(c, F_ONE, F_X) == f
    assert to_constant_morphism(from_constant_morphism(c, F_ONE, F_X), F_ONE, F_X) == c
