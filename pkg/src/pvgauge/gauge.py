"""Gauge action of GL_n(Q(x)) on M_n(Q(x)) and the group H_n of pairs (A, F)."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import MatRF
from .errors import DimensionMismatch, SingularMatrix

__all__ = [
    "HPair",
    "GaugeClass",
    "gauge_act",
    "h_mul",
    "h_inv",
    "h_identity",
    "delta_elem",
    "conjugation_action_check",
]


def gauge_act(u: MatRF, a: MatRF) -> MatRF:
    """Transform the system ``Y' = AY`` by ``Y -> UY``: returns ``U'U^-1 + UAU^-1``."""
    if u.n != a.n:
        raise DimensionMismatch(f"gauge matrix is {u.n}x{u.n}, system is {a.n}x{a.n}")
    u_inv = u.inverse()
    return u.derive() @ u_inv + u @ a @ u_inv


@dataclass(frozen=True)
class HPair:
    """An element ``(A, F)`` of ``M_n x GL_n`` with law ``(A,F)(B,G) = (A + F B F^-1, F G)``."""

    a: MatRF
    f: MatRF

    def __post_init__(self):
        if self.a.n != self.f.n:
            raise DimensionMismatch(f"A is {self.a.n}x{self.a.n} but F is {self.f.n}x{self.f.n}")
        if self.f.det().is_zero():
            raise SingularMatrix("second component of an H_n element must be invertible")

    @classmethod
    def _trusted(cls, a: MatRF, f: MatRF) -> "HPair":
        # products and inverses of valid pairs are valid; skip the determinant
        p = object.__new__(cls)
        object.__setattr__(p, "a", a)
        object.__setattr__(p, "f", f)
        return p

    @property
    def n(self) -> int:
        return self.a.n

    def __matmul__(self, other: "HPair") -> "HPair":
        return h_mul(self, other)

    def __str__(self):
        return f"({self.a}, {self.f})"


def h_identity(n: int) -> HPair:
    return HPair(MatRF.zero(n), MatRF.identity(n))


def h_mul(p: HPair, q: HPair) -> HPair:
    if p.n != q.n:
        raise DimensionMismatch(f"cannot multiply H_{p.n} and H_{q.n} elements")
    f_inv = p.f.inverse()
    return HPair._trusted(p.a + p.f @ q.a @ f_inv, p.f @ q.f)


def h_inv(p: HPair) -> HPair:
    f_inv = p.f.inverse()
    return HPair._trusted(-(f_inv @ p.a @ p.f), f_inv)


def delta_elem(u: MatRF) -> HPair:
    """The element ``(U'U^-1, U)`` of the subgroup Delta_n."""
    return HPair(u.derive() @ u.inverse(), u)


def conjugation_action_check(u: MatRF, a: MatRF) -> MatRF:
    """Compute the gauge action as ``(U'U^-1, U)(A, 1)(0, U^-1)`` inside H_n.

    The second component of the product must be the identity; the first is
    returned and always agrees with :func:`gauge_act`.
    """
    n = a.n
    prod = h_mul(h_mul(delta_elem(u), HPair(a, MatRF.identity(n))), HPair(MatRF.zero(n), u.inverse()))
    if not prod.f.is_identity():
        raise AssertionError(f"second component is {prod.f}, expected the identity")
    return prod.a


@dataclass(frozen=True)
class GaugeClass:
    """A class ``[A]`` held through one representative.

    No canonical representative is computed; use
    :func:`pvgauge.ratsol.equivalent` to compare classes.
    """

    rep: MatRF

    @property
    def n(self) -> int:
        return self.rep.n

    def transform(self, u: MatRF) -> "GaugeClass":
        return GaugeClass(gauge_act(u, self.rep))

    def __str__(self):
        return f"[{self.rep}]"
