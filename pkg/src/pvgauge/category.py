"""Category of gauge classes: objects are classes [A], arrows are intertwiners.

An arrow ``[A1] -> [A2]`` is stored as a concrete matrix M with
``M' = A2 M - M A1``.  Two arrows between the same objects are identified
when their matrices have the same rank over Q(x) (``N = V M U`` with
invertible U, V).

:func:`to_constant_morphism` and :func:`from_constant_morphism` translate
between arrows and constant matrices ``f = F2^-1 M F1`` intertwining the
Galois representations of the two systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .algebra import MatRF
from .closedform import (
    ClosedFormScalar,
    FundamentalMatrix,
    GaloisGen,
    _grid_str,
    cf_matmul,
    param_matrix,
    pm_mul,
    pm_str,
    rep_matrix,
)
from .errors import (
    DimensionMismatch,
    IntertwiningFails,
    NotAnIntertwiner,
    NotConstant,
    NotRational,
    SingularMatrix,
    SourceTargetMismatch,
    UnmappedGenerator,
)
from .gauge import GaugeClass, gauge_act
from .ratsol import SylvesterSystem, sylvester_residual

__all__ = [
    "Obj",
    "Arrow",
    "arrow_new",
    "identity_arrow",
    "arrow_compose",
    "arrow_inverse",
    "arrow_transport",
    "arrow_equal",
    "arrow_add",
    "arrow_scale",
    "to_constant_morphism",
    "from_constant_morphism",
]


@dataclass(frozen=True)
class Obj:
    cls: GaugeClass

    @classmethod
    def of(cls, a: MatRF) -> "Obj":
        return cls(GaugeClass(a))

    @property
    def rep(self) -> MatRF:
        return self.cls.rep

    @property
    def n(self) -> int:
        return self.cls.n

    def __str__(self):
        return str(self.cls)


def _obj(o) -> Obj:
    return o if isinstance(o, Obj) else Obj.of(o)


@dataclass(frozen=True)
class Arrow:
    src: Obj
    dst: Obj
    m: MatRF

    def __str__(self):
        return f"{self.m}: {self.src} -> {self.dst}"


def _checked(src: Obj, dst: Obj, m: MatRF) -> Arrow:
    if not (src.n == dst.n == m.n):
        raise DimensionMismatch("source, target and matrix sizes differ")
    res = sylvester_residual(m, SylvesterSystem(src.rep, dst.rep))
    if not res.is_zero():
        raise NotAnIntertwiner(f"M' - A2 M + M A1 = {res} is not zero", residual=res)
    return Arrow(src, dst, m)


def arrow_new(src, dst, m: MatRF) -> Arrow:
    return _checked(_obj(src), _obj(dst), m)


def identity_arrow(obj) -> Arrow:
    obj = _obj(obj)
    return Arrow(obj, obj, MatRF.identity(obj.n))


def arrow_compose(g: Arrow, f: Arrow) -> Arrow:
    """``g o f`` with matrix ``g.m @ f.m``."""
    if f.dst != g.src:
        raise SourceTargetMismatch(f"cannot compose: target {f.dst} differs from source {g.src}")
    return _checked(f.src, g.dst, g.m @ f.m)


def arrow_inverse(f: Arrow) -> Arrow:
    if f.m.det().is_zero():
        raise SingularMatrix("arrow matrix is not invertible")
    return _checked(f.dst, f.src, f.m.inverse())


def arrow_transport(f: Arrow, u1: MatRF, u2: MatRF) -> Arrow:
    """Move ``f: [A1] -> [A2]`` to representatives ``B_i`` with ``A_i = gauge_act(U_i, B_i)``.

    The transported matrix is ``U2^-1 M U1``, an intertwiner ``[B1] -> [B2]``.
    """
    u1_inv, u2_inv = u1.inverse(), u2.inverse()
    b1 = gauge_act(u1_inv, f.src.rep)
    b2 = gauge_act(u2_inv, f.dst.rep)
    return _checked(Obj.of(b1), Obj.of(b2), u2_inv @ f.m @ u1)


def arrow_equal(f: Arrow, g: Arrow) -> bool:
    if f.src != g.src or f.dst != g.dst:
        raise SourceTargetMismatch("arrows have different endpoints")
    return f.m.rank() == g.m.rank()


def arrow_add(f: Arrow, g: Arrow) -> Arrow:
    if f.src != g.src or f.dst != g.dst:
        raise SourceTargetMismatch("arrows have different endpoints")
    return _checked(f.src, f.dst, f.m + g.m)


def arrow_scale(f: Arrow, c) -> Arrow:
    return _checked(f.src, f.dst, f.m * c)


def _check_fundamental(obj: Obj, fm: FundamentalMatrix, which: str):
    if fm.system != obj.rep:
        raise ValueError(f"{which} is a fundamental matrix of {fm.system}, not of {obj.rep}")


def to_constant_morphism(f: Arrow, f1: FundamentalMatrix, f2: FundamentalMatrix,
                         gens: Iterable[GaloisGen] = ()) -> tuple:
    """The constant matrix ``F2^-1 M F1``.

    For each generator acting on both towers, ``f c1(g) == c2(g) f`` is verified.
    """
    _check_fundamental(f.src, f1, "F1")
    _check_fundamental(f.dst, f2, "F2")
    prod = cf_matmul(cf_matmul(f2.inverse(), f.m), f1.entries)
    for row in prod:
        for e in row:
            if not e.derive().is_zero():
                raise NotConstant(f"F2^-1 M F1 = {_grid_str(prod)} has a nonconstant entry")
    const = tuple(tuple(e.as_constant() for e in r) for r in prod)
    for g in gens:
        try:
            c1, c2 = rep_matrix(f1, g), rep_matrix(f2, g)
        except UnmappedGenerator:
            continue
        if pm_mul(const, c1) != pm_mul(c2, const):
            raise IntertwiningFails(
                f"{g.name}: f c1 = {pm_str(pm_mul(const, c1))} but c2 f = {pm_str(pm_mul(c2, const))}",
                generator=g.name,
            )
    return const


def from_constant_morphism(c, f1: FundamentalMatrix, f2: FundamentalMatrix) -> Arrow:
    """The arrow with matrix ``F2 c F1^-1``; raises NotRational if that leaves Q(x)."""
    cm = param_matrix(c)
    for r in cm:
        for e in r:
            if not e.is_const():
                raise ValueError("constant morphism entries must be rational numbers")
    if len(cm) != f1.n or f1.n != f2.n:
        raise DimensionMismatch("constant matrix and fundamental matrices differ in size")
    cgrid = tuple(tuple(ClosedFormScalar.coerce(e.const_value()) for e in r) for r in cm)
    prod = cf_matmul(cf_matmul(f2.entries, cgrid), f1.inverse())
    try:
        m = MatRF([[e.as_ratfn() for e in r] for r in prod])
    except NotRational as exc:
        raise NotRational(f"F2 c F1^-1 = {_grid_str(prod)} is not rational") from exc
    return _checked(Obj.of(f1.system), Obj.of(f2.system), m)

