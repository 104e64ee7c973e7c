"""Polynomials over Q in named formal parameters.

A parameter is a ``(name, order)`` pair.  ``order == 0`` is a free parameter;
``order == m > 0`` declares a cyclotomic parameter subject to ``z**m == 1``,
and exponents of such a parameter are always reduced modulo ``m``.  These
parameters stand in for constants outside Q.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import as_rat
from .errors import DivisionByZero

__all__ = ["ParamPoly", "param"]


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for var, e in b:
        exps[var] = exps.get(var, 0) + e
    out = []
    for var in sorted(exps):
        e = exps[var]
        if var[1]:
            e %= var[1]
        if e:
            out.append((var, e))
    return tuple(out)


def _mono_str(mono: tuple) -> str:
    return "*".join(name if e == 1 else f"{name}^{e}" for (name, _), e in mono)


class ParamPoly:
    """Sparse polynomial ``{monomial: coefficient}`` in canonical form."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            c = as_rat(terms)
            terms = {(): c} if c else {}
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    @classmethod
    def const(cls, c) -> "ParamPoly":
        return cls(as_rat(c))

    @classmethod
    def var(cls, name: str, cyclotomic: int = 0) -> "ParamPoly":
        if cyclotomic < 0:
            raise ValueError("cyclotomic order must be positive")
        if cyclotomic == 1:
            return cls.const(1)
        return cls({(((name, cyclotomic), 1),): Fraction(1)})

    @classmethod
    def coerce(cls, v) -> "ParamPoly":
        return v if isinstance(v, ParamPoly) else cls.const(v)

    def variables(self) -> set:
        return {var for m in self.terms for var, _ in m}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_const(self) -> bool:
        return all(m == () for m in self.terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} involves parameters")
        return self.terms.get((), Fraction(0))

    def is_unit(self) -> bool:
        """Nonzero rational times a monomial in cyclotomic parameters only."""
        if len(self.terms) != 1:
            return False
        (mono,) = self.terms
        return all(var[1] > 0 for var, _ in mono)

    def inverse(self) -> "ParamPoly":
        if not self.is_unit():
            if not self.terms:
                raise DivisionByZero("inverse of zero")
            raise ArithmeticError(f"{self} is not a unit of the parameter ring")
        ((mono, c),) = self.terms.items()
        inv = tuple((var, (-e) % var[1]) for var, e in mono)
        inv = tuple((v, e) for v, e in inv if e)
        return ParamPoly({inv: 1 / c})

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == ParamPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (-sum(e for _, e in mc[0]), mc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = _mono_str(mono)
            else:
                body = f"{a}*{_mono_str(mono)}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"ParamPoly({str(self)!r})"

    def __neg__(self):
        return ParamPoly({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, ParamPoly):
            if isinstance(other, (int, Fraction)):
                other = ParamPoly.const(other)
            else:
                return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ParamPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ParamPoly):
            if isinstance(other, (int, Fraction)):
                other = ParamPoly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ParamPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ParamPoly):
            if isinstance(other, (int, Fraction)):
                c = as_rat(other)
                return ParamPoly({m: c * a for m, a in self.terms.items()})
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return ParamPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = ParamPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def subs(self, values: dict) -> "ParamPoly":
        """Substitute rationals for some parameters, keyed by name."""
        out = ParamPoly()
        for mono, c in self.terms.items():
            acc = ParamPoly.const(c)
            for var, e in mono:
                if var[0] in values:
                    acc = acc * (as_rat(values[var[0]]) ** e)
                else:
                    acc = acc * ParamPoly({((var, e),): Fraction(1)})
            out = out + acc
        return out


def param(name: str, cyclotomic: int = 0) -> ParamPoly:
    return ParamPoly.var(name, cyclotomic)
