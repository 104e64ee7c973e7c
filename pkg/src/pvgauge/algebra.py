"""Exact arithmetic in the differential field Q(x).

Three value types live here:

* :class:`Poly` -- dense univariate polynomials over Q, lowest degree first.
* :class:`RatFn` -- reduced rational functions ``num/den`` with monic ``den``.
* :class:`MatRF` -- square matrices of :class:`RatFn`.

All values are immutable and kept in canonical form, so ``==`` is structural
equality and hashing is consistent with it.  The derivation is ``d/dx``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    DivisionByZero,
    PoleAtEvaluationPoint,
    SingularMatrix,
)

__all__ = [
    "Poly",
    "RatFn",
    "MatRF",
    "X",
    "as_rat",
    "poly_gcd",
    "poly_lcm",
    "poly_ext_gcd",
    "factor",
    "integer_roots",
    "rational_nullspace",
    "rf_arith",
    "rf_derive",
    "mat_arith",
    "mat_inverse",
    "mat_derive",
    "mat_eval",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rat(c) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    if hasattr(c, "numerator") and hasattr(c, "denominator"):
        return Fraction(int(c.numerator), int(c.denominator))
    raise TypeError(f"cannot interpret {c!r} as an exact rational")


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


class Poly:
    """Dense polynomial over Q; the zero polynomial has no coefficients.

    Stored as integer coefficients ``_z`` (lowest first) over one positive
    common denominator ``_d`` with ``gcd(content(_z), _d) = 1``.  The
    Fraction view ``coeffs`` is built on demand.
    """

    __slots__ = ("_z", "_d", "_c", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        d = 1
        for c in cs:
            d = _lcm(d, c.denominator)
        self._set([c.numerator * (d // c.denominator) for c in cs], d)

    def _set(self, z: list, d: int):
        while z and not z[-1]:
            z.pop()
        if not z:
            d = 1
        elif d != 1:
            g = math.gcd(d, *z)
            if g != 1:
                z = [v // g for v in z]
                d //= g
        self._z, self._d, self._c, self._hash = tuple(z), d, None, None

    @classmethod
    def _zd(cls, z: list, d: int) -> "Poly":
        p = object.__new__(cls)
        if d < 0:
            z, d = [-v for v in z], -d
        p._set(z, d)
        return p

    @classmethod
    def _raw(cls, cs: list) -> "Poly":
        return cls(cs)

    @classmethod
    def const(cls, c) -> "Poly":
        c = as_rat(c)
        return cls._zd([c.numerator], c.denominator)

    @classmethod
    def x(cls) -> "Poly":
        return cls._zd([0, 1], 1)

    @classmethod
    def linear(cls, root) -> "Poly":
        """The monic polynomial ``x - root``."""
        r = as_rat(root)
        return cls._zd([-r.numerator, r.denominator], r.denominator)

    @property
    def coeffs(self) -> tuple:
        if self._c is None:
            d = self._d
            self._c = tuple(Fraction(v, d) for v in self._z)
        return self._c

    @property
    def degree(self) -> int:
        return len(self._z) - 1

    @property
    def lc(self) -> Fraction:
        return Fraction(self._z[-1], self._d) if self._z else _ZERO

    def is_zero(self) -> bool:
        return not self._z

    def is_const(self) -> bool:
        return len(self._z) <= 1

    def is_one(self) -> bool:
        return len(self._z) == 1 and self._z[0] == self._d

    def __bool__(self):
        return bool(self._z)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._d == other._d and self._z == other._z
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Poly", self._z, self._d))
        return self._hash

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        if not self._z:
            return "0"
        parts = []
        cs = self.coeffs
        for k in range(len(cs) - 1, -1, -1):
            c = cs[k]
            if not c:
                continue
            neg = c < 0
            a = -c if neg else c
            if k == 0:
                body = str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def n_terms(self) -> int:
        return sum(1 for c in self._z if c)

    def __neg__(self):
        p = object.__new__(Poly)
        p._z, p._d, p._c, p._hash = tuple(-v for v in self._z), self._d, None, None
        return p

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if not other._z:
            return self
        if not self._z:
            return other
        a, da, b, db = self._z, self._d, other._z, other._d
        if da == db:
            l, fa, fb = da, 1, 1
        else:
            l = _lcm(da, db)
            fa, fb = l // da, l // db
        if len(a) < len(b):
            a, b, fa, fb = b, a, fb, fa
        z = [v * fa for v in a] if fa != 1 else list(a)
        for i, v in enumerate(b):
            z[i] += v * fb
        return Poly._zd(z, l)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_rat(other)
            if not c or not self._z:
                return _ZERO_POLY
            return Poly._zd([v * c.numerator for v in self._z], self._d * c.denominator)
        a, b = self._z, other._z
        if not a or not b:
            return _ZERO_POLY
        z = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    z[i + j] += ai * bj
        return Poly._zd(z, self._d * other._d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        db = other.degree
        if self.degree < db:
            return _ZERO_POLY, self
        # pseudo-division over Z: lb^e * A = q * B + r
        a, b = list(self._z), other._z
        lb = b[-1]
        e = len(a) - db
        q = [0] * e
        for k in range(e - 1, -1, -1):
            c = a[k + db]
            q = [v * lb for v in q]
            a = [v * lb for v in a]
            q[k] = c
            if c:
                for j in range(db + 1):
                    a[k + j] -= c * b[j]
        scale = lb**e * self._d
        quo = Poly._zd(q, scale * 1)
        quo = quo * Fraction(other._d)
        rem = Poly._zd(a[:db], scale) if db > 0 else _ZERO_POLY
        return quo, rem

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "Poly":
        if not self._z or self._z[-1] == self._d:
            return self
        return Poly._zd(list(self._z), self._z[-1])

    def derive(self) -> "Poly":
        return Poly._zd([k * self._z[k] for k in range(1, len(self._z))], self._d)

    def __call__(self, x0):
        x0 = as_rat(x0)
        p, q = x0.numerator, x0.denominator
        # homogeneous Horner: sum z_k p^k q^(n-k)
        acc, qk = 0, 1
        for v in reversed(self._z):
            acc = acc * p + v * qk
            qk *= q
        n = len(self._z)
        return Fraction(acc, self._d * q ** (n - 1)) if n else _ZERO

    def coeff(self, k: int) -> Fraction:
        return Fraction(self._z[k], self._d) if 0 <= k < len(self._z) else _ZERO

    def shift(self, a) -> "Poly":
        """Return ``p(x + a)``."""
        a = as_rat(a)
        result = _ZERO_POLY
        xa = Poly._zd([a.numerator, a.denominator], a.denominator)
        for c in reversed(self.coeffs):
            result = result * xa + c
        return result

    def valuation(self) -> int:
        """Multiplicity of 0 as a root (``-1`` for the zero polynomial)."""
        for k, c in enumerate(self._z):
            if c:
                return k
        return -1


_ZERO_POLY = Poly()


X = Poly.x()


def _primitive_ints(p: Poly) -> list:
    """Integer coefficients of ``p`` scaled to content 1 (lowest first)."""
    g = math.gcd(*p._z)
    return [c // g for c in p._z]


def _int_prem(a: list, b: list) -> list:
    """Primitive part of the pseudo-remainder of ``a`` by ``b`` over Z."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    unit = lb in (1, -1)
    while a and len(a) - 1 >= db:
        c, shift = a[-1], len(a) - 1 - db
        if unit:
            c *= lb
        else:
            a = [lb * v for v in a]
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        while a and not a[-1]:
            a.pop()
        if a and not unit:
            g = math.gcd(*a)
            if g > 1:
                a = [v // g for v in a]
    if a:
        g = math.gcd(*a)
        if g > 1:
            a = [v // g for v in a]
    return a


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) = 0``.

    Runs a primitive remainder sequence on integer coefficients, which keeps
    coefficient growth in check compared with Euclid over Q.
    """
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return Poly.const(1)
    x, y = _primitive_ints(a), _primitive_ints(b)
    if len(x) < len(y):
        x, y = y, x
    while y:
        x, y = y, _int_prem(x, y)
        if len(y) == 1:
            return Poly.const(1)
    return Poly._zd(x, 1).monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly._raw([])
    return (a * b.exquo(poly_gcd(a, b))).monic()


def poly_ext_gcd(a: Poly, b: Poly):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = Poly.const(1), Poly._raw([])
    t0, t1 = Poly._raw([]), Poly.const(1)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def _to_sympy(p: Poly):
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], x, domain="QQ")


def _from_sympy(sp) -> Poly:
    return Poly(Fraction(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs()))


_ROOT_TEST_LIMIT = 10**6


def _divisors(n: int) -> list:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _split_rational_roots(p: Poly):
    """Peel off rational roots; returns ``(linear factors with multiplicity, cofactor)``.

    Returns None when the coefficients are too large for the root test.
    """
    found = []
    v = p.valuation()
    if v:
        found.append((Poly.x(), v))
        p = Poly._zd(list(p._z[v:]), p._d)
    if p.degree < 1:
        return found, p
    z = _primitive_ints(p)
    if abs(z[0]) > _ROOT_TEST_LIMIT or abs(z[-1]) > _ROOT_TEST_LIMIT:
        return None
    cands = sorted({Fraction(s * a, b) for a in _divisors(z[0]) for b in _divisors(z[-1]) for s in (1, -1)})
    for r in cands:
        if p.degree < 1:
            break
        lin = Poly.linear(r)
        k = 0
        while p.degree >= 1 and not p(r):
            p = p.exquo(lin)
            k += 1
        if k:
            found.append((lin, k))
    return found, p


def factor(p: Poly) -> list:
    """Factor over Q into ``[(monic irreducible, multiplicity), ...]``, sorted.

    Rational roots are split off directly; a cofactor of degree four or more
    goes to sympy's factorizer.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree < 1:
        return []
    split = _split_rational_roots(p)
    if split is None:
        out, rest = [], p
    else:
        out, rest = split
    if rest.degree in (2, 3) and split is not None:
        out.append((rest.monic(), 1))
    elif rest.degree >= 2 or (split is None and rest.degree >= 1):
        _, facs = _to_sympy(rest).factor_list()
        out.extend((_from_sympy(f).monic(), int(m)) for f, m in facs)
    elif rest.degree == 1:
        out.append((rest.monic(), 1))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


def integer_roots(p: Poly) -> list:
    """Sorted distinct integer roots of a nonzero polynomial."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    roots = set()
    for f, _ in factor(p):
        if f.degree == 1:
            r = -f.coeffs[0]
            if r.denominator == 1:
                roots.add(int(r))
    return sorted(roots)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RatFn:
    """Element of Q(x) in canonical form: gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None):
        if isinstance(num, RatFn):
            if den is None:
                self.num, self.den, self._hash = num.num, num.den, num._hash
                return
            q = num / RatFn(den)
            self.num, self.den, self._hash = q.num, q.den, None
            return
        n = num if isinstance(num, Poly) else Poly.const(num)
        d = Poly.const(1) if den is None else (den if isinstance(den, Poly) else Poly.const(den))
        if d.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if n.is_zero():
            n, d = Poly._raw([]), Poly.const(1)
        elif not d.is_const():
            g = poly_gcd(n, d)
            if not g.is_one():
                n, d = n.exquo(g), d.exquo(g)
        if d.lc != 1:
            inv = 1 / d.lc
            n, d = n * inv, d * inv
        self.num, self.den, self._hash = n, d, None

    @classmethod
    def _make(cls, num: Poly, den: Poly) -> "RatFn":
        r = object.__new__(cls)
        r.num, r.den, r._hash = num, den, None
        return r

    @classmethod
    def coerce(cls, v) -> "RatFn":
        if isinstance(v, RatFn):
            return v
        if isinstance(v, Poly):
            return cls._make(v, Poly.const(1))
        return cls._make(Poly.const(v), Poly.const(1))

    @classmethod
    def x(cls) -> "RatFn":
        return cls._make(Poly.x(), Poly.const(1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def is_const(self) -> bool:
        return self.den.is_one() and self.num.is_const()

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} is not a constant")
        return self.num.coeff(0)

    def __eq__(self, other):
        if isinstance(other, RatFn):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Poly)):
            return self == RatFn.coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("RatFn", self.num.coeffs, self.den.coeffs))
        return self._hash

    def __repr__(self):
        return f"RatFn({str(self)!r})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        # scale to integer coefficients for display; the value is unchanged
        k = reduce(lambda a, c: a * c.denominator // math.gcd(a, c.denominator), self.num.coeffs + self.den.coeffs, 1)
        num, den = self.num * k, self.den * k
        ns = str(num)
        if num.n_terms() > 1 or (num.degree >= 1 and num.lc != 1):
            ns = f"({ns})"
        ds = str(den)
        if den.n_terms() > 1 or den.lc != 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __neg__(self):
        return RatFn._make(-self.num, self.den)

    def __add__(self, other):
        if not isinstance(other, RatFn):
            if isinstance(other, (int, Fraction, Poly)):
                other = RatFn.coerce(other)
            else:
                return NotImplemented
        if self.den == other.den:
            if self.den.is_one():
                return RatFn._make(self.num + other.num, self.den)
            return RatFn(self.num + other.num, self.den)
        if self.den.is_one():
            return RatFn._make(self.num * other.den + other.num, other.den)
        if other.den.is_one():
            return RatFn._make(self.num + other.num * self.den, self.den)
        g = poly_gcd(self.den, other.den)
        if g.is_one():
            return RatFn._make(self.num * other.den + other.num * self.den, self.den * other.den)
        d1 = self.den.exquo(g)
        d2 = other.den.exquo(g)
        num = self.num * d2 + other.num * d1
        return RatFn(num, d1 * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RatFn):
            if isinstance(other, (int, Fraction, Poly)):
                other = RatFn.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RatFn.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatFn):
            if isinstance(other, (int, Fraction)):
                c = as_rat(other)
                if not c:
                    return RatFn._make(Poly._raw([]), Poly.const(1))
                return RatFn._make(self.num * c, self.den)
            if isinstance(other, Poly):
                other = RatFn.coerce(other)
            else:
                return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatFn._make(Poly._raw([]), Poly.const(1))
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not d2.is_one():
            g = poly_gcd(n1, d2)
            if not g.is_one():
                n1, d2 = n1.exquo(g), d2.exquo(g)
        if not d1.is_one():
            g = poly_gcd(n2, d1)
            if not g.is_one():
                n2, d1 = n2.exquo(g), d1.exquo(g)
        num, den = n1 * n2, d1 * d2
        if den.lc != 1:
            inv = 1 / den.lc
            num, den = num * inv, den * inv
        return RatFn._make(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.num.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        inv = 1 / self.num.lc
        return RatFn._make(self.den * inv, self.num * inv)

    def __truediv__(self, other):
        if not isinstance(other, RatFn):
            if isinstance(other, (int, Fraction, Poly)):
                other = RatFn.coerce(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFn.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFn._make(self.num**k, self.den**k)

    def derive(self) -> "RatFn":
        n, d = self.num, self.den
        if d.is_one():
            return RatFn._make(n.derive(), d)
        return RatFn(n.derive() * d - n * d.derive(), d * d)

    def __call__(self, x0):
        x0 = as_rat(x0)
        dv = self.den(x0)
        if not dv:
            raise PoleAtEvaluationPoint(f"{self} has a pole at x = {x0}")
        return self.num(x0) / dv

    @property
    def degree(self) -> int:
        """Degree at infinity, ``deg num - deg den`` (very negative for zero)."""
        if self.num.is_zero():
            return -(10**9)
        return self.num.degree - self.den.degree

    def split(self):
        """Return ``(polynomial part, proper part)``."""
        q, r = divmod(self.num, self.den)
        return q, RatFn._make(r, self.den) if r else RatFn._make(Poly._raw([]), Poly.const(1))


def rf_arith(a, b, op: str) -> RatFn:
    a, b = RatFn.coerce(a), RatFn.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rf_derive(a) -> RatFn:
    return RatFn.coerce(a).derive()


# ---------------------------------------------------------------------------
# Matrices over Q(x)
# ---------------------------------------------------------------------------


def _bareiss_det(rows: list) -> Poly:
    """Fraction-free determinant of a square polynomial matrix (list of lists of Poly)."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly._raw([])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exquo(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def _common_denominator(entries) -> Poly:
    return reduce(poly_lcm, (e.den for e in entries), Poly.const(1))


def _poly_det(m) -> Poly:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    return _bareiss_det(m)


def _poly_adjugate(m) -> list:
    n = len(m)
    if n == 1:
        return [[Poly.const(1)]]
    if n == 2:
        return [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        r = [a for a in range(3) if a != i]
        for j in range(3):
            c = [b for b in range(3) if b != j]
            minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            cof[j][i] = minor if (i + j) % 2 == 0 else -minor
    return cof


class MatRF:
    """Square matrix over Q(x)."""

    __slots__ = ("rows", "_hash", "_pf", "_inv")

    def __init__(self, rows):
        self._pf = self._inv = None
        if isinstance(rows, MatRF):
            self.rows, self._hash = rows.rows, rows._hash
            return
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0:
            raise DimensionMismatch("matrix must have at least one row")
        for r in rows:
            if len(r) != n:
                raise DimensionMismatch(f"matrix is not square: {n} rows but a row of length {len(r)}")
        self.rows = tuple(tuple(_entry(e) for e in r) for r in rows)
        self._hash = None

    @classmethod
    def _make(cls, rows) -> "MatRF":
        m = object.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        m._hash = None
        m._pf = m._inv = None
        return m

    def _poly_form(self):
        """``(P, d)`` with polynomial rows P and ``self = P / d``."""
        if self._pf is None:
            d = _common_denominator(self.entries())
            if d.is_one():
                pm = [[e.num for e in r] for r in self.rows]
            else:
                pm = [[e.num * d.exquo(e.den) if e.num else e.num for e in r] for r in self.rows]
            self._pf = (pm, d)
        return self._pf

    @classmethod
    def identity(cls, n: int) -> "MatRF":
        one, zero = RatFn.coerce(1), RatFn.coerce(0)
        return cls._make([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "MatRF":
        zero = RatFn.coerce(0)
        return cls._make([[zero] * n for _ in range(n)])

    @classmethod
    def diag(cls, *entries) -> "MatRF":
        n = len(entries)
        zero = RatFn.coerce(0)
        return cls._make([[_entry(entries[i]) if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for r in self.rows:
            yield from r

    def __eq__(self, other):
        if not isinstance(other, MatRF):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"MatRF({str(self)!r})"

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows) + "]"

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries())

    def is_identity(self) -> bool:
        return self == MatRF.identity(self.n)

    def is_diagonal(self) -> bool:
        return all(self.rows[i][j].is_zero() for i in range(self.n) for j in range(self.n) if i != j)

    def _check(self, other):
        if not isinstance(other, MatRF):
            raise TypeError(f"expected MatRF, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")

    def __add__(self, other):
        self._check(other)
        return MatRF._make([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return MatRF._make([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return MatRF._make([[-a for a in r] for r in self.rows])

    def __matmul__(self, other):
        self._check(other)
        p, d = self._poly_form()
        q, e = other._poly_form()
        den = d * e
        cols = list(zip(*q))
        out = []
        for r in p:
            row = []
            for c in cols:
                acc = _ZERO_POLY
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(RatFn(acc, den) if not den.is_one() else RatFn._make(acc, den))
            out.append(row)
        return MatRF._make(out)

    def __mul__(self, scalar):
        if isinstance(scalar, MatRF):
            return self @ scalar
        s = _entry(scalar)
        return MatRF._make([[s * a for a in r] for r in self.rows])

    __rmul__ = __mul__

    def transpose(self) -> "MatRF":
        return MatRF._make(list(zip(*self.rows)))

    def derive(self) -> "MatRF":
        return MatRF._make([[a.derive() for a in r] for r in self.rows])

    def det(self) -> RatFn:
        if self.n == 1:
            return self.rows[0][0]
        p, d = self._poly_form()
        return RatFn(_poly_det(p), d**self.n)

    def inverse(self) -> "MatRF":
        if self._inv is None:
            self._inv = self._compute_inverse()
            self._inv._inv = self
        return self._inv

    def _compute_inverse(self) -> "MatRF":
        n = self.n
        if n <= 3:
            p, d = self._poly_form()
            det = _poly_det(p)
            if det.is_zero():
                raise SingularMatrix("determinant is identically zero")
            return MatRF._make([[RatFn(c * d, det) for c in r] for r in _poly_adjugate(p)])
        return self._ff_inverse()

    def _ff_inverse(self) -> "MatRF":
        # fraction-free Gauss-Jordan on [P | I] with P = d*U polynomial
        n = self.n
        d = _common_denominator(self.entries())
        dr = RatFn.coerce(d)
        zero, one = Poly._raw([]), Poly.const(1)
        aug = [[(e * dr).num for e in r] + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        prev = one
        for k in range(n):
            piv = next((i for i in range(k, n) if not aug[i][k].is_zero()), None)
            if piv is None:
                raise SingularMatrix("determinant is identically zero")
            if piv != k:
                aug[k], aug[piv] = aug[piv], aug[k]
            pk = aug[k]
            for i in range(n):
                if i == k:
                    continue
                row = aug[i]
                a = row[k]
                for j in range(2 * n):
                    if j == k:
                        continue
                    row[j] = (pk[k] * row[j] - a * pk[j]).exquo(prev)
                row[k] = zero
            prev = pk[k]
        # left block is now diag(det', ..., det'); right block holds det' * P^-1
        return MatRF._make(
            [[RatFn(aug[i][n + j] * d, aug[i][i]) for j in range(n)] for i in range(n)]
        )

    def eval(self, x0):
        return [[e(x0) for e in r] for r in self.rows]

    def rank(self) -> int:
        """Rank over the field Q(x)."""
        m = [list(r) for r in self.rows]
        nrows, ncols = len(m), len(m[0])
        rank = 0
        for c in range(ncols):
            piv = next((i for i in range(rank, nrows) if not m[i][c].is_zero()), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            inv = m[rank][c].inverse()
            for i in range(rank + 1, nrows):
                if m[i][c].is_zero():
                    continue
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
            rank += 1
        return rank

    def kron(self, other: "MatRF") -> "MatRF":
        n, k = self.n, other.n
        rows = []
        for i in range(n):
            for p in range(k):
                rows.append([self.rows[i][j] * other.rows[p][q] for j in range(n) for q in range(k)])
        return MatRF._make(rows)

    def column_stack(self) -> list:
        return [self.rows[i][j] for j in range(self.n) for i in range(self.n)]

    @classmethod
    def from_column_stack(cls, vec: Sequence, n: int) -> "MatRF":
        return cls._make([[_entry(vec[j * n + i]) for j in range(n)] for i in range(n)])

    def denominator(self) -> Poly:
        return _common_denominator(self.entries())


def _entry(e) -> RatFn:
    if isinstance(e, RatFn):
        return e
    if isinstance(e, (int, Fraction, Poly)):
        return RatFn.coerce(e)
    if isinstance(e, str):
        return RatFn.coerce(as_rat(e))
    raise TypeError(f"cannot use {e!r} as a matrix entry")


def mat_arith(a: MatRF, b: MatRF, op: str) -> MatRF:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a @ b
    raise ValueError(f"unknown operation {op!r}")


def mat_inverse(u: MatRF) -> MatRF:
    return u.inverse()


def mat_derive(u: MatRF) -> MatRF:
    return u.derive()


def mat_eval(a: MatRF, x0):
    return a.eval(x0)


# ---------------------------------------------------------------------------
# Linear algebra over Q
# ---------------------------------------------------------------------------


def rational_nullspace(rows: list, ncols: int) -> list:
    """Basis of ``{v : rows @ v = 0}`` over Q.

    Rows are brought to reduced row-echelon form; each basis vector has a 1 at
    one free column and 0 at every other free column, so the result depends
    only on the column ordering.
    """
    m = [[as_rat(c) for c in r] for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        prow = [v * inv for v in m[r]]
        m[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [_ZERO] * ncols
        v[f] = _ONE
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def rational_rank(rows: list) -> int:
    if not rows:
        return 0
    ncols = len(rows[0])
    return ncols - len(rational_nullspace(rows, ncols))
