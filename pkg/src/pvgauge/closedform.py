"""A computable solvable tower over Q(x) and Galois actions on it.

Elements (:class:`ClosedFormScalar`) are finite sums of terms::

    coeff(x) * params * prod (x - a)^e * exp(r) * prod log(x - b)^m

with ``coeff`` in Q(x), ``params`` a monomial in formal parameters, each
``0 < e < 1`` rational (integer parts are folded into ``coeff``), ``r`` in
Q(x) with no constant term, and ``m >= 1``.  Galois generators act by
multiplying radicals and exponentials by unit constants and shifting
logarithms by constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .algebra import MatRF, Poly, RatFn, as_rat, factor
from .errors import (
    DimensionMismatch,
    NonRationalResidueOrPole,
    NotConstant,
    NotRational,
    SingularMatrix,
    UnmappedGenerator,
)
from .gauge import gauge_act
from .params import ParamPoly, _mono_mul

__all__ = [
    "Signature",
    "ClosedFormScalar",
    "FundamentalMatrix",
    "GaloisGen",
    "Representation",
    "cf_derive",
    "cf_power",
    "cf_exp",
    "cf_log",
    "integrate_rational",
    "fundamental_for_diagonal",
    "fundamental_2x2_triangular",
    "galois_act",
    "rep_matrix",
    "representation",
    "system_from_fundamental",
    "rep_conjugation_check",
    "param_matrix",
    "pm_mul",
    "pm_det",
    "pm_str",
    "cf_matmul",
    "cf_det",
    "cf_inverse",
    "cf_matderive",
]

_ONE_RF = RatFn.coerce(1)
_ZERO_RF = RatFn.coerce(0)


def _exp_constant_part(r: RatFn) -> Fraction:
    q, _ = divmod(r.num, r.den)
    return q.coeff(0)


def _rf_key(r: RatFn):
    return (r.num.coeffs, r.den.coeffs)


@dataclass(frozen=True)
class Signature:
    """The transcendental part of a basic term."""

    powers: tuple = ()  # ((alpha, e), ...) with 0 < e < 1, sorted by alpha
    exp: RatFn = _ZERO_RF
    logs: tuple = ()  # ((beta, m), ...) with m >= 1, sorted by beta

    def is_trivial(self) -> bool:
        return not self.powers and self.exp.is_zero() and not self.logs

    def sort_key(self):
        return (len(self.logs), self.logs, self.powers, _rf_key(self.exp))

    def __mul__(self, other: "Signature"):
        """Return ``(signature, rational factor)`` for the product."""
        extra = _ONE_RF
        pw = dict(self.powers)
        for a, e in other.powers:
            s = pw.get(a, Fraction(0)) + e
            if s >= 1:
                s -= 1
                extra = extra * RatFn.coerce(Poly.linear(a))
            if s:
                pw[a] = s
            else:
                pw.pop(a, None)
        lg = dict(self.logs)
        for b, m in other.logs:
            lg[b] = lg.get(b, 0) + m
        sig = Signature(tuple(sorted(pw.items())), self.exp + other.exp, tuple(sorted(lg.items())))
        return sig, extra

    def __str__(self):
        parts = []
        for a, e in self.powers:
            parts.append(f"{_shift_str(a)}^({e})")
        if not self.exp.is_zero():
            parts.append(f"exp({self.exp})")
        for b, m in self.logs:
            lg = f"log({_lin_str(b)})"
            parts.append(lg if m == 1 else f"{lg}^{m}")
        return "*".join(parts)


def _lin_str(a: Fraction) -> str:
    return str(Poly.linear(a))


def _shift_str(a: Fraction) -> str:
    return "x" if a == 0 else f"({_lin_str(a)})"


_TRIVIAL = Signature()


class ClosedFormScalar:
    """Element of the tower; ``terms`` maps ``(Signature, param monomial)`` to a nonzero RatFn."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    @classmethod
    def coerce(cls, v) -> "ClosedFormScalar":
        if isinstance(v, ClosedFormScalar):
            return v
        if isinstance(v, ParamPoly):
            return cls({(_TRIVIAL, m): RatFn.coerce(c) for m, c in v.terms.items()})
        r = v if isinstance(v, RatFn) else RatFn.coerce(v)
        return cls({(_TRIVIAL, ()): r})

    @classmethod
    def from_signature(cls, sig: Signature, coeff=1) -> "ClosedFormScalar":
        return cls({(sig, ()): RatFn.coerce(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (RatFn, int, Fraction, ParamPoly, Poly)):
            other = ClosedFormScalar.coerce(other)
        if not isinstance(other, ClosedFormScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _sorted(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1]))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for (sig, mono), c in self._sorted():
            factors = []
            cs = str(c)
            pp = str(ParamPoly({mono: Fraction(1)})) if mono else ""
            neg = False
            if c.is_const():
                v = c.const_value()
                neg = v < 0
                a = -v if neg else v
                if a != 1 or (not pp and sig.is_trivial()):
                    factors.append(str(a))
            else:
                factors.append(cs if c.num.n_terms() == 1 and c.den.is_one() else f"({cs})")
            if pp:
                factors.append(pp)
            if not sig.is_trivial():
                factors.append(str(sig))
            body = "*".join(factors)
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"ClosedFormScalar({str(self)!r})"

    def __neg__(self):
        return ClosedFormScalar({k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        other = _cf(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return ClosedFormScalar(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _cf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ClosedFormScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (RatFn, int, Fraction, Poly)):
            r = RatFn.coerce(other)
            return ClosedFormScalar({k: v * r for k, v in self.terms.items()})
        other = _cf(other)
        if other is None:
            return NotImplemented
        out = {}
        for (s1, m1), c1 in self.terms.items():
            for (s2, m2), c2 in other.terms.items():
                sig, extra = s1 * s2
                key = (sig, _mono_mul(m1, m2))
                val = c1 * c2 * extra
                out[key] = out[key] + val if key in out else val
        return ClosedFormScalar(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.unit_inverse() ** (-k)
        result = ClosedFormScalar.coerce(1)
        for _ in range(k):
            result = result * self
        return result

    def derive(self) -> "ClosedFormScalar":
        out = ClosedFormScalar()
        for (sig, mono), c in self.terms.items():
            # (x-a)^e and exp(r) contribute a rational logarithmic derivative
            mult = _ZERO_RF
            for a, e in sig.powers:
                mult = mult + RatFn(Poly.const(e), Poly.linear(a))
            if not sig.exp.is_zero():
                mult = mult + sig.exp.derive()
            out = out + ClosedFormScalar({(sig, mono): c.derive() + c * mult})
            for idx, (b, m) in enumerate(sig.logs):
                logs = list(sig.logs)
                if m == 1:
                    logs.pop(idx)
                else:
                    logs[idx] = (b, m - 1)
                nsig = Signature(sig.powers, sig.exp, tuple(logs))
                out = out + ClosedFormScalar({(nsig, mono): c * RatFn(Poly.const(m), Poly.linear(b))})
        return out

    def is_rational(self) -> bool:
        return all(sig.is_trivial() and not mono for sig, mono in self.terms)

    def as_ratfn(self) -> RatFn:
        if not self.is_rational():
            raise NotRational(f"{self} is not in Q(x)")
        return self.terms.get((_TRIVIAL, ()), _ZERO_RF)

    def is_constant(self) -> bool:
        return all(sig.is_trivial() and c.is_const() for (sig, _), c in self.terms.items())

    def as_constant(self) -> ParamPoly:
        if not self.is_constant():
            raise NotConstant(f"{self} is not a constant")
        return ParamPoly({mono: c.const_value() for (_, mono), c in self.terms.items()})

    def unit_inverse(self) -> "ClosedFormScalar":
        """Inverse of a single term without logarithms and with a unit parameter part."""
        if len(self.terms) != 1:
            raise ArithmeticError(f"{self} is not a single term; cannot invert in the tower")
        ((sig, mono), c), = self.terms.items()
        if sig.logs:
            raise ArithmeticError(f"{self} involves logarithms; cannot invert in the tower")
        inv_mono = ParamPoly({mono: Fraction(1)}).inverse() if mono else ParamPoly.const(1)
        extra = c.inverse()
        powers = []
        for a, e in sig.powers:
            powers.append((a, 1 - e))
            extra = extra * RatFn(Poly.const(1), Poly.linear(a))
        nsig = Signature(tuple(powers), -sig.exp, ())
        return ClosedFormScalar.from_signature(nsig, extra) * inv_mono


def _cf(v) -> Optional[ClosedFormScalar]:
    if isinstance(v, ClosedFormScalar):
        return v
    if isinstance(v, (RatFn, int, Fraction, Poly, ParamPoly)):
        return ClosedFormScalar.coerce(v)
    return None


def cf_power(alpha, e) -> ClosedFormScalar:
    """``(x - alpha)^e`` for rational ``e``."""
    alpha, e = as_rat(alpha), as_rat(e)
    whole = math.floor(e)
    frac = e - whole
    coeff = RatFn.coerce(Poly.linear(alpha)) ** whole
    if not frac:
        return ClosedFormScalar.coerce(coeff)
    return ClosedFormScalar.from_signature(Signature(((alpha, frac),)), coeff)


def cf_exp(r) -> ClosedFormScalar:
    """``exp(r)`` for ``r`` in Q(x) without constant term."""
    r = RatFn.coerce(r) if not isinstance(r, RatFn) else r
    if _exp_constant_part(r):
        raise ValueError(f"exp({r}): strip the constant term (it is a transcendental constant)")
    if r.is_zero():
        return ClosedFormScalar.coerce(1)
    return ClosedFormScalar.from_signature(Signature(exp=r))


def cf_log(beta=0) -> ClosedFormScalar:
    """``log(x - beta)``."""
    return ClosedFormScalar.from_signature(Signature(logs=((as_rat(beta), 1),)))


def cf_derive(s) -> ClosedFormScalar:
    return ClosedFormScalar.coerce(s).derive()


# ---------------------------------------------------------------------------
# Matrices of closed-form scalars
# ---------------------------------------------------------------------------


def _grid(entries) -> tuple:
    if isinstance(entries, FundamentalMatrix):
        return entries.entries
    if isinstance(entries, MatRF):
        return tuple(tuple(ClosedFormScalar.coerce(e) for e in r) for r in entries.rows)
    rows = [list(r) for r in entries]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("closed-form matrix must be square")
    return tuple(tuple(ClosedFormScalar.coerce(e) for e in r) for r in rows)


def cf_matmul(a, b) -> tuple:
    a, b = _grid(a), _grid(b)
    if len(a) != len(b):
        raise DimensionMismatch(f"{len(a)}x{len(a)} vs {len(b)}x{len(b)}")
    cols = list(zip(*b))
    return tuple(
        tuple(sum((u * v for u, v in zip(r, c) if u and v), ClosedFormScalar()) for c in cols) for r in a
    )


def cf_det(a) -> ClosedFormScalar:
    a = _grid(a)
    n = len(a)
    if n == 1:
        return a[0][0]
    total = ClosedFormScalar()
    for j in range(n):
        if not a[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in a[1:]]
        term = a[0][j] * cf_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def cf_inverse(a) -> tuple:
    """Inverse via the adjugate; the determinant must be a single invertible term."""
    a = _grid(a)
    n = len(a)
    det = cf_det(a)
    if det.is_zero():
        raise SingularMatrix("closed-form determinant is zero")
    inv_det = det.unit_inverse()
    if n == 1:
        return ((inv_det,),)
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(a) if k != i]
            c = cf_det(minor)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return tuple(tuple(e * inv_det for e in r) for r in adj)


def cf_matderive(a) -> tuple:
    return tuple(tuple(e.derive() for e in r) for r in _grid(a))


def _grid_str(g) -> str:
    return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in g) + "]"


# ---------------------------------------------------------------------------
# Fundamental matrices
# ---------------------------------------------------------------------------


class FundamentalMatrix:
    """Invertible F over the tower with ``F' = system F``; checked on construction."""

    __slots__ = ("entries", "system")

    def __init__(self, entries, system: MatRF):
        g = _grid(entries)
        if len(g) != system.n:
            raise DimensionMismatch(f"F is {len(g)}x{len(g)}, system is {system.n}x{system.n}")
        lhs = cf_matderive(g)
        rhs = cf_matmul(system, g)
        if lhs != rhs:
            raise ValueError(f"F' != A F for F = {_grid_str(g)} and A = {system}")
        if cf_det(g).is_zero():
            raise SingularMatrix("fundamental matrix must be invertible")
        self.entries = g
        self.system = system

    @classmethod
    def from_entries(cls, entries) -> "FundamentalMatrix":
        g = _grid(entries)
        return cls(g, system_from_fundamental(g))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, FundamentalMatrix):
            return NotImplemented
        return self.entries == other.entries and self.system == other.system

    def __hash__(self):
        return hash((self.entries, self.system))

    def __str__(self):
        return _grid_str(self.entries)

    def __repr__(self):
        return f"FundamentalMatrix({str(self)!r})"

    def det(self) -> ClosedFormScalar:
        return cf_det(self.entries)

    def inverse(self) -> tuple:
        return cf_inverse(self.entries)

    def gauge(self, w: MatRF) -> "FundamentalMatrix":
        """``W F``, a fundamental matrix of ``gauge_act(W, system)``."""
        return FundamentalMatrix(cf_matmul(w, self.entries), gauge_act(w, self.system))

    def right_constant(self, gamma) -> "FundamentalMatrix":
        """``F gamma`` for an invertible rational constant matrix gamma."""
        gm = _const_matrix(gamma)
        return FundamentalMatrix(cf_matmul(self.entries, gm), self.system)


def _const_matrix(gamma) -> MatRF:
    gm = gamma if isinstance(gamma, MatRF) else MatRF(gamma)
    if not all(e.is_const() for e in gm.entries()):
        raise ValueError("gamma must have constant rational entries")
    if gm.det().is_zero():
        raise SingularMatrix("gamma must be invertible")
    return gm


def system_from_fundamental(f) -> MatRF:
    """``D = F' F^-1``; raises NotRational if some entry leaves Q(x)."""
    g = _grid(f)
    d = cf_matmul(cf_matderive(g), cf_inverse(g))
    try:
        return MatRF([[e.as_ratfn() for e in r] for r in d])
    except NotRational as exc:
        raise NotRational(f"F'F^-1 = {_grid_str(d)} is not rational") from exc


def integrate_rational(a: RatFn):
    """Split ``integral a`` as ``rho + sum e_j log(x - b_j)``.

    Returns ``(rho, ((b_j, e_j), ...))`` with rho in Q(x) having no constant
    term.  Every pole must be rational, so every residue is rational too.
    """
    a = RatFn.coerce(a)
    q, r = divmod(a.num, a.den)
    rho = RatFn.coerce(Poly([0] + [q.coeffs[k] / (k + 1) for k in range(len(q.coeffs))]))
    logs = []
    if r.is_zero():
        return rho, ()
    d = a.den
    for f, mult in factor(d):
        if f.degree != 1:
            raise NonRationalResidueOrPole(f"pole at a root of {f}, which is not rational")
        beta = -f.coeffs[0]
        num_s = r.shift(beta).coeffs
        den_s = d.shift(beta).coeffs[mult:]
        # power-series quotient num_s / den_s up to order mult-1
        s = []
        for j in range(mult):
            acc = num_s[j] if j < len(num_s) else Fraction(0)
            for i in range(j):
                acc -= s[i] * (den_s[j - i] if j - i < len(den_s) else 0)
            s.append(acc / den_s[0])
        for k in range(2, mult + 1):
            c = s[mult - k]
            if c:
                rho = rho + RatFn(Poly.const(-c / (k - 1)), Poly.linear(beta) ** (k - 1))
        if s[mult - 1]:
            logs.append((beta, s[mult - 1]))
    check = rho.derive()
    for b, e in logs:
        check = check + RatFn(Poly.const(e), Poly.linear(b))
    assert check == a, f"antiderivative check failed for {a}"
    return rho, tuple(logs)


def _exp_of_integral(a: RatFn) -> ClosedFormScalar:
    rho, logs = integrate_rational(a)
    out = cf_exp(rho)
    for b, e in logs:
        out = out * cf_power(b, e)
    return out


def fundamental_for_diagonal(a: MatRF) -> FundamentalMatrix:
    """``diag(exp(integral a_ii))`` for a diagonal system with rational poles."""
    if not a.is_diagonal():
        raise ValueError("system matrix is not diagonal")
    n = a.n
    zero = ClosedFormScalar()
    rows = [[_exp_of_integral(a[i, i]) if i == j else zero for j in range(n)] for i in range(n)]
    return FundamentalMatrix(rows, a)


def fundamental_2x2_triangular(a: MatRF) -> FundamentalMatrix:
    """``[[1, integral a], [0, 1]]`` for the system ``[[0, a], [0, 0]]``."""
    if a.n != 2 or not (a[0, 0].is_zero() and a[1, 0].is_zero() and a[1, 1].is_zero()):
        raise ValueError("expected a system of the shape [[0, a], [0, 0]]")
    rho, logs = integrate_rational(a[0, 1])
    prim = ClosedFormScalar.coerce(rho)
    for b, e in logs:
        prim = prim + cf_log(b) * e
    one, zero = ClosedFormScalar.coerce(1), ClosedFormScalar()
    return FundamentalMatrix([[one, prim], [zero, one]], a)


# ---------------------------------------------------------------------------
# Galois generators
# ---------------------------------------------------------------------------


def _table(items, key_conv) -> tuple:
    if isinstance(items, dict):
        items = items.items()
    return tuple(sorted(((key_conv(k), ParamPoly.coerce(v)) for k, v in items), key=lambda kv: _keysort(kv[0])))


def _keysort(k):
    if isinstance(k, RatFn):
        return _rf_key(k)
    return k


def _pow_key(k):
    a, e = k
    a, e = as_rat(a), as_rat(e)
    e = e - math.floor(e)
    if not e:
        raise ValueError("radical generators need a non-integer exponent")
    return (a, e)


def _exp_key(r):
    r = r if isinstance(r, RatFn) else RatFn.coerce(r)
    if r.is_zero() or _exp_constant_part(r):
        raise ValueError(f"exp({r}) is not a valid tower generator")
    return r


@dataclass(frozen=True)
class GaloisGen:
    """A differential automorphism given on tower generators.

    ``powers``: ``(alpha, e) -> mu`` meaning ``(x-alpha)^e -> mu (x-alpha)^e``;
    ``exps``: ``r -> chi`` meaning ``exp(r) -> chi exp(r)``;
    ``logs``: ``beta -> c`` meaning ``log(x-beta) -> log(x-beta) + c``.
    Multipliers must be units of the parameter ring.
    """

    name: str
    powers: tuple = ()
    exps: tuple = ()
    logs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "powers", _table(self.powers, _pow_key))
        object.__setattr__(self, "exps", _table(self.exps, _exp_key))
        object.__setattr__(self, "logs", _table(self.logs, as_rat))
        for (a, e), mu in self.powers:
            if not mu.is_unit():
                raise ValueError(f"{self.name}: multiplier {mu} of (x-{a})^{e} is not a unit")
            if mu ** e.denominator != ParamPoly.const(1):
                raise ValueError(
                    f"{self.name}: multiplier {mu} of (x-{a})^{e} must satisfy mu^{e.denominator} = 1"
                )
        for r, chi in self.exps:
            if not chi.is_unit():
                raise ValueError(f"{self.name}: multiplier {chi} of exp({r}) is not a unit")

    @classmethod
    def identity(cls, name: str = "id") -> "GaloisGen":
        return cls(name)

    def compose(self, other: "GaloisGen", name: Optional[str] = None) -> "GaloisGen":
        """The automorphism ``self o other`` (apply ``other`` first)."""
        pw = dict(other.powers)
        for k, v in self.powers:
            pw[k] = pw[k] * v if k in pw else v
        ex = dict(other.exps)
        for k, v in self.exps:
            ex[k] = ex[k] * v if k in ex else v
        lg = dict(other.logs)
        for k, v in self.logs:
            lg[k] = lg[k] + v if k in lg else v
        return GaloisGen(name or f"{self.name}*{other.name}", pw, ex, lg)

    def _power_mult(self, a, e) -> ParamPoly:
        for (a0, e0), mu in self.powers:
            if a0 == a:
                k = e / e0
                if k.denominator == 1:
                    return mu ** int(k)
        raise UnmappedGenerator(f"{self.name} does not act on ({_lin_str(a)})^({e})")

    def _exp_mult(self, r: RatFn) -> ParamPoly:
        for r0, chi in self.exps:
            k = r / r0
            if k.is_const() and k.const_value().denominator == 1:
                return chi ** int(k.const_value())
        raise UnmappedGenerator(f"{self.name} does not act on exp({r})")

    def _log_shift(self, b) -> ParamPoly:
        for b0, c in self.logs:
            if b0 == b:
                return c
        raise UnmappedGenerator(f"{self.name} does not act on log({_lin_str(b)})")

    def act(self, s) -> ClosedFormScalar:
        s = ClosedFormScalar.coerce(s)
        out = ClosedFormScalar()
        for (sig, mono), c in s.terms.items():
            mult = ParamPoly.const(1)
            for a, e in sig.powers:
                mult = mult * self._power_mult(a, e)
            if not sig.exp.is_zero():
                mult = mult * self._exp_mult(sig.exp)
            base = ClosedFormScalar({(Signature(sig.powers, sig.exp, ()), mono): c}) * mult
            for b, m in sig.logs:
                shifted = cf_log(b) + self._log_shift(b)
                base = base * (shifted**m)
            out = out + base
        return out


def galois_act(g: GaloisGen, s):
    """Apply g to a scalar, a closed-form matrix or a FundamentalMatrix (entrywise)."""
    if isinstance(s, FundamentalMatrix):
        return tuple(tuple(g.act(e) for e in r) for r in s.entries)
    if isinstance(s, (tuple, list)):
        return tuple(tuple(g.act(e) for e in r) for r in s)
    return g.act(s)


def param_matrix(rows) -> tuple:
    return tuple(tuple(ParamPoly.coerce(e) for e in r) for r in rows)


def pm_mul(a, b) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(sum((u * v for u, v in zip(r, c)), ParamPoly()) for c in cols) for r in a)


def pm_det(a) -> ParamPoly:
    n = len(a)
    if n == 1:
        return a[0][0]
    total = ParamPoly()
    for j in range(n):
        if a[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in a[1:]]
        term = a[0][j] * pm_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def pm_str(a) -> str:
    return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in a) + "]"


def rep_matrix(f: FundamentalMatrix, g: GaloisGen) -> tuple:
    """The constant matrix c with ``g(F) = F c``."""
    image = galois_act(g, f)
    c = cf_matmul(f.inverse(), image)
    try:
        out = tuple(tuple(e.as_constant() for e in r) for r in c)
    except NotConstant as exc:
        raise NotConstant(f"{g.name}: F^-1 g(F) = {_grid_str(c)} is not constant") from exc
    if not pm_det(out).is_unit():
        raise NotConstant(f"{g.name}: representation matrix {pm_str(out)} is not invertible")
    return out


@dataclass(frozen=True)
class Representation:
    images: tuple  # ((GaloisGen, param matrix), ...)

    def __iter__(self):
        return iter(self.images)

    def matrix(self, name: str) -> tuple:
        for g, m in self.images:
            if g.name == name:
                return m
        raise KeyError(name)


def representation(f: FundamentalMatrix, gens: Iterable[GaloisGen]) -> Representation:
    return Representation(tuple((g, rep_matrix(f, g)) for g in gens))


def rep_conjugation_check(f: FundamentalMatrix, gamma, g: GaloisGen):
    """``(rep(F gamma), gamma^-1 rep(F) gamma)``; the two always agree."""
    gm = _const_matrix(gamma)
    gam = param_matrix([[e.const_value() for e in r] for r in gm.rows])
    gam_inv = param_matrix([[e.const_value() for e in r] for r in gm.inverse().rows])
    left = rep_matrix(f.right_constant(gm), g)
    right = pm_mul(pm_mul(gam_inv, rep_matrix(f, g)), gam)
    return left, right
