"""Rational solutions of ``M' = A2 M - M A1`` and the decisions built on them.

The matrix equation is vectorized (column stacking) into a first-order
system ``m' = L m`` of size ``n**2``.  Rational solutions are found by an
ansatz ``m = P / D`` where the denominator ``D`` and the degree of ``P`` come
from :func:`denominator_bound`.  The automatic bound is complete when every
finite singularity of ``L`` is a simple pole (first kind) and ``L`` vanishes
at infinity; otherwise :class:`NeedsUserBound` is raised and the caller must
pass a :class:`DegreeBounds` explicitly.

Constants are Q: "no solution" always means "no solution over Q(x)".
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Optional

from .algebra import (
    MatRF,
    Poly,
    RatFn,
    factor,
    integer_roots,
    poly_ext_gcd,
    poly_gcd,
    poly_lcm,
    rational_nullspace,
)
from .errors import DimensionMismatch, Inconclusive, NeedsUserBound
from .params import ParamPoly

__all__ = [
    "SylvesterSystem",
    "DegreeBounds",
    "RatSolBasis",
    "EquivalenceResult",
    "sylvester_residual",
    "vectorize",
    "denominator_bound",
    "vector_bounds",
    "vector_rational_solutions",
    "rational_solutions",
    "decide_equivalence",
    "equivalent",
    "is_trivial",
    "DEFAULT_SEED",
    "DEFAULT_TRIES",
]

DEFAULT_SEED = 0
DEFAULT_TRIES = 8
GENERIC_MAX_N = 3
GENERIC_MAX_BASIS = 6


@dataclass(frozen=True)
class SylvesterSystem:
    """The intertwiner equation ``M' = a2 M - M a1``."""

    a1: MatRF
    a2: MatRF

    def __post_init__(self):
        if self.a1.n != self.a2.n:
            raise DimensionMismatch(f"a1 is {self.a1.n}x{self.a1.n}, a2 is {self.a2.n}x{self.a2.n}")

    @property
    def n(self) -> int:
        return self.a1.n


@dataclass(frozen=True)
class DegreeBounds:
    """Pole-order bound per monic irreducible factor, plus a numerator degree bound.

    Solutions are searched as ``P / prod(f**k)`` with ``deg P <= numerator_degree``.
    """

    pole_orders: tuple  # ((Poly, int), ...) sorted
    numerator_degree: int
    provenance: str = "computed"

    def __post_init__(self):
        po = self.pole_orders
        if isinstance(po, dict):
            po = tuple(po.items())
        po = tuple(sorted(((f.monic(), int(k)) for f, k in po), key=lambda fk: (fk[0].degree, fk[0].coeffs)))
        object.__setattr__(self, "pole_orders", po)
        if any(k < 0 for _, k in po):
            raise ValueError("pole-order bounds must be nonnegative")
        if any(f.degree < 1 for f, _ in po):
            raise ValueError("pole-order keys must be nonconstant polynomials")
        if self.provenance not in ("computed", "user_supplied"):
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def as_dict(self) -> dict:
        return dict(self.pole_orders)

    def denominator(self) -> Poly:
        return reduce(lambda acc, fk: acc * fk[0] ** fk[1], self.pole_orders, Poly.const(1))

    def to_json(self) -> dict:
        return {
            "pole_orders": {str(f): k for f, k in self.pole_orders},
            "numerator_degree": self.numerator_degree,
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class RatSolBasis:
    basis: tuple
    system: SylvesterSystem
    bounds_used: DegreeBounds

    @property
    def dimension(self) -> int:
        return len(self.basis)


def sylvester_residual(m: MatRF, sys: SylvesterSystem) -> MatRF:
    """``M' - A2 M + M A1``; zero exactly when M is an intertwiner."""
    if m.n != sys.n:
        raise DimensionMismatch(f"M is {m.n}x{m.n}, system is {sys.n}x{sys.n}")
    return m.derive() - sys.a2 @ m + m @ sys.a1


def vectorize(sys: SylvesterSystem) -> MatRF:
    """``L = I (x) A2 - A1^T (x) I`` so that ``vec(M)' - L vec(M) = vec(residual)``."""
    eye = MatRF.identity(sys.n)
    return eye.kron(sys.a2) - sys.a1.transpose().kron(eye)


# ---------------------------------------------------------------------------
# Degree bounds
# ---------------------------------------------------------------------------


def _charpoly_mod(mat: list, modulus: Optional[Poly]) -> list:
    """Characteristic polynomial coefficients (constant term first) by Faddeev-LeVerrier.

    Entries are Polys read in Q[x]/(modulus); ``modulus=None`` means plain Q.
    """
    n = len(mat)

    def red(p):
        return p % modulus if modulus is not None else p

    def mm(a, b):
        cols = list(zip(*b))
        return [[red(sum((u * v for u, v in zip(r, c)), Poly())) for c in cols] for r in a]

    coeffs = [Poly()] * (n + 1)
    coeffs[n] = Poly.const(1)
    mk = [[Poly()] * n for _ in range(n)]
    for k in range(1, n + 1):
        prod = mm(mat, mk)
        c_prev = coeffs[n - k + 1]
        mk = [[prod[i][j] + (c_prev if i == j else Poly()) for j in range(n)] for i in range(n)]
        amk = mm(mat, mk)
        tr = sum((amk[i][i] for i in range(n)), Poly())
        coeffs[n - k] = red(tr * Fraction(-1, k))
    return coeffs


def _integer_eigenvalues(mat: list, modulus: Optional[Poly]) -> list:
    coeffs = _charpoly_mod(mat, modulus)
    width = 1 if modulus is None else modulus.degree
    comps = []
    for j in range(width):
        comps.append(Poly([c.coeff(j) for c in coeffs]))
    g = reduce(lambda a, b: poly_gcd(a, b), (c for c in comps if c), Poly())
    return integer_roots(g) if g.degree >= 1 else []


def _split_matrix(lmat: MatRF):
    ell = lmat.denominator()
    ell_rf = RatFn.coerce(ell)
    lnum = [[(e * ell_rf).num for e in row] for row in lmat.rows]
    return ell, lnum


def vector_bounds(lmat: MatRF, extra_factors=()) -> DegreeBounds:
    """Automatic DegreeBounds for the vector system ``m' = L m``.

    ``extra_factors`` are additional monic irreducibles that must appear
    in the result (with bound 0 when L is regular there).
    """
    ell, lnum = _split_matrix(lmat)
    size = lmat.n
    orders = {}
    for f, mult in (factor(ell) if ell.degree >= 1 else []):
        if mult >= 2:
            raise NeedsUserBound(f"pole of order {mult} at {f} = 0 (not a singularity of the first kind)", factor=f)
        ell1 = ell.exquo(f)
        g, s, _ = poly_ext_gcd((ell1 * f.derive()) % f, f)
        assert g.is_one()
        residue = [[(e * s) % f for e in row] for row in lnum]
        eig = _integer_eigenvalues(residue, f if f.degree > 1 else None)
        orders[f] = max([0] + [-k for k in eig])
    for f in extra_factors:
        orders.setdefault(f.monic(), 0)

    dlen = ell.degree
    top = max((p.degree for row in lnum for p in row), default=-1)
    if top >= dlen:
        raise NeedsUserBound("the system is irregular at infinity (L does not vanish at infinity)")
    if top == dlen - 1:
        lead = [[Poly.const(p.coeff(dlen - 1)) for p in row] for row in lnum]
        eig = _integer_eigenvalues(lead, None)
        extra = max([0] + eig)
    else:
        extra = 0
    den_deg = sum(f.degree * k for f, k in orders.items())
    assert size == len(lnum)
    return DegreeBounds(tuple(orders.items()), den_deg + extra, "computed")


def _denominator_factors(*mats: MatRF) -> list:
    d = reduce(poly_lcm, (m.denominator() for m in mats), Poly.const(1))
    return [f for f, _ in factor(d)] if d.degree >= 1 else []


def denominator_bound(sys: SylvesterSystem) -> DegreeBounds:
    return vector_bounds(vectorize(sys), _denominator_factors(sys.a1, sys.a2))


def _validate_user_bounds(bounds: DegreeBounds, *mats: MatRF):
    have = {f for f, _ in bounds.pole_orders}
    missing = [str(f) for f in _denominator_factors(*mats) if f not in have]
    if missing:
        raise ValueError("user bounds omit denominator factor(s): " + ", ".join(missing))


# ---------------------------------------------------------------------------
# Ansatz solver
# ---------------------------------------------------------------------------


def _solve_vector(lmat: MatRF, bounds: DegreeBounds) -> list:
    """All rational vector solutions within ``bounds``; list of RatFn lists."""
    size = lmat.n
    deg = bounds.numerator_degree
    if deg < 0:
        return []
    dpoly = bounds.denominator()
    ell, lnum = _split_matrix(lmat)
    ell_d = ell * dpoly
    ell_dprime = ell * dpoly.derive()
    d_lnum = [[dpoly * p for p in row] for row in lnum]

    # unknown (e, i): coefficient of x^i in component e of P
    nunk = size * (deg + 1)
    columns = []
    for e in range(size):
        for i in range(deg + 1):
            xi = Poly([0] * i + [1])
            comp = []
            for k in range(size):
                img = -(d_lnum[k][e] * xi)
                if k == e:
                    dxi = Poly([0] * (i - 1) + [i]) if i else Poly()
                    img = img + ell_d * dxi - ell_dprime * xi
                comp.append(img)
            columns.append(comp)
    maxdeg = max((p.degree for col in columns for p in col), default=0)
    rows = []
    for k in range(size):
        for t in range(maxdeg + 1):
            row = [columns[u][k].coeff(t) for u in range(nunk)]
            if any(row):
                rows.append(row)
    null = rational_nullspace(rows, nunk)
    return [[RatFn(Poly(v[e * (deg + 1):(e + 1) * (deg + 1)]), dpoly) for e in range(size)] for v in null]


def vector_rational_solutions(a: MatRF, bounds: Optional[DegreeBounds] = None) -> list:
    """Basis of the rational solutions of ``y' = A y`` (within bounds)."""
    if bounds is None:
        bounds = vector_bounds(a, _denominator_factors(a))
    else:
        _validate_user_bounds(bounds, a)
    return _solve_vector(a, bounds)


def rational_solutions(sys: SylvesterSystem, bounds: Optional[DegreeBounds] = None) -> RatSolBasis:
    """Q-basis of the intertwiners M with ``M' = A2 M - M A1`` inside the bounds.

    With computed bounds this is the complete space of rational solutions.
    """
    if bounds is None:
        bounds = denominator_bound(sys)
    else:
        _validate_user_bounds(bounds, sys.a1, sys.a2)
    vecs = _solve_vector(vectorize(sys), bounds)
    basis = tuple(MatRF.from_column_stack(v, sys.n) for v in vecs)
    return RatSolBasis(basis, sys, bounds)


# ---------------------------------------------------------------------------
# Equivalence decision
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceResult:
    """Outcome of the gauge-equivalence search.

    ``witness`` is an invertible U with ``gauge_act(U, A) = B`` or None.
    ``method`` records which stage decided: ``identical``, ``empty``,
    ``basis``, ``random``, ``generic-grid`` or ``generic-zero``.
    """

    witness: Optional[MatRF]
    method: str
    solution_dimension: Optional[int]
    seed: int
    bounds: Optional[DegreeBounds]
    basis: tuple = field(default=(), repr=False)

    @property
    def found(self) -> bool:
        return self.witness is not None


def _combination(basis, coeffs) -> MatRF:
    n = basis[0].n
    acc = MatRF.zero(n)
    for c, b in zip(coeffs, basis):
        if c:
            acc = acc + b * c
    return acc


def _is_invertible(m: MatRF) -> bool:
    return not m.det().is_zero()


def _generic_determinant(basis) -> ParamPoly:
    """det(sum t_i B_i * D) as a polynomial in x and the parameters t_i."""
    n = basis[0].n
    dpoly = reduce(poly_lcm, (b.denominator() for b in basis), Poly.const(1))
    dr = RatFn.coerce(dpoly)
    xvar = ParamPoly.var("x")
    tvars = [ParamPoly.var(f"t{i + 1}") for i in range(len(basis))]

    def to_pp(p: Poly) -> ParamPoly:
        acc = ParamPoly()
        for k, c in enumerate(p.coeffs):
            if c:
                acc = acc + (xvar**k) * c
        return acc

    ent = [[ParamPoly() for _ in range(n)] for _ in range(n)]
    for t, b in zip(tvars, basis):
        for i in range(n):
            for j in range(n):
                e = b[i, j]
                if e:
                    ent[i][j] = ent[i][j] + t * to_pp((e * dr).num)
    return _pp_det(ent)


def _pp_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = ParamPoly()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _pp_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def decide_equivalence(
    a: MatRF,
    b: MatRF,
    bounds: Optional[DegreeBounds] = None,
    seed: int = DEFAULT_SEED,
    tries: int = DEFAULT_TRIES,
    jobs: int = 1,
) -> EquivalenceResult:
    """Search for an invertible rational W with ``W' = B W - W A``.

    Stages: basis elements, then ``tries`` seeded random Q-combinations, then
    (for n <= 3 and at most 6 basis elements) the determinant of the generic
    combination.  When that determinant vanishes identically no invertible
    intertwiner exists within the bounds; otherwise a grid of integer
    parameter values with n+1 points per parameter is guaranteed to contain
    an invertible combination.
    """
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n}x{a.n} vs {b.n}x{b.n}")
    if a == b:
        return EquivalenceResult(MatRF.identity(a.n), "identical", None, seed, None)
    sol = rational_solutions(SylvesterSystem(a, b), bounds)
    basis = sol.basis
    dim = len(basis)
    if dim == 0:
        return EquivalenceResult(None, "empty", 0, seed, sol.bounds_used, basis)
    for m in basis:
        if _is_invertible(m):
            return EquivalenceResult(m, "basis", dim, seed, sol.bounds_used, basis)

    if dim > 1:
        rnd = random.Random(seed)
        cands = []
        for _ in range(tries):
            coeffs = [rnd.randint(-9, 9) for _ in range(dim)]
            if any(coeffs):
                cands.append(_combination(basis, coeffs))
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                flags = list(pool.map(_is_invertible, cands))
        else:
            flags = [_is_invertible(c) for c in cands]
        for c, ok in zip(cands, flags):
            if ok:
                return EquivalenceResult(c, "random", dim, seed, sol.bounds_used, basis)

    if a.n > GENERIC_MAX_N or dim > GENERIC_MAX_BASIS:
        raise Inconclusive(
            f"solution space has dimension {dim} but no invertible element was found among the basis "
            f"and {tries} random combinations (seed {seed}); generic determinant skipped for n={a.n}, dim={dim}"
        )
    if _generic_determinant(basis).is_zero():
        return EquivalenceResult(None, "generic-zero", dim, seed, sol.bounds_used, basis)
    for coeffs in itertools.product(range(a.n + 1), repeat=dim):
        if not any(coeffs):
            continue
        c = _combination(basis, coeffs)
        if _is_invertible(c):
            return EquivalenceResult(c, "generic-grid", dim, seed, sol.bounds_used, basis)
    raise AssertionError("nonzero generic determinant but no invertible grid point")


def equivalent(a: MatRF, b: MatRF, bounds: Optional[DegreeBounds] = None, seed: int = DEFAULT_SEED,
               tries: int = DEFAULT_TRIES, jobs: int = 1) -> Optional[MatRF]:
    """Invertible U with ``gauge_act(U, a) == b``, or None if none exists over Q(x)."""
    return decide_equivalence(a, b, bounds, seed, tries, jobs).witness


def is_trivial(a: MatRF, bounds: Optional[DegreeBounds] = None, seed: int = DEFAULT_SEED,
               tries: int = DEFAULT_TRIES, jobs: int = 1) -> Optional[MatRF]:
    """Rational fundamental matrix U (``U' = A U``) if ``[A] = [0]``, else None."""
    return equivalent(MatRF.zero(a.n), a, bounds, seed, tries, jobs)
