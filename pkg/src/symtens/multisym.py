"""Multisymmetric functions: the generators e_k(f), orbit sums, and decomposition.

For ``f`` in ``P`` and copy index ``i``, ``rho(f, i)`` substitutes
``y_k -> x_{ik}``; ``e_k(f)`` is the k-th elementary symmetric function of
``rho(f, 1), ..., rho(f, n)``.  Every multisymmetric polynomial is a
polynomial in the ``e_k(f)`` with ``f`` running over monomials that are not
proper powers, and :func:`decompose` finds such an expression by exact
linear algebra one multidegree at a time.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

from .polyring import (
    X,
    Y,
    Context,
    Polynomial,
    RingMismatchError,
    is_multisymmetric,
    is_proper_power,
    render_coeff_term,
    render_monomial,
    var_x,
    x_monomial,
    x_rows,
    y_exponents,
    y_monomial,
)
from .ringcore import ExactMatrix, ExactSolver, RingElement


class DecompositionError(RuntimeError):
    """The generator system had no solution; by the generation theorem this is a bug."""


class NotMultisymmetricError(ValueError):
    pass


def rho(f: Polynomial, i: int) -> Polynomial:
    """Copy ``i`` of ``f``: substitute ``y_k -> x_{ik}``."""
    ctx = f.ctx
    if not 1 <= i <= ctx.n:
        raise IndexError(f"copy index {i} out of range 1..{ctx.n}")
    f.require_namespace(Y)
    from .polyring import rename

    return rename(f, lambda v: var_x(i, v[1]))


def elementary_symmetric(values: Sequence[Polynomial], zero: Polynomial, one: Polynomial) -> list:
    """``[e_0, e_1, ..., e_len]`` of the given values (``e_0 = 1``)."""
    e = [one] + [zero] * len(values)
    for count, v in enumerate(values, start=1):
        for k in range(count, 0, -1):
            e[k] = e[k] + e[k - 1] * v
    return e


def ek_of_f(k: int, f: Polynomial) -> Polynomial:
    """``e_k(f) = e_k(rho(f,1), ..., rho(f,n))``."""
    ctx = f.ctx
    if not 1 <= k <= ctx.n:
        raise IndexError(f"k={k} out of range 1..{ctx.n}")
    return _all_ek(f)[k]


@lru_cache(maxsize=4096)
def _all_ek(f: Polynomial) -> tuple:
    ctx = f.ctx
    copies = [rho(f, i) for i in range(1, ctx.n + 1)]
    return tuple(elementary_symmetric(copies, ctx.zero(), ctx.one()))


# ---------------------------------------------------------------------------
# orbit sums
# ---------------------------------------------------------------------------

Shape = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class OrbitSum:
    """Orbit of the monomial ``prod x_{ik}^{shape[i][k]}`` under row permutations.

    ``shape`` is canonical: rows sorted in descending lexicographic order.
    """

    shape: Shape

    def __post_init__(self):
        shape = tuple(tuple(int(d) for d in row) for row in self.shape)
        if len({len(r) for r in shape}) > 1:
            raise ValueError("rows of an orbit shape must have equal length")
        if any(d < 0 for r in shape for d in r):
            raise ValueError("negative exponent in orbit shape")
        object.__setattr__(self, "shape", tuple(sorted(shape, reverse=True)))

    @property
    def multidegree(self) -> Tuple[int, ...]:
        return tuple(map(sum, zip(*self.shape)))

    def __str__(self):
        rows = ",".join("(" + ",".join(map(str, r)) + ")" for r in self.shape)
        return "{" + rows + "}"


def expand_orbit(o: OrbitSum, ctx: Context) -> Polynomial:
    """Sum of the distinct monomials in the orbit, each with coefficient one."""
    if len(o.shape) != ctx.n or any(len(r) != ctx.m for r in o.shape):
        raise ValueError(f"shape {o} does not fit n={ctx.n}, m={ctx.m}")
    monos = {x_monomial(ctx, perm) for perm in itertools.permutations(o.shape)}
    one = ctx.ring.normalize(1)
    return Polynomial(ctx, {mono: one for mono in monos})


def _orbit_coords(p: Polynomial) -> Dict[OrbitSum, object]:
    # the representative of each orbit is the monomial with descending rows
    out = {}
    for mono, c in p.terms.items():
        rows = x_rows(p.ctx, mono)
        if all(rows[i] >= rows[i + 1] for i in range(len(rows) - 1)):
            out[OrbitSum(rows)] = c
    return out


def to_orbit_coordinates(p: Polynomial) -> Dict[OrbitSum, object]:
    """Coordinates of a multisymmetric polynomial in the orbit-sum basis."""
    if not is_multisymmetric(p):
        raise NotMultisymmetricError("polynomial is not multisymmetric")
    return dict(sorted(_orbit_coords(p).items()))


def from_orbit_coordinates(coords: Mapping[OrbitSum, object], ctx: Context) -> Polynomial:
    result = ctx.zero()
    for o, c in coords.items():
        result = result + expand_orbit(o, ctx).scale(c)
    return result


def orbit_shapes(ctx: Context, multidegree: Sequence[int]) -> List[OrbitSum]:
    """All canonical orbit shapes with the given multidegree."""
    n = ctx.n

    def splits(total, parts):
        # nonincreasing is not required per column; enumerate all compositions
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in splits(total - first, parts - 1):
                yield (first,) + rest

    seen = set()
    for cols in itertools.product(*(list(splits(d, n)) for d in multidegree)):
        rows = tuple(zip(*cols)) if cols else tuple(() for _ in range(n))
        seen.add(OrbitSum(rows))
    return sorted(seen)


def multidegree(ctx: Context, mono) -> Tuple[int, ...]:
    return tuple(map(sum, zip(*x_rows(ctx, mono))))


def homogeneous_components(p: Polynomial) -> Dict[Tuple[int, ...], Polynomial]:
    p.require_namespace(X)
    parts: Dict[Tuple[int, ...], dict] = {}
    for mono, c in p.terms.items():
        parts.setdefault(multidegree(p.ctx, mono), {})[mono] = c
    return {d: Polynomial(p.ctx, t) for d, t in sorted(parts.items())}


# ---------------------------------------------------------------------------
# generator symbols and expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSymbol:
    """The symbol ``E(k; f)`` standing for ``e_k(f)``; ``f`` given by its y-exponents."""

    k: int
    f: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        if self.k < 1:
            raise ValueError("k must be positive")
        if not any(self.f):
            raise ValueError("f must be nonconstant")
        if math.gcd(*self.f) >= 2:
            raise ValueError(f"y-monomial with exponents {self.f} is a proper power")

    @property
    def multidegree(self) -> Tuple[int, ...]:
        return tuple(self.k * a for a in self.f)

    def sort_key(self):
        return (sum(self.f), tuple(-a for a in self.f), self.k)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def monomial_poly(self, ctx: Context) -> Polynomial:
        return Polynomial(ctx, {y_monomial(ctx, self.f): ctx.ring.normalize(1)})

    def render(self, ctx: Context) -> str:
        return f"E({self.k};{render_monomial(ctx, y_monomial(ctx, self.f))})"


Key = Tuple[GeneratorSymbol, ...]


def _key_order(key: Key):
    return (-len(key), tuple(s.sort_key() for s in key))


class GeneratorExpr:
    """Polynomial in the symbols ``E(k; f)``.

    ``terms`` maps a sorted tuple of symbols (a multiset; repeats allowed) to a
    nonzero coefficient.  The empty tuple is the constant term.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: Mapping[Key, object] = ()):
        norm = ctx.ring.normalize
        clean: Dict[Key, object] = {}
        for key, c in dict(terms).items():
            key = tuple(sorted(key))
            for s in key:
                if s.k > ctx.n or len(s.f) != ctx.m:
                    raise ValueError(f"symbol {s} invalid for n={ctx.n}, m={ctx.m}")
            c = norm(clean.get(key, 0) + norm(c))
            if c != 0:
                clean[key] = c
            else:
                clean.pop(key, None)
        self.ctx = ctx
        self.terms = clean

    @classmethod
    def symbol(cls, ctx: Context, s: GeneratorSymbol) -> "GeneratorExpr":
        return cls(ctx, {(s,): 1})

    def _coerce(self, other):
        if isinstance(other, GeneratorExpr):
            if other.ctx != self.ctx:
                raise RingMismatchError("generator expressions from different contexts")
            return other
        if isinstance(other, RingElement):
            return GeneratorExpr(self.ctx, {(): other.value})
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GeneratorExpr(self.ctx, {(): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return GeneratorExpr(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return GeneratorExpr(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Key, object] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(sorted(k1 + k2))
                out[key] = out.get(key, 0) + c1 * c2
        return GeneratorExpr(self.ctx, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, GeneratorExpr)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _key_order(t[0]))

    def symbols(self) -> set:
        return {s for key in self.terms for s in key}

    def __str__(self):
        return render_generator_expr(self)

    def __repr__(self):
        return f"GeneratorExpr({render_generator_expr(self)!r})"


def render_product(ctx: Context, key: Key) -> str:
    parts = []
    for s, group in itertools.groupby(key):
        e = len(list(group))
        text = s.render(ctx)
        parts.append(text if e == 1 else f"{text}^{e}")
    return "*".join(parts)


def render_generator_expr(g: GeneratorExpr) -> str:
    """Canonical text, e.g. ``E(1;y1)*E(1;y2) - E(1;y1*y2)``."""
    if not g.terms:
        return "0"
    return "".join(
        render_coeff_term(g.ctx.ring, c, render_product(g.ctx, key), idx == 0)
        for idx, (key, c) in enumerate(g.sorted_terms())
    )


def generator_poly(ctx: Context, s: GeneratorSymbol) -> Polynomial:
    return ek_of_f(s.k, s.monomial_poly(ctx))


def expand_generator_expr(g: GeneratorExpr) -> Polynomial:
    """Replace each ``E(k; f)`` by ``e_k(f)`` and multiply out."""
    ctx = g.ctx
    result = ctx.zero()
    for key, c in g.terms.items():
        term = ctx.const(c)
        for s in key:
            term = term * generator_poly(ctx, s)
        result = result + term
    return result


def enumerate_generators(ctx: Context, dbound: Sequence[int]) -> List[GeneratorSymbol]:
    """All ``E(k; f)`` with ``f`` not a proper power and ``k*deg(f) <= dbound``."""
    dbound = tuple(dbound)
    if len(dbound) != ctx.m:
        raise ValueError(f"bound needs {ctx.m} components")
    if any(d < 0 for d in dbound):
        raise ValueError("negative degree bound")
    if not any(dbound):
        raise ValueError("degree bound must be nonzero")
    out = []
    for exps in itertools.product(*(range(d + 1) for d in dbound)):
        if not any(exps) or math.gcd(*exps) >= 2:
            continue
        for k in range(1, ctx.n + 1):
            if all(k * a <= d for a, d in zip(exps, dbound)):
                out.append(GeneratorSymbol(k, exps))
    return sorted(out)


def generator_symbol(ctx: Context, k: int, f: Polynomial) -> GeneratorSymbol:
    """Build ``E(k; f)`` from a monomial polynomial ``f`` with coefficient one."""
    if len(f.terms) != 1 or next(iter(f.terms.values())) != ctx.ring.normalize(1):
        raise ValueError("f must be a single monic monomial")
    mono = next(iter(f.terms))
    if is_proper_power(ctx, mono):
        raise ValueError("f is a proper power")
    if not 1 <= k <= ctx.n:
        raise IndexError(f"k={k} out of range 1..{ctx.n}")
    return GeneratorSymbol(k, y_exponents(ctx, mono))


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------


def _multisets(gens: Sequence[GeneratorSymbol], target: Tuple[int, ...]):
    """Sorted tuples of generators whose multidegrees add up to ``target``."""
    degs = [g.multidegree for g in gens]

    def rec(start, remaining):
        if not any(remaining):
            yield ()
            return
        for idx in range(start, len(gens)):
            d = degs[idx]
            if all(a <= b for a, b in zip(d, remaining)):
                rest = tuple(b - a for a, b in zip(d, remaining))
                for tail in rec(idx, rest):
                    yield (gens[idx],) + tail

    yield from rec(0, target)


class _DegreeSystem:
    def __init__(self, columns, shapes, solver):
        self.columns = columns
        self.shapes = shapes
        self.row_of = {s: i for i, s in enumerate(shapes)}
        self.solver = solver


class Decomposer:
    """Caches generator products and factored linear systems for one context."""

    def __init__(self, ctx: Context):
        self.ctx = ctx
        self._products: Dict[Key, Polynomial] = {(): ctx.one()}
        self._systems: Dict[Tuple[int, ...], _DegreeSystem] = {}

    def product(self, key: Key) -> Polynomial:
        if key not in self._products:
            self._products[key] = self.product(key[:-1]) * generator_poly(self.ctx, key[-1])
        return self._products[key]

    def system(self, d: Tuple[int, ...]) -> _DegreeSystem:
        if d not in self._systems:
            gens = enumerate_generators(self.ctx, d)
            columns = list(_multisets(gens, d))
            coords = [_orbit_coords(self.product(key)) for key in columns]
            shapes = sorted({s for col in coords for s in col})
            zero = self.ctx.ring.normalize(0)
            rows = [[col.get(s, zero) for col in coords] for s in shapes]
            mat = ExactMatrix(self.ctx.ring, rows) if rows else None
            solver = ExactSolver(mat) if mat is not None and columns else None
            self._systems[d] = _DegreeSystem(columns, shapes, solver)
        return self._systems[d]

    def decompose_component(self, d: Tuple[int, ...], part: Polynomial) -> Dict[Key, object]:
        if not any(d):
            return {(): part.constant_term()}
        sysm = self.system(d)
        target = _orbit_coords(part)
        missing = [s for s in target if s not in sysm.row_of]
        if missing or sysm.solver is None:
            raise DecompositionError(
                f"orbit sums {sorted(map(str, missing))} not reached by generators in degree {d}"
            )
        zero = self.ctx.ring.normalize(0)
        b = [target.get(s, zero) for s in sysm.shapes]
        x = sysm.solver.solve(b)
        if x is None:
            raise DecompositionError(f"generator system inconsistent in multidegree {d}")
        return {key: c for key, c in zip(sysm.columns, x) if c != 0}

    def decompose(self, p: Polynomial) -> GeneratorExpr:
        if p.ctx != self.ctx:
            raise RingMismatchError("polynomial from a different context")
        if not is_multisymmetric(p):
            raise NotMultisymmetricError("polynomial is not multisymmetric")
        terms: Dict[Key, object] = {}
        for d, part in homogeneous_components(p).items():
            terms.update(self.decompose_component(d, part))
        return GeneratorExpr(self.ctx, terms)


@lru_cache(maxsize=64)
def decomposer_for(ctx: Context) -> Decomposer:
    return Decomposer(ctx)


def decompose(p: Polynomial) -> GeneratorExpr:
    """Express a multisymmetric ``p`` as a polynomial in the ``E(k; f)``.

    The linear system of each multidegree is generally underdetermined; the
    returned expression is the solver's canonical solution.
    """
    p.require_namespace(X)
    return decomposer_for(p.ctx).decompose(p)
