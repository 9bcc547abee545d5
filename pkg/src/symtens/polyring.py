"""Sparse multivariate polynomials over the base ring.

Three variable namespaces share one :class:`Context`:

* ``Y(k)``       -- ``y_k`` in P, 1 <= k <= m
* ``X(i, k)``    -- ``x_{ik}`` in D, 1 <= i <= n
* ``XI(k, i, j)``-- ``xi_{kij}`` in A, entries of generic matrices

A monomial is a dense exponent tuple indexed by ``Context.variables``.  The
variable order is namespace-major (Y < X < XI) and then by indices; the term
order is graded lexicographic with earlier variables larger.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .ringcore import ZZ, BaseRing, RingElement, RingMismatchError

Y, X, XI = 0, 1, 2

VarId = Tuple[int, ...]
Monomial = Tuple[int, ...]


def var_y(k: int) -> VarId:
    return (Y, k)


def var_x(i: int, k: int) -> VarId:
    return (X, i, k)


def var_xi(k: int, i: int, j: int) -> VarId:
    return (XI, k, i, j)


def render_var(v: VarId) -> str:
    if v[0] == Y:
        return f"y{v[1]}"
    if v[0] == X:
        return f"x[{v[1]},{v[2]}]"
    return f"xi[{v[1]},{v[2]},{v[3]}]"


@dataclass(frozen=True)
class Context:
    """Base ring plus the shape (n, m) shared by every value built from it."""

    ring: BaseRing = ZZ
    n: int = 1
    m: int = 1

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"need n >= 1 and m >= 1, got n={self.n}, m={self.m}")

    @cached_property
    def variables(self) -> Tuple[VarId, ...]:
        n, m = self.n, self.m
        ys = [var_y(k) for k in range(1, m + 1)]
        xs = [var_x(i, k) for i in range(1, n + 1) for k in range(1, m + 1)]
        xis = [
            var_xi(k, i, j)
            for k in range(1, m + 1)
            for i in range(1, n + 1)
            for j in range(1, n + 1)
        ]
        return tuple(ys + xs + xis)

    @cached_property
    def index(self) -> Dict[VarId, int]:
        return {v: pos for pos, v in enumerate(self.variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def namespace_slice(self, ns: int) -> range:
        n, m = self.n, self.m
        if ns == Y:
            return range(0, m)
        if ns == X:
            return range(m, m + n * m)
        return range(m + n * m, m + n * m + n * n * m)

    def check_var(self, v: VarId) -> None:
        if v not in self.index:
            raise IndexError(f"variable {render_var(v)} out of bounds for n={self.n}, m={self.m}")

    def with_ring(self, ring: BaseRing) -> "Context":
        return Context(ring, self.n, self.m)

    # constructors -------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.ring.normalize(c.value if isinstance(c, RingElement) else c)
        return Polynomial(self, {self.unit_monomial: c} if c != 0 else {})

    def var(self, v: VarId) -> "Polynomial":
        self.check_var(v)
        e = [0] * self.nvars
        e[self.index[v]] = 1
        return Polynomial(self, {tuple(e): self.ring.normalize(1)})

    def y(self, k: int) -> "Polynomial":
        return self.var(var_y(k))

    def x(self, i: int, k: int) -> "Polynomial":
        return self.var(var_x(i, k))

    def xi(self, k: int, i: int, j: int) -> "Polynomial":
        return self.var(var_xi(k, i, j))

    @cached_property
    def unit_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def monomial(self, exps: Mapping[VarId, int]) -> Monomial:
        e = [0] * self.nvars
        for v, d in exps.items():
            self.check_var(v)
            if d < 0:
                raise ValueError("negative exponent")
            e[self.index[v]] += d
        return tuple(e)


def monomial_items(ctx: Context, mono: Monomial) -> Tuple[Tuple[VarId, int], ...]:
    """Sparse view of a monomial: ``((var, exponent), ...)`` in variable order."""
    vs = ctx.variables
    return tuple((vs[pos], d) for pos, d in enumerate(mono) if d)


def monomial_degree(mono: Monomial) -> int:
    return sum(mono)


def term_key(mono: Monomial):
    """Sort key: ascending key == descending graded-lex order."""
    return (-sum(mono), tuple(-d for d in mono))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps monomial -> nonzero coefficient."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: Context, terms: Mapping[Monomial, object]):
        self.ctx = ctx
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ctx: Context, terms: Mapping[Monomial, object]) -> "Polynomial":
        norm = ctx.ring.normalize
        clean = {}
        for mono, c in terms.items():
            if len(mono) != ctx.nvars:
                raise ValueError("monomial length does not match context")
            c = norm(c)
            if c != 0:
                clean[mono] = c
        return cls(ctx, clean)

    # coercion -----------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise RingMismatchError(f"context mismatch: {self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, RingElement):
            if other.ring != self.ctx.ring:
                raise RingMismatchError(f"cannot combine {self.ctx.ring} and {other.ring}")
            return self.ctx.const(other.value)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ctx.const(other)
        return NotImplemented

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ctx.ring.normalize
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = norm(out.get(mono, 0) + c)
            if s != 0:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Polynomial(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ctx.ring.normalize
        return Polynomial(self.ctx, {mono: norm(-c) for mono, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Polynomial(self.ctx, {})
        acc: Dict[Monomial, object] = {}
        get = acc.get
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = tuple(map(int.__add__, ma, mb))
                acc[mono] = get(mono, 0) + ca * cb
        norm = self.ctx.ring.normalize
        out = {}
        for mono, c in acc.items():
            c = norm(c)
            if c != 0:
                out[mono] = c
        return Polynomial(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        norm = self.ctx.ring.normalize
        c = norm(c)
        return Polynomial.from_terms(self.ctx, {mono: v * c for mono, v in self.terms.items()})

    # inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {self.ctx.unit_monomial}

    def constant_term(self):
        return self.terms.get(self.ctx.unit_monomial, self.ctx.ring.normalize(0))

    def used_variables(self) -> set:
        vs = self.ctx.variables
        return {vs[pos] for mono in self.terms for pos, d in enumerate(mono) if d}

    def namespaces(self) -> set:
        return {v[0] for v in self.used_variables()}

    def require_namespace(self, *allowed: int) -> None:
        bad = self.namespaces() - set(allowed)
        if bad:
            names = {Y: "y", X: "x", XI: "xi"}
            raise ValueError(
                f"polynomial uses {sorted(names[b] for b in bad)} variables; "
                f"allowed: {sorted(names[a] for a in allowed)}"
            )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: term_key(t[0]))

    def total_degree(self) -> int:
        return max((sum(mono) for mono in self.terms), default=-1)

    # equality -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.terms == other.terms
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        return self.terms == coerced.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return render_polynomial(self)

    def __repr__(self):
        return f"Polynomial({render_polynomial(self)!r})"


def render_coeff_term(ring: BaseRing, coeff, body: str, first: bool) -> str:
    """Render ``coeff*body`` as a signed term; ``body`` empty means a constant."""
    neg = coeff < 0
    mag = -coeff if neg else coeff
    text = ring.render(mag)
    if body:
        text = body if mag == 1 else f"{text}*{body}"
    if first:
        return f"-{text}" if neg else text
    return f" - {text}" if neg else f" + {text}"


def render_monomial(ctx: Context, mono: Monomial) -> str:
    parts = []
    for v, d in monomial_items(ctx, mono):
        parts.append(render_var(v) if d == 1 else f"{render_var(v)}^{d}")
    return "*".join(parts)


def render_polynomial(p: Polynomial) -> str:
    """Canonical text form, e.g. ``3*x[1,1]^2*x[2,1] - x[1,2]``."""
    if not p.terms:
        return "0"
    out = []
    for idx, (mono, c) in enumerate(p.sorted_terms()):
        out.append(render_coeff_term(p.ctx.ring, c, render_monomial(p.ctx, mono), idx == 0))
    return "".join(out)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    if not isinstance(q, Polynomial):
        raise TypeError("poly_add expects polynomials")
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if not isinstance(q, Polynomial):
        raise TypeError("poly_mul expects polynomials")
    return p * q


def substitute(
    p: Polynomial, assignment: Mapping[VarId, Polynomial], target: Context | None = None
) -> Polynomial:
    """Ring homomorphism sending each variable of ``p`` to its image.

    Variables absent from ``assignment`` raise ``KeyError``.  Images must
    share one context; ``target`` fixes it when the assignment may be empty.
    """
    ctx = p.ctx
    images = {}
    for v, img in assignment.items():
        ctx.check_var(v)
        if target is None:
            target = img.ctx
        elif img.ctx != target:
            raise RingMismatchError("substitution images live in different contexts")
        images[ctx.index[v]] = img
    if target is None:
        target = ctx
    for v in p.used_variables():
        if ctx.index[v] not in images:
            raise KeyError(f"no image given for {render_var(v)}")
    powers: Dict[Tuple[int, int], Polynomial] = {}

    def power(pos, d):
        key = (pos, d)
        if key not in powers:
            powers[key] = images[pos] if d == 1 else power(pos, d - 1) * images[pos]
        return powers[key]

    result = target.zero()
    for mono, c in p.sorted_terms():
        term = target.const(c)
        for pos, d in enumerate(mono):
            if d:
                term = term * power(pos, d)
        result = result + term
    return result


def rename(p: Polynomial, mapping, target: Context | None = None) -> Polynomial:
    """Relabel variables through ``mapping(VarId) -> VarId`` (monomial-wise).

    Faster than :func:`substitute` for variable-to-variable maps; ``mapping``
    may return ``None`` to send a variable to zero.
    """
    target = target or p.ctx
    src_vars = p.ctx.variables
    tindex = target.index
    cache = {}
    acc: Dict[Monomial, object] = {}
    for mono, c in p.terms.items():
        e = [0] * target.nvars
        dead = False
        for pos, d in enumerate(mono):
            if not d:
                continue
            if pos not in cache:
                img = mapping(src_vars[pos])
                cache[pos] = None if img is None else tindex[img]
            tpos = cache[pos]
            if tpos is None:
                dead = True
                break
            e[tpos] += d
        if dead:
            continue
        key = tuple(e)
        acc[key] = acc.get(key, 0) + c
    if target.ring != p.ctx.ring:
        raise RingMismatchError("rename cannot change the base ring")
    return Polynomial.from_terms(target, acc)


def sn_act(sigma: Sequence[int], p: Polynomial) -> Polynomial:
    """Apply ``x_{ik} -> x_{sigma(i) k}``; ``sigma`` is 1-based, ``sigma[i-1] = sigma(i)``."""
    n = p.ctx.n
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{list(sigma)} is not a permutation of 1..{n}")
    p.require_namespace(X)
    return rename(p, lambda v: var_x(sigma[v[1] - 1], v[2]))


def adjacent_transpositions(n: int):
    for i in range(1, n):
        sigma = list(range(1, n + 1))
        sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
        yield sigma


def is_multisymmetric(p: Polynomial) -> bool:
    p.require_namespace(X)
    return all(sn_act(s, p) == p for s in adjacent_transpositions(p.ctx.n))


def y_exponents(ctx: Context, mono: Monomial) -> Tuple[int, ...]:
    """Exponent vector ``(a_1..a_m)`` of a monomial in the Y namespace."""
    sl = ctx.namespace_slice(Y)
    if any(d for pos, d in enumerate(mono) if pos not in sl):
        raise ValueError("monomial is not in the y namespace")
    return tuple(mono[pos] for pos in sl)


def y_monomial(ctx: Context, exps: Sequence[int]) -> Monomial:
    if len(exps) != ctx.m:
        raise ValueError(f"expected {ctx.m} exponents")
    return tuple(exps) + (0,) * (ctx.nvars - ctx.m)


def is_proper_power(ctx: Context, mono: Monomial) -> bool:
    exps = y_exponents(ctx, mono)
    if not any(exps):
        raise ValueError("constant monomial has no power structure")
    return math.gcd(*exps) >= 2


def x_rows(ctx: Context, mono: Monomial) -> Tuple[Tuple[int, ...], ...]:
    """Rows ``(exp of x_{i1}, ..., x_{im})`` for i = 1..n of an X-monomial."""
    start = ctx.m
    m = ctx.m
    return tuple(tuple(mono[start + i * m: start + (i + 1) * m]) for i in range(ctx.n))


def x_monomial(ctx: Context, rows: Iterable[Sequence[int]]) -> Monomial:
    flat = [d for row in rows for d in row]
    if len(flat) != ctx.n * ctx.m:
        raise ValueError("row data does not match (n, m)")
    return (0,) * ctx.m + tuple(flat) + (0,) * (ctx.n * ctx.n * ctx.m)
