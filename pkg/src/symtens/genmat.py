"""Generic matrices, diagonal generic matrices, the free algebra and the map Delta.

``Delta`` sends ``xi_{kij}`` to ``x_{ik}`` when ``i == j`` and to zero
otherwise.  Quotients by commutator ideals are never formed; everything is
computed on representatives in ``A = K[xi_{kij}]``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .matalg import MatrixOverRing
from .polyring import XI, Y, Context, Polynomial, rename, var_x, y_exponents
from .ringcore import BaseRing, RingElement, RingMismatchError

GenericContext = Context

Word = Tuple[int, ...]


def _check_k(ctx: Context, k: int) -> None:
    if not 1 <= k <= ctx.m:
        raise IndexError(f"matrix index {k} out of range 1..{ctx.m}")


def generic_matrix(ctx: Context, k: int) -> MatrixOverRing:
    """The generic matrix whose ``(i, j)`` entry is ``xi_{kij}``."""
    _check_k(ctx, k)
    n = ctx.n
    return MatrixOverRing(
        ctx, [[ctx.xi(k, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    )


def generic_matrices(ctx: Context) -> list:
    return [generic_matrix(ctx, k) for k in range(1, ctx.m + 1)]


def diagonal_generic(ctx: Context, k: int) -> MatrixOverRing:
    """``diag(x_{1k}, ..., x_{nk})``."""
    _check_k(ctx, k)
    return MatrixOverRing.diagonal(ctx, [ctx.x(i, k) for i in range(1, ctx.n + 1)])


def diagonal_generics(ctx: Context) -> list:
    return [diagonal_generic(ctx, k) for k in range(1, ctx.m + 1)]


def _mat_power(m: MatrixOverRing, e: int, cache: dict, key) -> MatrixOverRing:
    if (key, e) not in cache:
        cache[(key, e)] = m if e == 1 else _mat_power(m, e - 1, cache, key) * m
    return cache[(key, e)]


def eval_poly_at_matrices(
    f: Polynomial, mats: Sequence[MatrixOverRing], order: Optional[Sequence[int]] = None
) -> MatrixOverRing:
    """Evaluate ``f in P`` at ``y_k -> mats[k-1]``.

    Each monomial is multiplied left to right: all ``y_1`` factors first, then
    ``y_2`` and so on.  ``order`` (a permutation of ``1..m``) overrides that
    sequence; for noncommuting matrices it changes the representative.
    """
    ctx = f.ctx
    f.require_namespace(Y)
    if len(mats) != ctx.m:
        raise ValueError(f"expected {ctx.m} matrices, got {len(mats)}")
    target = mats[0].ctx
    size = mats[0].n
    for mat in mats:
        if mat.ctx != target or mat.n != size:
            raise RingMismatchError("matrices must share size and context")
    if target.ring != ctx.ring:
        raise RingMismatchError("polynomial and matrices have different base rings")
    order = list(range(1, ctx.m + 1)) if order is None else list(order)
    if sorted(order) != list(range(1, ctx.m + 1)):
        raise ValueError("order must be a permutation of 1..m")
    cache: dict = {}
    result = MatrixOverRing.zero(target, size)
    for mono, c in f.sorted_terms():
        exps = y_exponents(ctx, mono)
        term = None
        for k in order:
            if exps[k - 1]:
                pw = _mat_power(mats[k - 1], exps[k - 1], cache, k)
                term = pw if term is None else term * pw
        if term is None:
            term = MatrixOverRing.identity(target, size)
        result = result + term * target.const(c)
    return result


class FreeElement:
    """Element of the free associative algebra ``K<z_1..z_m>``.

    ``terms`` maps words (tuples of 1-based letter indices) to nonzero
    coefficients; the empty word is the identity.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: BaseRing, terms: Mapping[Word, object] = ()):
        norm = ring.normalize
        clean: Dict[Word, object] = {}
        for w, c in dict(terms).items():
            w = tuple(w)
            if any(not isinstance(l, int) or l < 1 for l in w):
                raise ValueError(f"bad word {w}")
            c = norm(c)
            if c != 0:
                clean[w] = norm(clean.get(w, 0) + c)
                if clean[w] == 0:
                    del clean[w]
        self.ring = ring
        self.terms = clean

    @classmethod
    def word(cls, ring: BaseRing, letters: Iterable[int], coeff=1) -> "FreeElement":
        return cls(ring, {tuple(letters): coeff})

    @classmethod
    def letter(cls, ring: BaseRing, k: int) -> "FreeElement":
        return cls(ring, {(k,): 1})

    @classmethod
    def const(cls, ring: BaseRing, c) -> "FreeElement":
        return cls(ring, {(): c})

    def _coerce(self, other):
        if isinstance(other, FreeElement):
            if other.ring != self.ring:
                raise RingMismatchError("free elements over different rings")
            return other
        if isinstance(other, RingElement):
            return FreeElement.const(self.ring, other.value)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FreeElement.const(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return FreeElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return FreeElement(self.ring, {w: -c for w, c in self.terms.items()})

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
        out: Dict[Word, object] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return FreeElement(self.ring, out)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = FreeElement.const(self.ring, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, FreeElement) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def max_letter(self) -> int:
        return max((l for w in self.terms for l in w), default=0)

    def sorted_terms(self):
        """Words in length-then-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self):
        return render_free_element(self)

    def __repr__(self):
        return f"FreeElement({render_free_element(self)!r})"


def render_word(w: Word) -> str:
    return "*".join(f"z{l}" for l in w)


def render_free_element(f: FreeElement) -> str:
    from .polyring import render_coeff_term

    if not f.terms:
        return "0"
    return "".join(
        render_coeff_term(f.ring, c, render_word(w), idx == 0)
        for idx, (w, c) in enumerate(f.sorted_terms())
    )


def eval_word_at_matrices(f: FreeElement, mats: Sequence[MatrixOverRing]) -> MatrixOverRing:
    """Evaluate ``f`` at ``z_k -> mats[k-1]`` keeping the letter order of each word."""
    if not mats:
        raise ValueError("need at least one matrix")
    if f.max_letter() > len(mats):
        raise ValueError(f"word uses z{f.max_letter()} but only {len(mats)} matrices given")
    ctx = mats[0].ctx
    size = mats[0].n
    for mat in mats:
        if mat.ctx != ctx or mat.n != size:
            raise RingMismatchError("matrices must share size and context")
    if ctx.ring != f.ring:
        raise RingMismatchError("word and matrices have different base rings")
    prefix: Dict[Word, MatrixOverRing] = {(): MatrixOverRing.identity(ctx, size)}

    def product(w: Word) -> MatrixOverRing:
        if w not in prefix:
            prefix[w] = product(w[:-1]) * mats[w[-1] - 1]
        return prefix[w]

    result = MatrixOverRing.zero(ctx, size)
    for w, c in f.sorted_terms():
        result = result + product(w) * ctx.const(c)
    return result


def abelianize(f: FreeElement, ctx: Context) -> Polynomial:
    """Image of ``f`` in ``P``: ``z_k -> y_k``, letters commute."""
    if f.ring != ctx.ring:
        raise RingMismatchError("ring mismatch")
    if f.max_letter() > ctx.m:
        raise ValueError(f"word uses z{f.max_letter()} but m={ctx.m}")
    terms: Dict[tuple, object] = {}
    for w, c in f.terms.items():
        exps = [0] * ctx.m
        for l in w:
            exps[l - 1] += 1
        mono = tuple(exps) + (0,) * (ctx.nvars - ctx.m)
        terms[mono] = terms.get(mono, 0) + c
    return Polynomial.from_terms(ctx, terms)


def word_of_monomial(ctx: Context, mono) -> Word:
    """Sorted word ``z_1^{a_1} z_2^{a_2} ...`` for a y-monomial."""
    exps = y_exponents(ctx, mono)
    return tuple(k + 1 for k, a in enumerate(exps) for _ in range(a))


def free_of_polynomial(f: Polynomial) -> FreeElement:
    """Lift ``f in P`` to ``F`` by writing each monomial as its sorted word."""
    f.require_namespace(Y)
    return FreeElement(f.ctx.ring, {word_of_monomial(f.ctx, mono): c for mono, c in f.terms.items()})


def _delta_var(v):
    _, k, i, j = v
    return var_x(i, k) if i == j else None


def delta_specialize(p: Polynomial) -> Polynomial:
    """Apply ``Delta: A -> D``."""
    p.require_namespace(XI)
    return rename(p, _delta_var)


def delta_matrix(m: MatrixOverRing) -> MatrixOverRing:
    """Entrywise :func:`delta_specialize`."""
    return MatrixOverRing(m.ctx, [[delta_specialize(a) for a in r] for r in m.entries])
