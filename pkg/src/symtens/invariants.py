"""Characteristic-polynomial invariants of matrix tuples.

Symbolic side: ``theta(f)`` are the coefficients of ``det(tI - f(xi_1..xi_m))``
for ``f`` in the free algebra, as polynomials in the generic entries.

Numeric side: tuples of scalar matrices, simultaneous conjugation, and the
randomized invariance and degeneration trials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .genmat import (
    FreeElement,
    abelianize,
    delta_specialize,
    eval_word_at_matrices,
    generic_matrices,
    word_of_monomial,
)
from .matalg import berkowitz, charpoly
from .multisym import (
    GeneratorExpr,
    GeneratorSymbol,
    decompose,
    ek_of_f,
    y_monomial,
)
from .polyring import X, Context, Polynomial, is_multisymmetric
from .ringcore import QQ, BaseRing, ModRing

ScalarMatrix = Tuple[Tuple[object, ...], ...]


class InvariantViolation(AssertionError):
    """A property that holds by theory failed; indicates a bug."""


# ---------------------------------------------------------------------------
# symbolic invariants
# ---------------------------------------------------------------------------


def theta(f: FreeElement, ctx: Context, upto: Optional[int] = None) -> List[Polynomial]:
    """``[theta_1(f), ..., theta_n(f)]`` as polynomials in the ``xi_{kij}``."""
    if f.max_letter() > ctx.m:
        raise ValueError(f"element uses z{f.max_letter()} but m={ctx.m}")
    mat = eval_word_at_matrices(f, generic_matrices(ctx))
    return list(charpoly(mat, upto).coeffs)


@dataclass(frozen=True)
class Witness:
    deltas: Tuple[Polynomial, ...]
    elementary: Tuple[Polynomial, ...]

    @property
    def holds(self) -> bool:
        return self.deltas == self.elementary


def junker_weyl_witness(f: FreeElement, ctx: Context, check: bool = True) -> Witness:
    """Pair ``(Delta(theta_k(f)))_k`` with ``(e_k(ab(f)))_k``.

    The two lists agree for every ``f``; with ``check`` a disagreement raises
    :class:`InvariantViolation`.
    """
    deltas = tuple(delta_specialize(t) for t in theta(f, ctx))
    ab = abelianize(f, ctx)
    eks = tuple(ek_of_f(k, ab) for k in range(1, ctx.n + 1))
    w = Witness(deltas, eks)
    if check and not w.holds:
        raise InvariantViolation(f"Delta(theta(f)) != e(ab(f)) for f = {f}")
    return w


def theta_representative(ctx: Context, s: GeneratorSymbol) -> Polynomial:
    """``theta_k`` of the sorted word of ``f``: a preimage of ``e_k(f)`` in ``C``."""
    word = word_of_monomial(ctx, y_monomial(ctx, s.f))
    return theta(FreeElement.word(ctx.ring, word), ctx, upto=s.k)[s.k - 1]


def substitute_generators(g: GeneratorExpr) -> Polynomial:
    """Replace each ``E(k; f)`` by its theta-representative and multiply out in ``A``."""
    ctx = g.ctx
    reps = {s: theta_representative(ctx, s) for s in sorted(g.symbols())}
    result = ctx.zero()
    for key, c in g.sorted_terms():
        term = ctx.const(c)
        for s in key:
            term = term * reps[s]
        result = result + term
    return result


def preimage_in_C(p: Polynomial) -> Polynomial:
    """An element of ``C`` (polynomial in the ``xi``) whose Delta-image is ``p``."""
    p.require_namespace(X)
    return substitute_generators(decompose(p))


# ---------------------------------------------------------------------------
# scalar matrix tuples
# ---------------------------------------------------------------------------


def _norm_matrix(ring: BaseRing, rows) -> ScalarMatrix:
    return tuple(tuple(ring.normalize(v) for v in r) for r in rows)


def smat_identity(ring: BaseRing, n: int) -> ScalarMatrix:
    return _norm_matrix(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def smat_mul(ring: BaseRing, a: ScalarMatrix, b: ScalarMatrix) -> ScalarMatrix:
    cols = list(zip(*b))
    norm = ring.normalize
    return tuple(tuple(norm(sum(x * y for x, y in zip(r, c))) for c in cols) for r in a)


def smat_add(ring: BaseRing, a: ScalarMatrix, b: ScalarMatrix) -> ScalarMatrix:
    norm = ring.normalize
    return tuple(tuple(norm(x + y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def smat_scale(ring: BaseRing, c, a: ScalarMatrix) -> ScalarMatrix:
    norm = ring.normalize
    return tuple(tuple(norm(c * x) for x in r) for r in a)


def smat_charpoly(ring: BaseRing, a: ScalarMatrix) -> Tuple[object, ...]:
    """``(c_1, ..., c_n)`` with the same sign convention as :func:`charpoly`."""
    vec = berkowitz(a, ring.normalize(0), ring.normalize(1))
    return tuple(ring.normalize(v if k % 2 == 0 else -v) for k, v in enumerate(vec))[1:]


def smat_det(ring: BaseRing, a: ScalarMatrix):
    return smat_charpoly(ring, a)[-1] if a else ring.normalize(1)


def smat_inverse(ring: BaseRing, a: ScalarMatrix) -> ScalarMatrix:
    """Gauss-Jordan inverse; over ZZ the determinant must be a unit."""
    n = len(a)
    field = ring if ring.is_field else QQ
    norm = field.normalize
    aug = [[norm(v) for v in row] + [norm(1 if i == j else 0) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = field.inv(aug[col][col])
        aug[col] = [norm(v * inv) for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                q = aug[r][col]
                aug[r] = [norm(x - q * y) for x, y in zip(aug[r], aug[col])]
    out = [row[n:] for row in aug]
    if not ring.is_field:
        if any(v.denominator != 1 for r in out for v in r):
            raise ValueError("matrix is not invertible over ZZ")
        out = [[v.numerator for v in r] for r in out]
    return _norm_matrix(ring, out)


@dataclass(frozen=True)
class MatrixTuple:
    """``m`` scalar ``n x n`` matrices over one base ring."""

    ring: BaseRing
    mats: Tuple[ScalarMatrix, ...]

    def __post_init__(self):
        mats = tuple(_norm_matrix(self.ring, m) for m in self.mats)
        sizes = {len(m) for m in mats} | {len(r) for m in mats for r in m}
        if len(sizes) > 1:
            raise ValueError("all matrices in a tuple must be square of one size")
        object.__setattr__(self, "mats", mats)

    @property
    def n(self) -> int:
        return len(self.mats[0]) if self.mats else 0

    @property
    def m(self) -> int:
        return len(self.mats)

    def diagonal_part(self) -> "MatrixTuple":
        zero = self.ring.normalize(0)
        return MatrixTuple(
            self.ring,
            tuple(
                tuple(tuple(v if i == j else zero for j, v in enumerate(r)) for i, r in enumerate(mat))
                for mat in self.mats
            ),
        )


def eval_word_scalar(f: FreeElement, t: MatrixTuple) -> ScalarMatrix:
    """``f(M_1, ..., M_m)`` computed directly on scalar matrices."""
    if f.ring != t.ring:
        raise ValueError("ring mismatch")
    if f.max_letter() > t.m:
        raise ValueError(f"element uses z{f.max_letter()} but the tuple has {t.m} matrices")
    ring = t.ring
    result = _norm_matrix(ring, [[0] * t.n for _ in range(t.n)])
    ident = smat_identity(ring, t.n)
    for w, c in f.sorted_terms():
        prod = ident
        for letter in w:
            prod = smat_mul(ring, prod, t.mats[letter - 1])
        result = smat_add(ring, result, smat_scale(ring, c, prod))
    return result


def theta_at(f: FreeElement, t: MatrixTuple) -> Tuple[object, ...]:
    """Values ``theta_1(f), ..., theta_n(f)`` at the tuple ``t``."""
    return smat_charpoly(t.ring, eval_word_scalar(f, t))


def gl_conjugate(t: MatrixTuple, g: ScalarMatrix) -> MatrixTuple:
    """``(g M_1 g^-1, ..., g M_m g^-1)``."""
    ring = t.ring
    g = _norm_matrix(ring, g)
    if len(g) != t.n:
        raise ValueError("conjugating matrix has the wrong size")
    ginv = smat_inverse(ring, g)
    return MatrixTuple(ring, tuple(smat_mul(ring, smat_mul(ring, g, m), ginv) for m in t.mats))


def invariance_trial(f: FreeElement, t: MatrixTuple, g: ScalarMatrix) -> bool:
    """Whether ``theta(f)`` takes equal values at ``t`` and at ``g.t``."""
    return theta_at(f, t) == theta_at(f, gl_conjugate(t, g))


def is_upper_triangular(a: ScalarMatrix) -> bool:
    return all(v == 0 for i, r in enumerate(a) for j, v in enumerate(r) if j < i)


def pairwise_commuting(t: MatrixTuple) -> bool:
    ring = t.ring
    return all(
        smat_mul(ring, a, b) == smat_mul(ring, b, a)
        for idx, a in enumerate(t.mats)
        for b in t.mats[idx + 1:]
    )


def degeneration_check(t: MatrixTuple, f: FreeElement) -> bool:
    """Compare ``theta(f)`` at a commuting triangular tuple and at its diagonal part.

    The diagonal part is the limit of the tuple under conjugation by
    ``diag(s^a_1, ..., s^a_n)`` with ``a_1 > ... > a_n`` as ``s -> 0``, so the
    invariants must agree.
    """
    if not all(is_upper_triangular(m) for m in t.mats):
        raise ValueError("tuple is not upper triangular")
    if not pairwise_commuting(t):
        raise ValueError("tuple is not pairwise commuting")
    return theta_at(f, t) == theta_at(f, t.diagonal_part())


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------


def random_scalar(ring: BaseRing, rng: random.Random, bound: int = 3):
    if isinstance(ring, ModRing):
        return rng.randrange(ring.p)
    if ring == QQ and rng.random() < 0.3:
        return ring.normalize(rng.randint(-bound, bound)) / rng.randint(1, bound)
    return ring.normalize(rng.randint(-bound, bound))


def random_matrix(ring: BaseRing, n: int, rng: random.Random) -> ScalarMatrix:
    return _norm_matrix(ring, [[random_scalar(ring, rng) for _ in range(n)] for _ in range(n)])


def random_tuple(ring: BaseRing, n: int, m: int, rng: random.Random) -> MatrixTuple:
    return MatrixTuple(ring, tuple(random_matrix(ring, n, rng) for _ in range(m)))


def random_invertible(ring: BaseRing, n: int, rng: random.Random) -> ScalarMatrix:
    """Random element of GL(n, K); over ZZ a product of elementary matrices."""
    if ring.is_field:
        while True:
            g = random_matrix(ring, n, rng)
            if smat_det(ring, g) != 0:
                return g
    g = [list(r) for r in smat_identity(ring, n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            q = rng.randint(-2, 2)
            g[i] = [x + q * y for x, y in zip(g[i], g[j])]
    if rng.random() < 0.5:
        g[0] = [-x for x in g[0]]
    return _norm_matrix(ring, g)


def random_word(ring: BaseRing, m: int, max_len: int, rng: random.Random) -> FreeElement:
    """A monomial word of length ``0..max_len``, sometimes plus a second word."""

    def one():
        length = rng.randint(1, max_len) if max_len else 0
        return tuple(rng.randint(1, m) for _ in range(length))

    terms = {one(): 1}
    if rng.random() < 0.3:
        w = one()
        terms[w] = terms.get(w, 0) + ring.normalize(rng.choice([-1, 2]))
    return FreeElement(ring, terms)


def commuting_tuple_sampler(ctx: Context, seed: int) -> MatrixTuple:
    """Pairwise commuting upper-triangular tuple, reproducible from ``seed``.

    ``M_1`` is random upper triangular and ``M_k`` for ``k > 1`` is a random
    polynomial of degree < n in ``M_1``.
    """
    ring = ctx.ring
    rng = random.Random(seed)
    n = ctx.n
    m1 = _norm_matrix(
        ring,
        [[random_scalar(ring, rng) if j >= i else 0 for j in range(n)] for i in range(n)],
    )
    powers = [smat_identity(ring, n)]
    for _ in range(1, n):
        powers.append(smat_mul(ring, powers[-1], m1))
    mats = [m1]
    for _ in range(1, ctx.m):
        acc = _norm_matrix(ring, [[0] * n for _ in range(n)])
        for pw in powers:
            acc = smat_add(ring, acc, smat_scale(ring, random_scalar(ring, rng), pw))
        mats.append(acc)
    t = MatrixTuple(ring, tuple(mats))
    if not pairwise_commuting(t):
        raise InvariantViolation("sampled tuple does not commute")
    return t


def permutation_matrix(ring: BaseRing, sigma: Sequence[int]) -> ScalarMatrix:
    """Matrix sending basis vector ``e_j`` to ``e_sigma(j)`` (``sigma`` 1-based)."""
    n = len(sigma)
    return _norm_matrix(
        ring, [[1 if sigma[j] == i + 1 else 0 for j in range(n)] for i in range(n)]
    )


def is_multisymmetric_image(f: FreeElement, ctx: Context) -> bool:
    return all(is_multisymmetric(delta_specialize(t)) for t in theta(f, ctx))
