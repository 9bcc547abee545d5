"""Square matrices over a polynomial ring and division-free characteristic polynomials."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .polyring import Context, Polynomial
from .ringcore import QQ, RingMismatchError

MAX_NAIVE_N = 5


def berkowitz(rows: Sequence[Sequence], zero, one, upto: Optional[int] = None) -> list:
    """Coefficients ``[1, a_1, ..., a_n]`` of ``det(t*I - M) = sum a_k t^(n-k)``.

    Uses only ring operations on the entries, so it is valid over any
    commutative ring.  With ``upto`` set only ``a_0..a_upto`` are computed;
    the Toeplitz factors are lower triangular, so truncation is exact.
    """
    n = len(rows)
    if n == 0:
        return [one]
    keep = n + 1 if upto is None else min(n, upto) + 1
    a = [list(r) for r in rows]
    # vector for the trailing 1x1 block
    vec = [one, -a[n - 1][n - 1]][:keep]
    for r in range(n - 2, -1, -1):
        # block A_r = a[r:, r:], split off its first row/column
        size = n - r
        corner = a[r][r]
        row = a[r][r + 1:]
        col = [a[i][r] for i in range(r + 1, n)]
        sub = [a[i][r + 1:] for i in range(r + 1, n)]
        # diags[0] = 1, diags[1] = -corner, diags[j+2] = -R A^j C
        diags = [one, -corner]
        cur = col
        for j in range(min(size - 1, keep - 2)):
            val = zero
            for x, y in zip(row, cur):
                val = val + x * y
            diags.append(-val)
            if j + 1 < min(size - 1, keep - 2):
                nxt = []
                for srow in sub:
                    acc = zero
                    for x, y in zip(srow, cur):
                        acc = acc + x * y
                    nxt.append(acc)
                cur = nxt
        # Toeplitz (size+1) x size, lower triangular, times vec (length size)
        new = []
        for i in range(min(size + 1, keep)):
            acc = zero
            for j in range(min(i + 1, len(vec))):
                k = i - j
                if k < len(diags):
                    acc = acc + diags[k] * vec[j]
            new.append(acc)
        vec = new
    return vec


class MatrixOverRing:
    """Dense ``n x n`` matrix with :class:`Polynomial` entries from one context."""

    __slots__ = ("ctx", "n", "entries")

    def __init__(self, ctx: Context, entries: Sequence[Sequence]):
        size = len(entries)
        if any(len(r) != size for r in entries):
            raise ValueError("matrix must be square")
        rows = []
        for r in entries:
            row = []
            for e in r:
                if isinstance(e, Polynomial):
                    if e.ctx != ctx:
                        raise RingMismatchError("matrix entry from a different context")
                else:
                    e = ctx.const(e)
                row.append(e)
            rows.append(tuple(row))
        self.ctx = ctx
        self.n = size
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, ctx: Context, n: Optional[int] = None) -> "MatrixOverRing":
        n = ctx.n if n is None else n
        return cls.scalar(ctx, ctx.one(), n)

    @classmethod
    def zero(cls, ctx: Context, n: Optional[int] = None) -> "MatrixOverRing":
        n = ctx.n if n is None else n
        return cls(ctx, [[ctx.zero()] * n for _ in range(n)])

    @classmethod
    def scalar(cls, ctx: Context, c, n: Optional[int] = None) -> "MatrixOverRing":
        n = ctx.n if n is None else n
        c = c if isinstance(c, Polynomial) else ctx.const(c)
        z = ctx.zero()
        return cls(ctx, [[c if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, ctx: Context, diag: Sequence) -> "MatrixOverRing":
        z = ctx.zero()
        n = len(diag)
        return cls(ctx, [[diag[i] if i == j else z for j in range(n)] for i in range(n)])

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i][j]

    def _check(self, other: "MatrixOverRing"):
        if not isinstance(other, MatrixOverRing):
            raise TypeError("expected a MatrixOverRing")
        if other.n != self.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        if other.ctx != self.ctx:
            raise RingMismatchError("matrices from different contexts")

    def __add__(self, other):
        self._check(other)
        return MatrixOverRing(
            self.ctx,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return MatrixOverRing(self.ctx, [[-a for a in r] for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, (Polynomial, int, Fraction)):
            return MatrixOverRing(self.ctx, [[a * other for a in r] for r in self.entries])
        self._check(other)
        cols = list(zip(*other.entries))
        z = self.ctx.zero()
        out = []
        for row in self.entries:
            new = []
            for col in cols:
                acc = z
                for a, b in zip(row, col):
                    if a.terms and b.terms:
                        acc = acc + a * b
                new.append(acc)
            out.append(new)
        return MatrixOverRing(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = MatrixOverRing.identity(self.ctx, self.n)
        for _ in range(e):
            result = result * self
        return result

    def map(self, fn) -> "MatrixOverRing":
        """Apply ``fn`` entrywise; the images fix the new context."""
        rows = [[fn(a) for a in r] for r in self.entries]
        ctx = rows[0][0].ctx if rows else self.ctx
        return MatrixOverRing(ctx, rows)

    def trace(self) -> Polynomial:
        acc = self.ctx.zero()
        for i in range(self.n):
            acc = acc + self.entries[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.entries for a in r)

    def __eq__(self, other):
        return (
            isinstance(other, MatrixOverRing)
            and self.ctx == other.ctx
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ctx, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self.entries)
        return f"MatrixOverRing([{body}])"


def mat_add(a: MatrixOverRing, b: MatrixOverRing) -> MatrixOverRing:
    return a + b


def mat_mul(a: MatrixOverRing, b: MatrixOverRing) -> MatrixOverRing:
    if not isinstance(b, MatrixOverRing):
        raise TypeError("mat_mul expects two matrices")
    return a * b


@dataclass(frozen=True)
class CharPolyCoeffs:
    """``det(tI - M) = t^n + sum_k (-1)^k coeffs[k-1] t^(n-k)``; signs stripped."""

    coeffs: tuple

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def c(self, k: int):
        """1-based access: ``c(1)`` is the trace, ``c(n)`` the determinant."""
        if not 1 <= k <= len(self.coeffs):
            raise IndexError(k)
        return self.coeffs[k - 1]


def _strip_signs(vec):
    return tuple(v if k % 2 == 0 else -v for k, v in enumerate(vec))[1:]


def charpoly(m: MatrixOverRing, upto: Optional[int] = None) -> CharPolyCoeffs:
    """Characteristic-polynomial coefficients ``c_1..c_n`` by Berkowitz.

    ``upto`` limits the computation to ``c_1..c_upto``; the result then has
    that many entries.
    """
    vec = berkowitz(m.entries, m.ctx.zero(), m.ctx.one(), upto)
    return CharPolyCoeffs(_strip_signs(vec))


def faddeev_leverrier(m: MatrixOverRing) -> CharPolyCoeffs:
    """Characteristic polynomial via Faddeev-LeVerrier; divides by k, so QQ only."""
    if m.ctx.ring != QQ:
        raise ValueError("Faddeev-LeVerrier needs division by integers; use ring QQ")
    n = m.n
    ident = MatrixOverRing.identity(m.ctx, n)
    mk = MatrixOverRing.zero(m.ctx, n)
    a = [m.ctx.one()]
    for k in range(1, n + 1):
        mk = m * mk + ident * a[-1]
        ak = (m * mk).trace() * Fraction(-1, k)
        a.append(ak)
    return CharPolyCoeffs(_strip_signs(a))


def _leibniz(rows, zero, one):
    n = len(rows)
    total = zero
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = one
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total - term if inversions % 2 else total + term
    return total


def det_naive(m: MatrixOverRing) -> Polynomial:
    """Leibniz-formula determinant; an independent oracle for :func:`charpoly`."""
    if m.n > MAX_NAIVE_N:
        raise ValueError(f"det_naive limited to n <= {MAX_NAIVE_N}, got {m.n}")
    return _leibniz(m.entries, m.ctx.zero(), m.ctx.one())


class _TPoly:
    """Polynomial in an auxiliary variable ``t`` with Polynomial coefficients."""

    __slots__ = ("c", "zero")

    def __init__(self, coeffs: List[Polynomial], zero: Polynomial):
        self.c = coeffs
        self.zero = zero

    def __add__(self, other):
        size = max(len(self.c), len(other.c))
        pad = lambda v: v + [self.zero] * (size - len(v))  # noqa: E731
        return _TPoly([a + b for a, b in zip(pad(self.c), pad(other.c))], self.zero)

    def __neg__(self):
        return _TPoly([-a for a in self.c], self.zero)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = [self.zero] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a.is_zero():
                continue
            for j, b in enumerate(other.c):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return _TPoly(out, self.zero)


def charpoly_naive(m: MatrixOverRing) -> CharPolyCoeffs:
    """Expand ``det(tI - M)`` by the Leibniz formula and read off ``c_1..c_n``."""
    if m.n > MAX_NAIVE_N:
        raise ValueError(f"det_naive limited to n <= {MAX_NAIVE_N}, got {m.n}")
    z, o = m.ctx.zero(), m.ctx.one()
    rows = [
        [_TPoly([-a, o] if i == j else [-a], z) for j, a in enumerate(r)]
        for i, r in enumerate(m.entries)
    ]
    det = _leibniz(rows, _TPoly([z], z), _TPoly([o], z))
    n = m.n
    coeffs = det.c + [z] * (n + 1 - len(det.c))
    # coeffs[d] multiplies t^d; a_k multiplies t^(n-k)
    vec = [coeffs[n - k] for k in range(n + 1)]
    return CharPolyCoeffs(_strip_signs(vec))
