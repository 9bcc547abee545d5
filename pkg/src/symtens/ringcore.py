"""Exact base rings (ZZ, QQ, GF(p)) and exact linear solving.

Polynomials store raw coefficient values (``int`` or ``Fraction``) and defer to
a :class:`BaseRing` for normalization.  :class:`RingElement` is the checked,
user-facing scalar type.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


class RingMismatchError(ValueError):
    """Operands belong to different rings or contexts."""


class BaseRing:
    """Abstract exact commutative ring of scalars."""

    name = "?"
    is_field = False
    characteristic = 0

    def normalize(self, value):
        raise NotImplementedError

    def inv(self, value):
        raise ZeroDivisionError(f"{value} is not invertible in {self}")

    def is_unit(self, value) -> bool:
        try:
            self.inv(value)
        except (ZeroDivisionError, ValueError):
            return False
        return True

    def __call__(self, value) -> "RingElement":
        return RingElement(self, self.normalize(value))

    def render(self, value) -> str:
        return str(value)

    def parse_spec(self) -> str:
        return self.name


@dataclass(frozen=True)
class IntegerRing(BaseRing):
    name = "int"

    def normalize(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"{value} is not an integer")
            return value.numerator
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot coerce {value!r} into ZZ")
        return value

    def inv(self, value):
        if value in (1, -1):
            return value
        raise ZeroDivisionError(f"{value} is not a unit in ZZ")

    def __str__(self):
        return "ZZ"


@dataclass(frozen=True)
class RationalRing(BaseRing):
    name = "rat"
    is_field = True

    def normalize(self, value):
        if isinstance(value, bool):
            raise TypeError(f"cannot coerce {value!r} into QQ")
        return Fraction(value)

    def inv(self, value):
        if value == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / Fraction(value)

    def render(self, value) -> str:
        return str(Fraction(value))

    def __str__(self):
        return "QQ"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ModRing(BaseRing):
    p: int
    is_field = True

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"modulus {self.p!r} is not prime")

    @property
    def characteristic(self):
        return self.p

    @property
    def name(self):
        return f"mod:{self.p}"

    def normalize(self, value):
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot coerce {value!r} into GF({self.p})")
        return value % self.p

    def inv(self, value):
        value %= self.p
        if value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return pow(value, -1, self.p)

    def __str__(self):
        return f"GF({self.p})"


ZZ = IntegerRing()
QQ = RationalRing()


def ring_from_spec(spec: str) -> BaseRing:
    """Parse ``int``, ``rat`` or ``mod:<p>``."""
    if spec == "int":
        return ZZ
    if spec == "rat":
        return QQ
    if spec.startswith("mod:"):
        try:
            p = int(spec[4:])
        except ValueError:
            raise ValueError(f"bad modulus in ring spec {spec!r}") from None
        return ModRing(p)
    raise ValueError(f"unknown ring {spec!r}; expected int, rat or mod:<p>")


@dataclass(frozen=True)
class RingElement:
    """An immutable scalar tagged with its ring."""

    ring: BaseRing
    value: object

    def _check(self, other) -> "RingElement":
        if not isinstance(other, RingElement):
            return RingElement(self.ring, self.ring.normalize(other))
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot combine {self.ring} and {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return RingElement(self.ring, self.ring.normalize(self.value + other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return RingElement(self.ring, self.ring.normalize(self.value - other.value))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return RingElement(self.ring, self.ring.normalize(self.value * other.value))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.normalize(-self.value))

    def inverse(self) -> "RingElement":
        return RingElement(self.ring, self.ring.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return self.ring.render(self.value)


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    if not isinstance(b, RingElement):
        raise TypeError("ring_add expects two RingElements")
    return a + b


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    if not isinstance(b, RingElement):
        raise TypeError("ring_mul expects two RingElements")
    return a * b


def ring_neg(a: RingElement) -> RingElement:
    return -a


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------


class ExactMatrix:
    """Rectangular matrix of raw ring values, normalized into one ring."""

    def __init__(self, ring: BaseRing, rows: Sequence[Sequence]):
        rows = [[ring.normalize(v) for v in row] for row in rows]
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        self.ring = ring
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(rows)
        self.ncols = widths.pop() if widths else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def apply(self, x: Sequence) -> list:
        if len(x) != self.ncols:
            raise ValueError("dimension mismatch")
        norm = self.ring.normalize
        return [norm(sum(a * b for a, b in zip(row, x))) for row in self.rows]

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.ring == other.ring
            and self.rows == other.rows
            and self.ncols == other.ncols
        )

    def __repr__(self):
        return f"ExactMatrix({self.ring}, {[list(r) for r in self.rows]})"


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _matmul(a, b):
    cols = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def smith_normal_form(a: Sequence[Sequence[int]]):
    """Return ``(U, S, V)`` with ``U*A*V == S`` over ZZ.

    ``U`` and ``V`` are unimodular and ``S`` is diagonal with
    ``S[i][i]`` dividing ``S[i+1][i+1]`` and nonnegative entries.
    """
    s = [list(row) for row in a]
    r = len(s)
    c = len(s[0]) if r else 0
    u = _identity(r)
    v = _identity(c)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        if q:
            s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        if q:
            for row in s:
                row[dst] += q * row[src]
            for row in v:
                row[dst] += q * row[src]

    t = 0
    while t < min(r, c):
        nonzero = [(abs(s[i][j]), i, j) for i in range(t, r) for j in range(t, c) if s[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, r):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // s[t][t]))
                    if s[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, c):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // s[t][t]))
                    if s[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # pivot must divide the rest of the submatrix
            bad = next(
                ((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if s[i][j] % s[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, s, v


def _rref(ring: BaseRing, rows):
    """Row-reduce over a field; returns (reduced rows, transform, pivot cols)."""
    norm = ring.normalize
    a = [[norm(x) for x in row] for row in rows]
    r = len(a)
    c = len(a[0]) if r else 0
    t = [[norm(x) for x in row] for row in _identity(r)]
    pivots = []
    prow = 0
    for col in range(c):
        if prow == r:
            break
        sel = next((i for i in range(prow, r) if a[i][col] != 0), None)
        if sel is None:
            continue
        a[prow], a[sel] = a[sel], a[prow]
        t[prow], t[sel] = t[sel], t[prow]
        inv = ring.inv(a[prow][col])
        a[prow] = [norm(x * inv) for x in a[prow]]
        t[prow] = [norm(x * inv) for x in t[prow]]
        for i in range(r):
            if i != prow and a[i][col] != 0:
                q = a[i][col]
                a[i] = [norm(x - q * y) for x, y in zip(a[i], a[prow])]
                t[i] = [norm(x - q * y) for x, y in zip(t[i], t[prow])]
        pivots.append(col)
        prow += 1
    return a, t, pivots


class ExactSolver:
    """Factor ``A`` once, then solve ``A x = b`` for many right-hand sides.

    Over a field the canonical solution sets free variables to zero.  Over ZZ
    that rational solution is returned when it is integral; otherwise the
    Smith normal form decides solvability and produces an integral solution.
    """

    def __init__(self, a: ExactMatrix):
        self.a = a
        self.ring = a.ring
        field = self.ring if self.ring.is_field else QQ
        _, self._t, self._pivots = _rref(field, a.rows)
        self._field = field
        self._snf = None

    def _field_solve(self, b):
        norm = self._field.normalize
        c = [norm(sum(x * y for x, y in zip(row, b))) for row in self._t]
        rank = len(self._pivots)
        if any(v != 0 for v in c[rank:]):
            return None
        x = [norm(0)] * self.a.ncols
        for row, col in enumerate(self._pivots):
            x[col] = c[row]
        return x

    def _smith_solve(self, b):
        if self._snf is None:
            self._snf = smith_normal_form(self.a.rows)
        u, s, v = self._snf
        ub = [sum(x * y for x, y in zip(row, b)) for row in u]
        y = [0] * self.a.ncols
        for i, val in enumerate(ub):
            d = s[i][i] if i < self.a.ncols else 0
            if d == 0:
                if val != 0:
                    return None
            elif val % d:
                return None
            else:
                y[i] = val // d
        return [sum(x * z for x, z in zip(row, y)) for row in v]

    def solve(self, b: Sequence) -> Optional[list]:
        if len(b) != self.a.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {self.a.nrows}")
        b = [self.ring.normalize(v) for v in b]
        if self.ring.is_field:
            return self._field_solve(b)
        x = self._field_solve(b)
        if x is not None and all(v.denominator == 1 for v in x):
            return [v.numerator for v in x]
        if x is None:
            # no rational solution means no integral one either
            return None
        return self._smith_solve(b)


def solve_linear_exact(a: ExactMatrix, b: Sequence) -> Optional[list]:
    """Some solution of ``A x = b`` over ``a.ring``, or ``None`` if none exists."""
    return ExactSolver(a).solve(b)
