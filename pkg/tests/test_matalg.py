import random

import pytest
import sympy

from symtens.genmat import generic_matrix
from symtens.invariants import random_invertible, smat_inverse
from symtens.matalg import (
    MatrixOverRing,
    charpoly,
    charpoly_naive,
    det_naive,
    faddeev_leverrier,
)
from symtens.multisym import elementary_symmetric
from symtens.polyring import Context, var_x
from symtens.ringcore import QQ, ZZ, ModRing, RingMismatchError


def random_linear_matrix(ctx, n, rng, variables):
    def entry():
        p = ctx.const(rng.randint(-2, 2))
        for v in variables:
            p = p + ctx.var(v) * rng.randint(-2, 2)
        return p

    return MatrixOverRing(ctx, [[entry() for _ in range(n)] for _ in range(n)])


def test_identity_and_zero_products():
    ctx = Context(ZZ, 2, 1)
    a = generic_matrix(ctx, 1)
    assert MatrixOverRing.identity(ctx) * a == a
    assert (a * MatrixOverRing.zero(ctx)).is_zero()
    nil = MatrixOverRing(ctx, [[0, 1], [0, 0]])
    assert (nil * nil).is_zero()


def test_size_and_context_mismatch():
    a = MatrixOverRing.identity(Context(ZZ, 2, 1))
    with pytest.raises(ValueError):
        a * MatrixOverRing.identity(Context(ZZ, 2, 1), 3)
    with pytest.raises(RingMismatchError):
        a + MatrixOverRing.identity(Context(QQ, 2, 1))


def test_charpoly_one_by_one():
    ctx = Context(ZZ, 1, 1)
    assert charpoly(MatrixOverRing(ctx, [[ctx.y(1)]])).coeffs == (ctx.y(1),)


def test_charpoly_identity_three():
    ctx = Context(ZZ, 3, 1)
    assert charpoly(MatrixOverRing.identity(ctx)).coeffs == (3, 3, 1)


def test_charpoly_generic_two_by_two():
    ctx = Context(ZZ, 2, 1)
    xi = ctx.xi
    c = charpoly(generic_matrix(ctx, 1))
    assert c.c(1) == xi(1, 1, 1) + xi(1, 2, 2)
    assert c.c(2) == xi(1, 1, 1) * xi(1, 2, 2) - xi(1, 1, 2) * xi(1, 2, 1)


def test_det_naive_examples():
    ctx = Context(ZZ, 2, 1)
    assert det_naive(MatrixOverRing.identity(ctx)) == 1
    y = ctx.y(1)
    assert det_naive(MatrixOverRing(ctx, [[y, 2], [y, 2]])) == 0
    xi = ctx.xi
    assert det_naive(generic_matrix(ctx, 1)) == xi(1, 1, 1) * xi(1, 2, 2) - xi(1, 1, 2) * xi(1, 2, 1)


def test_det_naive_size_limit():
    ctx = Context(ZZ, 6, 1)
    with pytest.raises(ValueError):
        det_naive(MatrixOverRing.identity(ctx))


def test_generic_three_by_three_against_sympy():
    ctx = Context(ZZ, 3, 1)
    mat = generic_matrix(ctx, 1)
    syms = [[sympy.Symbol(f"xi_1_{i}_{j}") for j in (1, 2, 3)] for i in (1, 2, 3)]
    t = sympy.Symbol("t")
    ref = sympy.Poly(sympy.Matrix(syms).charpoly(t).as_expr(), t).all_coeffs()
    ours = charpoly(mat)
    for k in (1, 2, 3):
        expected = sympy.expand((-1) ** k * ref[k])
        got = sympy.sympify(str(ours.c(k)).replace("xi[", "xi_").replace("]", "").replace(",", "_"))
        assert sympy.expand(got - expected) == 0


@pytest.mark.parametrize("ring", [ZZ, QQ, ModRing(2)], ids=str)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_berkowitz_matches_leibniz(ring, n):
    rng = random.Random(100 * n + ring.characteristic)
    ctx = Context(ring, n, 2)
    variables = [var_x(1, 1), var_x(1, 2)]
    for _ in range(3):
        mat = random_linear_matrix(ctx, n, rng, variables)
        cp = charpoly(mat)
        assert cp == charpoly_naive(mat)
        assert cp.c(1) == mat.trace()
        assert cp.c(n) == det_naive(mat)


@pytest.mark.parametrize("seed", range(5))
def test_faddeev_leverrier_cross_check(seed):
    rng = random.Random(seed)
    ctx = Context(QQ, 3, 1)
    mat = random_linear_matrix(ctx, 3, rng, [var_x(1, 1), var_x(2, 1)])
    assert faddeev_leverrier(mat) == charpoly(mat)


def test_faddeev_leverrier_refuses_char_p():
    with pytest.raises(ValueError):
        faddeev_leverrier(MatrixOverRing.identity(Context(ModRing(2), 2, 1)))


@pytest.mark.parametrize("ring", [ZZ, ModRing(3)], ids=str)
@pytest.mark.parametrize("upto", [1, 2, 3])
def test_truncated_charpoly(ring, upto):
    ctx = Context(ring, 4, 1)
    mat = random_linear_matrix(ctx, 4, random.Random(upto), [var_x(1, 1)])
    full = charpoly(mat).coeffs
    assert charpoly(mat, upto).coeffs == full[:upto]


@pytest.mark.parametrize("ring", [QQ, ModRing(5), ModRing(101)], ids=str)
@pytest.mark.parametrize("seed", range(4))
def test_conjugation_invariance(ring, seed):
    rng = random.Random(seed)
    n = 3
    ctx = Context(ring, n, 2)
    mat = random_linear_matrix(ctx, n, rng, [var_x(1, 1), var_x(2, 2)])
    g = random_invertible(ring, n, rng)
    ginv = smat_inverse(ring, g)
    gm = MatrixOverRing(ctx, g)
    gi = MatrixOverRing(ctx, ginv)
    assert charpoly(gm * mat * gi) == charpoly(mat)


@pytest.mark.parametrize("ring", [ZZ, ModRing(2)], ids=str)
def test_upper_triangular_product_expansion(ring):
    rng = random.Random(7)
    n = 4
    ctx = Context(ring, n, 1)
    variables = [var_x(i, 1) for i in range(1, n + 1)]
    full = random_linear_matrix(ctx, n, rng, variables)
    tri = MatrixOverRing(
        ctx, [[full[i, j] if j >= i else 0 for j in range(n)] for i in range(n)]
    )
    diag = [tri[i, i] for i in range(n)]
    e = elementary_symmetric(diag, ctx.zero(), ctx.one())
    assert charpoly(tri).coeffs == tuple(e[1:])
