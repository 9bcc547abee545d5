"""Exit criteria, one test per criterion.

Each test records a ``[C<n>] PASS|FAIL`` line (with wall time against its
budget) that is printed in the pytest terminal summary.
"""

import contextlib
import itertools
import os
import random
import subprocess
import sys
import time


from symtens.genmat import (
    FreeElement,
    delta_specialize,
    diagonal_generics,
    eval_poly_at_matrices,
)
from symtens.invariants import (
    commuting_tuple_sampler,
    degeneration_check,
    invariance_trial,
    junker_weyl_witness,
    random_invertible,
    random_tuple,
    random_word,
    theta_representative,
)
from symtens.matalg import MatrixOverRing, charpoly, charpoly_naive
from symtens.multisym import (
    GeneratorExpr,
    GeneratorSymbol,
    decompose,
    ek_of_f,
    enumerate_generators,
    expand_generator_expr,
    expand_orbit,
    orbit_shapes,
)
from symtens.polyring import Context, y_monomial
from symtens.ringcore import QQ, ZZ, ModRing

from .conftest import ACCEPTANCE_RESULTS
from .golden.regen import load_corpus

GF2 = ModRing(2)
RING_IDS = {ZZ: "ZZ", QQ: "QQ", GF2: "GF(2)"}


@contextlib.contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_RESULTS.append(f"[C{number}] {status} {title} ({elapsed:.1f}s, budget {budget}s)")
    assert elapsed < budget, f"criterion {number} took {elapsed:.1f}s > {budget}s"


def monomials_up_to(ctx, degree):
    for exps in itertools.product(range(degree + 1), repeat=ctx.m):
        if sum(exps) <= degree:
            yield exps, type(ctx.zero())(ctx, {y_monomial(ctx, exps): ctx.ring.normalize(1)})


def words_up_to(m, length):
    for L in range(length + 1):
        yield from itertools.product(range(1, m + 1), repeat=L)


def test_c1_charpoly_matches_leibniz():
    with criterion(1, "Berkowitz == Leibniz det(tI-M), n=1..4 x 25 matrices x {ZZ,QQ,GF(2)}", 60):
        for ring in (ZZ, QQ, GF2):
            for n in (1, 2, 3, 4):
                rng = random.Random(1000 * n + ring.characteristic + (1 if ring == QQ else 0))
                ctx = Context(ring, n, 2)
                gens = [ctx.y(1), ctx.y(2)]
                for _ in range(25):

                    def entry():
                        p = ctx.const(rng.randint(-2, 2))
                        for g in gens:
                            p = p + g * rng.randint(-2, 2)
                        return p

                    mat = MatrixOverRing(ctx, [[entry() for _ in range(n)] for _ in range(n)])
                    assert charpoly(mat) == charpoly_naive(mat), (ring, n)


def test_c2_diagonal_charpoly_is_ek():
    with criterion(2, "charpoly(f(delta)) c_k == e_k(f), n in {2,3}, m in {1,2}, deg f <= 3", 30):
        for n, m in itertools.product((2, 3), (1, 2)):
            ctx = Context(ZZ, n, m)
            deltas = diagonal_generics(ctx)
            for _, f in monomials_up_to(ctx, 3):
                cp = charpoly(eval_poly_at_matrices(f, deltas))
                assert cp.coeffs == tuple(ek_of_f(k, f) for k in range(1, n + 1)), (n, m, f)


def test_c3_junker_weyl_witness():
    with criterion(3, "Delta(theta_k(w)) == e_k(ab(w)), n,m <= 3, |w| <= 3, {ZZ,GF(2)}", 120):
        for ring in (ZZ, GF2):
            for n, m in itertools.product((1, 2, 3), repeat=2):
                ctx = Context(ring, n, m)
                for w in words_up_to(m, 3):
                    assert junker_weyl_witness(FreeElement.word(ring, w), ctx).holds, (ring, n, m, w)


def test_c4_generation_round_trip():
    with criterion(4, "every orbit sum of multidegree <= (3,3), n <= 3, m <= 2 decomposes exactly", 300):
        count = 0
        for ring in (ZZ, QQ, GF2):
            for n, m in itertools.product((1, 2, 3), (1, 2)):
                ctx = Context(ring, n, m)
                for d in itertools.product(range(4), repeat=m):
                    for o in orbit_shapes(ctx, d):
                        p = expand_orbit(o, ctx)
                        g = decompose(p)
                        assert expand_generator_expr(g) == p, (ring, n, m, o)
                        if ring == ZZ:
                            assert all(isinstance(c, int) for c in g.terms.values())
                        count += 1
        assert count > 0
        ctx = Context(GF2, 2, 1)
        target = ctx.x(1, 1) * ctx.x(2, 1)
        assert str(decompose(target)) == "E(2;y1)"
        assert decompose(target) == GeneratorExpr.symbol(ctx, GeneratorSymbol(2, (1,)))


def test_c5_theta_representatives_map_to_generators():
    with criterion(5, "Delta(theta-representative of E(k;f)) == e_k(f) for all generators in bound", 60):
        for ring in (ZZ, QQ, GF2):
            for n, m in itertools.product((1, 2, 3), (1, 2)):
                ctx = Context(ring, n, m)
                for s in enumerate_generators(ctx, (3,) * m):
                    rep = theta_representative(ctx, s)
                    assert delta_specialize(rep) == ek_of_f(s.k, s.monomial_poly(ctx)), (ring, n, m, s)


def test_c6_gl_invariance():
    with criterion(6, "invariance_trial true in 100 trials per p in {2,3,101}", 30):
        for p in (2, 3, 101):
            ring = ModRing(p)
            for i in range(100):
                rng = random.Random(p * 10_000 + i)
                n, m = 1 + i % 3, 1 + (i // 3) % 3
                f = random_word(ring, m, 3, rng)
                t = random_tuple(ring, n, m, rng)
                g = random_invertible(ring, n, rng)
                assert invariance_trial(f, t, g), (p, i)


def test_c7_degeneration():
    with criterion(7, "degeneration_check true on 50 sampled tuples over QQ and GF(101)", 30):
        for ring in (QQ, ModRing(101)):
            for i in range(50):
                rng = random.Random(i)
                n, m = 1 + i % 3, 1 + (i // 3) % 3
                t = commuting_tuple_sampler(Context(ring, n, m), seed=i)
                f = random_word(ring, m, 3, rng)
                assert degeneration_check(t, f), (ring, i)


def _run_corpus(hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    outputs = []
    for _, argv in load_corpus():
        proc = subprocess.run(
            [sys.executable, "-m", "symtens", *argv], capture_output=True, env=env
        )
        outputs.append((proc.returncode, proc.stdout, proc.stderr))
    return outputs


def test_c8_cli_determinism():
    with criterion(8, "golden corpus (>= 20 invocations) byte-identical across two runs", 120):
        corpus = list(load_corpus())
        assert len(corpus) >= 20
        assert _run_corpus(1) == _run_corpus(2)
