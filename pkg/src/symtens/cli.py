"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 internal check failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Optional, Sequence, Tuple

from .genmat import (
    FreeElement,
    abelianize,
    delta_specialize,
    diagonal_generics,
    eval_poly_at_matrices,
    eval_word_at_matrices,
    free_of_polynomial,
    generic_matrices,
)
from .invariants import (
    InvariantViolation,
    commuting_tuple_sampler,
    degeneration_check,
    invariance_trial,
    junker_weyl_witness,
    random_invertible,
    random_tuple,
    random_word,
    substitute_generators,
    theta,
)
from .matalg import MAX_NAIVE_N, charpoly, det_naive
from .multisym import (
    DecompositionError,
    NotMultisymmetricError,
    decompose,
    ek_of_f,
    expand_generator_expr,
)
from .parser import ParseError, parse_polynomial, parse_word, uses_words
from .polyring import X, XI, Y, Context, Polynomial, is_multisymmetric
from .ringcore import ModRing, ring_from_spec


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common(p: argparse.ArgumentParser, expr_required: bool = True) -> None:
    p.add_argument("--n", type=int, required=True, help="matrix size")
    p.add_argument("--m", type=int, required=True, help="number of matrices / variables")
    p.add_argument("--ring", default="int", help="int, rat or mod:<p> (default int)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--expr", required=expr_required, help="expression, or - for stdin")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgParser(prog="symtens", description="Multisymmetric functions and matrix invariants.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    p = sub.add_parser("charpoly", help="theta_k of a word, or of a y-polynomial at generic matrices")
    _common(p)
    p = sub.add_parser("ek", help="e_k(f) for f in the y variables")
    _common(p)
    p.add_argument("-k", type=int, required=True)
    p = sub.add_parser("decompose", help="write a multisymmetric polynomial in the E(k;f)")
    _common(p)
    p = sub.add_parser("witness", help="compare Delta(theta_k(f)) with e_k(ab(f))")
    _common(p)
    p = sub.add_parser("invariance", help="randomized GL-invariance trials")
    _common(p, expr_required=False)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--prime", type=int, default=None, help="shortcut for --ring mod:<p>")
    p.add_argument("--max-len", type=int, default=3)
    p = sub.add_parser("degeneration", help="sampled commuting triangular tuples vs their diagonals")
    _common(p, expr_required=False)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--max-len", type=int, default=3)
    p = sub.add_parser("preimage", help="element of C mapping to a multisymmetric polynomial")
    _common(p)
    return parser


def _read_expr(args, stdin) -> Optional[str]:
    if args.expr == "-":
        return stdin.read().strip()
    return args.expr


def _context(args) -> Context:
    if args.n < 1 or args.m < 1:
        raise UsageError("--n and --m must be positive")
    ring = ModRing(args.prime) if getattr(args, "prime", None) else ring_from_spec(args.ring)
    return Context(ring, args.n, args.m)


def _element(text: str, ctx: Context) -> FreeElement:
    """Parse a word expression, or lift a y-polynomial to its sorted words."""
    if uses_words(text):
        return parse_word(text, ctx.ring, ctx.m)
    p = parse_polynomial(text, ctx)
    if p.namespaces() - {Y}:
        raise UsageError("expected a word in z1..zm or a polynomial in y1..ym")
    return free_of_polynomial(p)


def _x_polynomial(text: str, ctx: Context) -> Polynomial:
    p = parse_polynomial(text, ctx)
    if p.namespaces() - {X}:
        raise UsageError("expected a polynomial in the x[i,k] variables")
    return p


def _labelled(prefix: str, polys) -> List[Tuple[str, str]]:
    return [(f"{prefix}_{k}", str(p)) for k, p in enumerate(polys, start=1)]


def cmd_charpoly(args, ctx, text):
    f = _element(text, ctx)
    mat = eval_word_at_matrices(f, generic_matrices(ctx))
    thetas = theta(f, ctx)
    ok = thetas[0] == mat.trace()
    if ctx.n <= min(4, MAX_NAIVE_N):
        ok = ok and thetas[-1] == det_naive(mat)
    ok = ok and junker_weyl_witness(f, ctx, check=False).holds
    rows = _labelled("theta", thetas)
    return {"element": str(f), "theta": dict(rows)}, rows, ok


def cmd_ek(args, ctx, text):
    f = parse_polynomial(text, ctx)
    if f.namespaces() - {Y}:
        raise UsageError("ek expects a polynomial in y1..ym")
    if not 1 <= args.k <= ctx.n:
        raise UsageError(f"-k must lie in 1..{ctx.n}")
    e = ek_of_f(args.k, f)
    diag = charpoly(eval_poly_at_matrices(f, diagonal_generics(ctx))).c(args.k)
    ok = is_multisymmetric(e) and e == diag
    return str(e), [(None, str(e))], ok


def cmd_decompose(args, ctx, text):
    p = _x_polynomial(text, ctx)
    g = decompose(p)
    ok = expand_generator_expr(g) == p
    return str(g), [(None, str(g))], ok


def cmd_witness(args, ctx, text):
    f = _element(text, ctx)
    w = junker_weyl_witness(f, ctx, check=False)
    rows = _labelled("delta_theta", w.deltas) + _labelled("e_ab", w.elementary)
    result = {
        "element": str(f),
        "abelianization": str(abelianize(f, ctx)),
        "delta_theta": [str(p) for p in w.deltas],
        "e_ab": [str(p) for p in w.elementary],
        "equal": w.holds,
    }
    return result, rows, w.holds


def _trial_rng(seed: int, i: int) -> random.Random:
    return random.Random(seed * 1_000_003 + i)


def cmd_invariance(args, ctx, text):
    fixed = _element(text, ctx) if text else None
    failures = []
    for i in range(args.trials):
        rng = _trial_rng(args.seed, i)
        f = fixed if fixed is not None else random_word(ctx.ring, ctx.m, args.max_len, rng)
        t = random_tuple(ctx.ring, ctx.n, ctx.m, rng)
        g = random_invertible(ctx.ring, ctx.n, rng)
        if not invariance_trial(f, t, g):
            failures.append(i)
    passed = args.trials - len(failures)
    result = {"trials": str(args.trials), "passed": str(passed), "failures": [str(i) for i in failures]}
    rows = [("trials", str(args.trials)), ("passed", str(passed))]
    return result, rows, not failures


def cmd_degeneration(args, ctx, text):
    fixed = _element(text, ctx) if text else None
    failures = []
    for i in range(args.trials):
        rng = _trial_rng(args.seed, i)
        f = fixed if fixed is not None else random_word(ctx.ring, ctx.m, args.max_len, rng)
        t = commuting_tuple_sampler(ctx, args.seed * 1_000_003 + i)
        if not degeneration_check(t, f):
            failures.append(i)
    passed = args.trials - len(failures)
    result = {"trials": str(args.trials), "passed": str(passed), "failures": [str(i) for i in failures]}
    rows = [("trials", str(args.trials)), ("passed", str(passed))]
    return result, rows, not failures


def cmd_preimage(args, ctx, text):
    p = _x_polynomial(text, ctx)
    g = decompose(p)
    pre = substitute_generators(g)
    ok = delta_specialize(pre) == p and not (pre.namespaces() - {XI})
    result = {"decomposition": str(g), "preimage": str(pre)}
    rows = [("decomposition", str(g)), ("preimage", str(pre))]
    return result, rows, ok


COMMANDS = {
    "charpoly": cmd_charpoly,
    "ek": cmd_ek,
    "decompose": cmd_decompose,
    "witness": cmd_witness,
    "invariance": cmd_invariance,
    "degeneration": cmd_degeneration,
    "preimage": cmd_preimage,
}


def _inputs(args, text) -> dict:
    out = {"n": str(args.n), "m": str(args.m), "ring": _context(args).ring.name}
    if text is not None:
        out["expr"] = text
    for name in ("k", "trials", "max_len"):
        if getattr(args, name, None) is not None:
            out[name] = str(getattr(args, name))
    if args.command in ("invariance", "degeneration"):
        out["seed"] = str(args.seed)
    return out


def _render_text(rows, ok) -> str:
    lines = [value if label is None else f"{label} = {value}" for label, value in rows]
    if any(label is not None for label, _ in rows):
        lines.append(f"verified = {'true' if ok else 'false'}")
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str], stdin=None) -> Tuple[int, str, str]:
    """Run one command; returns ``(exit code, stdout text, stderr text)``."""
    stdin = stdin if stdin is not None else sys.stdin
    try:
        args = build_parser().parse_args(list(argv))
        ctx = _context(args)
        text = _read_expr(args, stdin)
        result, rows, ok = COMMANDS[args.command](args, ctx, text)
    except (UsageError, ParseError, NotMultisymmetricError, ValueError, IndexError) as exc:
        return 1, "", f"error: {exc}\n"
    except (DecompositionError, InvariantViolation) as exc:
        return 2, "", f"internal error: {exc}\n"
    if args.format == "json":
        payload = {
            "command": args.command,
            "inputs": _inputs(args, text),
            "result": result,
            "verified": ok,
        }
        out = json.dumps(payload, indent=2) + "\n"
    else:
        out = _render_text(rows, ok)
    if not ok:
        return 2, out, "internal error: verification failed\n"
    return 0, out, ""


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
