"""Multisymmetric functions and characteristic-polynomial invariants of generic matrices."""

from .genmat import (
    FreeElement,
    abelianize,
    delta_matrix,
    delta_specialize,
    diagonal_generic,
    eval_poly_at_matrices,
    eval_word_at_matrices,
    generic_matrix,
)
from .invariants import (
    MatrixTuple,
    commuting_tuple_sampler,
    degeneration_check,
    gl_conjugate,
    invariance_trial,
    junker_weyl_witness,
    preimage_in_C,
    theta,
)
from .matalg import MatrixOverRing, charpoly, det_naive
from .multisym import (
    GeneratorExpr,
    GeneratorSymbol,
    OrbitSum,
    decompose,
    ek_of_f,
    enumerate_generators,
    expand_generator_expr,
    expand_orbit,
    rho,
    to_orbit_coordinates,
)
from .polyring import Context, Polynomial, is_multisymmetric, sn_act, substitute
from .ringcore import QQ, ZZ, ModRing, ring_from_spec, solve_linear_exact

__all__ = [
    "Context",
    "FreeElement",
    "GeneratorExpr",
    "GeneratorSymbol",
    "MatrixOverRing",
    "MatrixTuple",
    "ModRing",
    "OrbitSum",
    "Polynomial",
    "QQ",
    "ZZ",
    "abelianize",
    "charpoly",
    "commuting_tuple_sampler",
    "decompose",
    "degeneration_check",
    "delta_matrix",
    "delta_specialize",
    "det_naive",
    "diagonal_generic",
    "ek_of_f",
    "enumerate_generators",
    "eval_poly_at_matrices",
    "eval_word_at_matrices",
    "expand_generator_expr",
    "expand_orbit",
    "generic_matrix",
    "gl_conjugate",
    "invariance_trial",
    "is_multisymmetric",
    "junker_weyl_witness",
    "preimage_in_C",
    "rho",
    "ring_from_spec",
    "sn_act",
    "solve_linear_exact",
    "substitute",
    "theta",
    "to_orbit_coordinates",
]
