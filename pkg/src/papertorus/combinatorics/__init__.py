"""Torus triangulations and the Hull Lemma prover."""

from papertorus.combinatorics.hull_lemma import (
    classify_triangles,
    conclusion_check,
    enumerate_patterns,
    filter_internal_degree,
    prove_hull_lemma,
    vertex_cycle_rule,
)
from papertorus.combinatorics.triangulations import (
    BEST8_SYMMETRY,
    automorphisms,
    best8_triangulation,
    moebius_triangulation,
)

__all__ = [
    "BEST8_SYMMETRY",
    "automorphisms",
    "best8_triangulation",
    "classify_triangles",
    "conclusion_check",
    "enumerate_patterns",
    "filter_internal_degree",
    "moebius_triangulation",
    "prove_hull_lemma",
    "vertex_cycle_rule",
]
