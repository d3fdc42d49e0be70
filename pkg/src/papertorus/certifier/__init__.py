"""Rigorous certificates: robust embedding, crude bound and existence."""

from papertorus.certifier.bounds import crude_bound_certificate, eval_g_bounds, vector_bounds_check
from papertorus.certifier.ift import expansion_check, ift_certificate
from papertorus.certifier.separation import (
    certify_robust_embedding,
    find_separation_disjoint,
    find_separation_shared,
    replay_certificate,
    robustness_radius,
)
from papertorus.geometry.exact import scale_to_integers

__all__ = [
    "certify_robust_embedding",
    "crude_bound_certificate",
    "eval_g_bounds",
    "expansion_check",
    "find_separation_disjoint",
    "find_separation_shared",
    "ift_certificate",
    "replay_certificate",
    "robustness_radius",
    "scale_to_integers",
    "vector_bounds_check",
]
