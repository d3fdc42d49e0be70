"""Angle map, Newton refinement and the flatness search."""

from papertorus.solver.angle_map import angle_map, angle_map_full, jacobian
from papertorus.solver.newton import newton_refine
from papertorus.solver.search import hill_climb, random_embedded_config, run_chains

__all__ = [
    "angle_map",
    "angle_map_full",
    "hill_climb",
    "jacobian",
    "newton_refine",
    "random_embedded_config",
    "run_chains",
]
