"""Numerical core for polyhedral tori."""

from papertorus.geometry.angles import (
    cone_angles,
    dihedral_angles,
    min_face_angle,
    surface_area,
    triangle_angle,
)
from papertorus.geometry.crofton import crofton_estimate, spherical_link
from papertorus.geometry.development import develop, reconstruct_faces, reduced_gram
from papertorus.geometry.hull import convex_hull
from papertorus.geometry.intersection import is_embedded_float, tri_pair_relation
from papertorus.geometry.puptent import build_pup_tent, published_params, published_pup_tent
from papertorus.geometry.slicing import make_plane, slice_plane

__all__ = [
    "build_pup_tent",
    "cone_angles",
    "convex_hull",
    "crofton_estimate",
    "develop",
    "dihedral_angles",
    "is_embedded_float",
    "make_plane",
    "min_face_angle",
    "published_params",
    "published_pup_tent",
    "reconstruct_faces",
    "reduced_gram",
    "slice_plane",
    "spherical_link",
    "surface_area",
    "tri_pair_relation",
    "triangle_angle",
]
