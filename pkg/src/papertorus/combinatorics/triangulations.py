"""The two torus triangulations the prover and the geometry work on."""

from functools import lru_cache
from itertools import permutations
from typing import Tuple

from papertorus.core.errors import InternalInconsistency
from papertorus.core.models import Triangulation
from papertorus.logging import get_logger

logger = get_logger(__name__)

# (04)(13)(26)(57): the order-2 rotation of the pup tent about the z-axis.
BEST8_SYMMETRY: Tuple[int, ...] = (4, 3, 6, 1, 0, 7, 2, 5)

BEST8_FACES: Tuple[Tuple[int, int, int], ...] = (
    (0, 1, 2),
    (0, 2, 4),
    (0, 4, 6),
    (0, 6, 5),
    (0, 5, 3),
    (0, 3, 1),
    (1, 5, 2),
    (1, 3, 4),
    (1, 4, 7),
    (1, 7, 5),
    (4, 3, 6),
    (4, 2, 7),
    (3, 7, 6),
    (3, 5, 7),
    (2, 5, 6),
    (2, 6, 7),
)


def _checked(t: Triangulation) -> Triangulation:
    problems = t.invariant_violations()
    if problems:
        raise InternalInconsistency(f"{t.name} triangulation is broken: {'; '.join(problems)}")
    return t


@lru_cache(maxsize=1)
def moebius_triangulation() -> Triangulation:
    """
    The 7-vertex torus whose 1-skeleton is K7.

    Faces are {i, i+1, i+3} and {i, i+2, i+3} mod 7, oriented coherently.
    """
    faces = []
    for i in range(7):
        faces.append((i, (i + 1) % 7, (i + 3) % 7))
    for i in range(7):
        faces.append((i, (i + 3) % 7, (i + 2) % 7))
    return _checked(Triangulation(7, tuple(faces), name="moebius"))


@lru_cache(maxsize=1)
def best8_triangulation() -> Triangulation:
    """The vertex-transitive 8-vertex torus with all degrees 6 carrying the pup tent."""
    return _checked(Triangulation(8, BEST8_FACES, name="best8"))


def triangulation_by_name(name: str) -> Triangulation:
    if name == "moebius":
        return moebius_triangulation()
    if name == "best8":
        return best8_triangulation()
    raise ValueError(f"Unknown triangulation: {name!r} (expected 'moebius' or 'best8')")


def is_automorphism(t: Triangulation, perm: Tuple[int, ...]) -> bool:
    """True when relabeling by ``perm`` maps the face set onto itself (orientation ignored)."""
    keys = t.face_keys
    return all(frozenset(perm[v] for v in f) in keys for f in t.faces)


@lru_cache(maxsize=4)
def automorphisms(t: Triangulation) -> Tuple[Tuple[int, ...], ...]:
    """
    All vertex relabelings preserving the face set, by brute force.

    Orientation-reversing symmetries are included. Candidates are pruned by
    requiring that face 0 maps to a face before the full check.
    """
    keys = t.face_keys
    first = t.faces[0]
    found = []
    for perm in permutations(range(t.vertex_count)):
        if frozenset(perm[v] for v in first) not in keys:
            continue
        if is_automorphism(t, perm):
            found.append(perm)
    logger.debug(
        "Automorphism group enumerated",
        extra={"event": "triangulation.automorphisms", "triangulation": t.name, "order": len(found)},
    )
    return tuple(found)
