"""Computer-assisted part of the Hull Lemma for the 7-vertex torus.

Pipeline: enumerate the internal edge patterns, drop those with a vertex of
internal degree above 3, apply the Cycle Rule at every vertex, then look for
a vertex whose whole star is external on each survivor.
"""

from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, permutations
from math import comb
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from papertorus.combinatorics.triangulations import automorphisms, moebius_triangulation
from papertorus.core.errors import InternalInconsistency
from papertorus.core.models import (
    EdgePattern,
    HullLemmaReport,
    PatternOutcome,
    TriangleClassification,
    Triangulation,
    edge,
)
from papertorus.core.models.triangulation import Edge, face_edges
from papertorus.logging import get_logger

logger = get_logger(__name__)

INTERNAL_EDGE_COUNT = 6
MAX_INTERNAL_DEGREE = 3
NORMALIZING_EDGE: Edge = (0, 1)
EXPECTED_SURVIVORS = 6


def enumerate_patterns(t: Optional[Triangulation] = None) -> List[EdgePattern]:
    """
    All 6-subsets of the edges containing (0, 1), lexicographic on sorted edge lists.

    Returns:
        C(20, 5) = 15504 patterns for the Moebius torus
    """
    t = t or moebius_triangulation()
    rest = [e for e in t.edges if e != NORMALIZING_EDGE]
    return [
        EdgePattern(internal_edges=(NORMALIZING_EDGE, *chosen))
        for chosen in combinations(rest, INTERNAL_EDGE_COUNT - 1)
    ]


def max_internal_degree(p: EdgePattern, vertex_count: int = 7) -> int:
    return max(p.internal_degree(v) for v in range(vertex_count))


def filter_internal_degree(
    patterns: Sequence[EdgePattern], vertex_count: int = 7
) -> List[EdgePattern]:
    """Keep patterns in which no vertex meets more than 3 internal edges."""
    return [p for p in patterns if max_internal_degree(p, vertex_count) <= MAX_INTERNAL_DEGREE]


def classify_triangles(t: Triangulation, p: EdgePattern) -> TriangleClassification:
    """Faces touching an internal edge are internal; the rest are external."""
    internal = set(p.internal_edges)
    inside = frozenset(
        idx for idx, f in enumerate(t.faces) if any(e in internal for e in face_edges(f))
    )
    outside = frozenset(range(len(t.faces))) - inside
    return TriangleClassification(internal_faces=inside, external_faces=outside)


def is_dihedral_equivalent(a: Sequence[int], b: Sequence[int]) -> bool:
    """True when cycle ``b`` is a rotation or reflection of cycle ``a``."""
    if len(a) != len(b) or set(a) != set(b):
        return False
    if not a:
        return True
    n = len(a)
    start = b.index(a[0])
    forward = tuple(b[(start + i) % n] for i in range(n))
    backward = tuple(b[(start - i) % n] for i in range(n))
    return tuple(a) in (forward, backward)


def external_neighbors(t: Triangulation, p: EdgePattern, q: int) -> Tuple[int, ...]:
    """Neighbours of ``q`` across external edges, in the cyclic order of q's link."""
    return tuple(u for u in t.link(q) if not p.is_internal((q, u)))


def candidate_links(t: Triangulation, p: EdgePattern, q: int) -> Iterable[Tuple[int, ...]]:
    """
    One representative per dihedral class of cycles on q's external neighbours
    whose consecutive pairs are all external edges.
    """
    ring = external_neighbors(t, p, q)
    if len(ring) < 3:
        return
    first, rest = ring[0], ring[1:]
    for order in permutations(rest):
        if order[0] > order[-1]:
            continue
        cycle = (first, *order)
        pairs = zip(cycle, cycle[1:] + cycle[:1])
        if all(edge(a, b) in t.edge_set and not p.is_internal((a, b)) for a, b in pairs):
            yield cycle


def vertex_cycle_rule(t: Triangulation, p: EdgePattern, q: int) -> bool:
    """
    Whether vertex ``q`` can have a convex hull link compatible with its torus link.

    A hull link (w1..wK) must run along external edges and be a rotation or
    reflection of the external neighbours (v1..vK) taken in torus-link order.
    """
    ring = external_neighbors(t, p, q)
    return any(is_dihedral_equivalent(ring, w) for w in candidate_links(t, p, q))


def conclusion_check(t: Triangulation, p: EdgePattern) -> Optional[int]:
    """Smallest vertex whose incident faces are all external, or None."""
    external = classify_triangles(t, p).external_faces
    for v in range(t.vertex_count):
        if all(idx in external for idx in t.incident_faces[v]):
            return v
    return None


def hull_facet_count_consistent(t: Triangulation, p: EdgePattern) -> bool:
    """
    The external edges can form the 1-skeleton of a simplicial 3-polytope.

    For V points in general position that requires 3V - 6 edges, external
    degree at least 3 everywhere and a connected edge graph.
    """
    external = p.external_edges(t)
    if len(external) != 3 * t.vertex_count - 6:
        return False
    adjacency = {v: set() for v in range(t.vertex_count)}
    for a, b in external:
        adjacency[a].add(b)
        adjacency[b].add(a)
    if any(len(n) < 3 for n in adjacency.values()):
        return False
    seen = {0}
    stack = [0]
    while stack:
        for u in adjacency[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == t.vertex_count


def apply_permutation(p: EdgePattern, perm: Sequence[int]) -> FrozenSet[Edge]:
    return frozenset(edge(perm[a], perm[b]) for a, b in p.internal_edges)


def pattern_orbit(
    t: Triangulation, p: EdgePattern, group: Optional[Sequence[Tuple[int, ...]]] = None
) -> FrozenSet[FrozenSet[Edge]]:
    """Images of ``p`` under the automorphism group (as unnormalized edge sets)."""
    group = group if group is not None else automorphisms(t)
    return frozenset(apply_permutation(p, perm) for perm in group)


def evaluate_pattern(t: Triangulation, pattern_id: int, p: EdgePattern) -> PatternOutcome:
    """Run one pattern through the degree filter, the Cycle Rule and the conclusion."""
    if max_internal_degree(p, t.vertex_count) > MAX_INTERNAL_DEGREE:
        return PatternOutcome(pattern_id=pattern_id, pattern=p, stage="degree")
    for q in range(t.vertex_count):
        if not vertex_cycle_rule(t, p, q):
            return PatternOutcome(pattern_id=pattern_id, pattern=p, stage="cycle", failed_vertex=q)
    return PatternOutcome(
        pattern_id=pattern_id, pattern=p, stage="survivor", witness=conclusion_check(t, p)
    )


def evaluate_patterns(
    t: Triangulation, patterns: Sequence[EdgePattern], threads: int = 1
) -> List[PatternOutcome]:
    """Outcomes in pattern order regardless of ``threads``."""
    ids = range(len(patterns))
    if threads <= 1:
        return [evaluate_pattern(t, i, p) for i, p in zip(ids, patterns)]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(lambda args: evaluate_pattern(t, *args), zip(ids, patterns)))


def summarize_outcomes(t: Triangulation, outcomes: Sequence[PatternOutcome]) -> HullLemmaReport:
    """
    Assemble the report and check that every survivor has a witness.

    Raises:
        InternalInconsistency: a survivor without a witness vertex, or one
            whose external edges cannot be a hull 1-skeleton
    """
    survivors = [o for o in outcomes if o.stage == "survivor"]
    missing = [o.pattern_id for o in survivors if o.witness is None]
    if missing:
        raise InternalInconsistency(f"Survivor patterns without a witness vertex: {missing}")
    skeletal = [o.pattern_id for o in survivors if not hull_facet_count_consistent(t, o.pattern)]
    if skeletal:
        raise InternalInconsistency(f"Survivor external edges are not a hull 1-skeleton: {skeletal}")

    group = automorphisms(t)
    single_orbit = False
    if survivors:
        normalized = {
            image
            for image in pattern_orbit(t, survivors[0].pattern, group)
            if NORMALIZING_EDGE in image
        }
        single_orbit = normalized == {frozenset(o.pattern.internal_edges) for o in survivors}

    return HullLemmaReport(
        total_patterns=len(outcomes),
        after_degree_filter=sum(1 for o in outcomes if o.stage != "degree"),
        survivors=[o.pattern for o in survivors],
        survivor_witness=[o.witness for o in survivors],  # type: ignore[misc]
        survivor_ids=[o.pattern_id for o in survivors],
        single_orbit=single_orbit,
        automorphism_group_order=len(group),
    )


def prove_hull_lemma(
    threads: int = 1, outcomes: Optional[List[PatternOutcome]] = None
) -> HullLemmaReport:
    """
    Replay the Hull Lemma enumeration on the Moebius torus.

    Args:
        threads: Worker threads for the per-pattern map
        outcomes: Optional list that receives every PatternOutcome (for the proof log)

    Returns:
        HullLemmaReport assembled in canonical pattern order
    """
    t = moebius_triangulation()
    patterns = enumerate_patterns(t)
    expected = comb(len(t.edges) - 1, INTERNAL_EDGE_COUNT - 1)
    if len(patterns) != expected:
        raise InternalInconsistency(f"Enumerated {len(patterns)} patterns, expected {expected}")
    logger.info(
        "Enumerated internal edge patterns",
        extra={"event": "hull_lemma.enumerate.done", "patterns": len(patterns)},
    )

    results = evaluate_patterns(t, patterns, threads=threads)
    if outcomes is not None:
        outcomes.extend(results)

    report = summarize_outcomes(t, results)
    logger.info(
        "Hull Lemma pipeline finished",
        extra={
            "event": "hull_lemma.done",
            "total_patterns": report.total_patterns,
            "after_degree_filter": report.after_degree_filter,
            "survivors": len(report.survivors),
            "single_orbit": report.single_orbit,
        },
    )
    if len(report.survivors) != EXPECTED_SURVIVORS or not report.single_orbit:
        raise InternalInconsistency(
            f"Expected {EXPECTED_SURVIVORS} survivors in one orbit, got {len(report.survivors)} "
            f"(single orbit: {report.single_orbit})"
        )
    return report
