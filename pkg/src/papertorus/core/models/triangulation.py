"""Combinatorial torus triangulations and internal edge patterns."""

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

Edge = Tuple[int, int]
Face = Tuple[int, int, int]


def edge(a: int, b: int) -> Edge:
    """Unordered edge as a sorted pair."""
    return (a, b) if a < b else (b, a)


def face_edges(f: Face) -> Tuple[Edge, Edge, Edge]:
    return (edge(f[0], f[1]), edge(f[1], f[2]), edge(f[2], f[0]))


@dataclass(frozen=True)
class Triangulation:
    """An oriented closed triangulated surface given by its faces."""

    vertex_count: int
    faces: Tuple[Face, ...]
    name: str = field(default="", compare=False)

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted({e for f in self.faces for e in face_edges(f)}))

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @cached_property
    def face_keys(self) -> FrozenSet[FrozenSet[int]]:
        """Faces as unordered vertex triples."""
        return frozenset(frozenset(f) for f in self.faces)

    @cached_property
    def incident_faces(self) -> Dict[int, Tuple[int, ...]]:
        """Face indices incident to each vertex."""
        out: Dict[int, List[int]] = {v: [] for v in range(self.vertex_count)}
        for idx, f in enumerate(self.faces):
            for v in f:
                out[v].append(idx)
        return {v: tuple(ids) for v, ids in out.items()}

    @cached_property
    def edge_faces(self) -> Dict[Edge, Tuple[int, ...]]:
        """Face indices incident to each edge."""
        out: Dict[Edge, List[int]] = {}
        for idx, f in enumerate(self.faces):
            for e in face_edges(f):
                out.setdefault(e, []).append(idx)
        return {e: tuple(ids) for e, ids in out.items()}

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - len(self.edges) + len(self.faces)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def link(self, v: int) -> Tuple[int, ...]:
        """
        Cyclic order of the neighbours of ``v`` induced by the oriented faces.

        Each face (v, a, b) (up to rotation) contributes the arc a -> b; the
        arcs of a vertex with a disk link chain into one cycle.
        """
        succ: Dict[int, int] = {}
        for idx in self.incident_faces[v]:
            f = self.faces[idx]
            i = f.index(v)
            succ[f[(i + 1) % 3]] = f[(i + 2) % 3]
        if not succ:
            return ()
        start = min(succ)
        cycle = [start]
        while True:
            nxt = succ.get(cycle[-1])
            if nxt is None or nxt == start:
                break
            cycle.append(nxt)
            if len(cycle) > len(succ):
                break
        return tuple(cycle)

    def invariant_violations(self) -> List[str]:
        """Human-readable list of broken torus invariants (empty when valid)."""
        problems: List[str] = []
        if self.euler_characteristic != 0:
            problems.append(f"Euler characteristic is {self.euler_characteristic}, expected 0")
        directed = Counter()
        for f in self.faces:
            if len(set(f)) != 3:
                problems.append(f"face {f} repeats a vertex")
            for i in range(3):
                directed[(f[i], f[(i + 1) % 3])] += 1
        for e, ids in self.edge_faces.items():
            if len(ids) != 2:
                problems.append(f"edge {e} lies in {len(ids)} faces")
                continue
            a, b = e
            if directed[(a, b)] != 1 or directed[(b, a)] != 1:
                problems.append(f"edge {e} is not oppositely oriented in its two faces")
        for v in range(self.vertex_count):
            cycle = self.link(v)
            if len(cycle) != len(self.incident_faces[v]) or len(set(cycle)) != len(cycle):
                problems.append(f"link of vertex {v} is not a single cycle")
        return problems

    def is_valid_torus(self) -> bool:
        return not self.invariant_violations()

    def relabel(self, perm: Tuple[int, ...]) -> "Triangulation":
        return Triangulation(
            self.vertex_count,
            tuple((perm[a], perm[b], perm[c]) for a, b, c in self.faces),
            self.name,
        )


class EdgePattern(BaseModel):
    """Six internal edges of K7, normalized to contain the edge (0, 1)."""

    model_config = ConfigDict(frozen=True)

    internal_edges: Tuple[Edge, ...]

    @field_validator("internal_edges")
    @classmethod
    def _canonical(cls, value: Tuple[Edge, ...]) -> Tuple[Edge, ...]:
        edges = tuple(sorted(edge(a, b) for a, b in value))
        if len(set(edges)) != len(edges):
            raise ValueError("internal edges must be distinct")
        return edges

    def internal_degree(self, v: int) -> int:
        return sum(1 for e in self.internal_edges if v in e)

    def is_internal(self, e: Edge) -> bool:
        return edge(*e) in self.internal_edges

    def external_edges(self, t: Triangulation) -> Tuple[Edge, ...]:
        internal = set(self.internal_edges)
        return tuple(e for e in t.edges if e not in internal)

    def label(self) -> str:
        return " ".join(f"{a}-{b}" for a, b in self.internal_edges)


@dataclass(frozen=True)
class TriangleClassification:
    """Partition of the faces into internal and external ones."""

    internal_faces: FrozenSet[int]
    external_faces: FrozenSet[int]


class PatternOutcome(BaseModel):
    """How far one pattern got through the Hull Lemma pipeline."""

    pattern_id: int
    pattern: EdgePattern
    stage: str  # "degree" (eliminated), "cycle" (eliminated) or "survivor"
    failed_vertex: Optional[int] = None
    witness: Optional[int] = None


class HullLemmaReport(BaseModel):
    """Result of the computer-assisted part of the Hull Lemma."""

    total_patterns: int
    after_degree_filter: int
    survivors: List[EdgePattern]
    survivor_witness: List[int]
    survivor_ids: List[int]
    single_orbit: bool
    automorphism_group_order: int
