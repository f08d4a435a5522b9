"""Perfect matchings, extremality and the toric diagram of the center."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .geometry import Point, convex_hull
from .lattice import WeightLattice, evaluate_on_content, reduced_character
from .tiling import BraneTiling, DualQuiver


@dataclass(frozen=True, order=True)
class PerfectMatching:
    id: tuple[str, ...]
    edges: frozenset[str] = field(compare=False)
    character: tuple[int, ...] | None = field(default=None, compare=False)

    @classmethod
    def of(cls, edges: Iterable[str]) -> PerfectMatching:
        es = frozenset(edges)
        return cls(tuple(sorted(es)), es)

    @property
    def point(self) -> Point:
        if self.character is None:
            raise ValueError("matching has no character; use with_characters()")
        return self.character[1], self.character[2]


def enumerate_matchings(t: BraneTiling) -> list[PerfectMatching]:
    """All perfect matchings, by backtracking over black vertices."""
    incident: dict[str, list[tuple[str, str]]] = {b: [] for b in t.black}
    for e in sorted(t.edges, key=lambda e: e.id):
        incident[e.black].append((e.id, e.white))
    if len(t.white) != len(t.black):
        return []

    found: list[PerfectMatching] = []
    chosen: list[str] = []
    used: set[str] = set()
    blacks = list(t.black)

    def extend(k: int) -> None:
        if k == len(blacks):
            found.append(PerfectMatching.of(chosen))
            return
        for eid, w in incident[blacks[k]]:
            if w not in used:
                used.add(w)
                chosen.append(eid)
                extend(k + 1)
                chosen.pop()
                used.discard(w)

    extend(0)
    return sorted(found)


def biadjacency(t: BraneTiling) -> list[list[int]]:
    """Edge-count matrix, rows white and columns black in document order."""
    wi = {w: i for i, w in enumerate(t.white)}
    bi = {b: j for j, b in enumerate(t.black)}
    m = [[0] * len(t.black) for _ in t.white]
    for e in t.edges:
        m[wi[e.white]][bi[e.black]] += 1
    return m


def count_matchings_oracle(t: BraneTiling) -> int:
    """Permanent of the biadjacency matrix via Ryser's inclusion-exclusion."""
    m = biadjacency(t)
    n = len(m)
    if n != len(t.black):
        return 0
    if n == 0:
        return 1
    total = 0
    for size in range(1, n + 1):
        sign = (-1) ** (n - size)
        for cols in combinations(range(n), size):
            prod = 1
            for row in m:
                s = sum(row[c] for c in cols)
                if s == 0:
                    prod = 0
                    break
                prod *= s
            total += sign * prod
    return total


def reachable(q: DualQuiver, start: str, removed: Iterable[str] = (), reverse: bool = False) -> set[str]:
    """Vertices reachable from ``start`` along arrows not in ``removed``."""
    gone = set(removed)
    adj: dict[str, list[str]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        if a not in gone:
            s, t = q.source[a], q.target[a]
            if reverse:
                s, t = t, s
            adj[s].append(t)
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_extremal(q: DualQuiver, matching: Iterable[str]) -> bool:
    """True when the quiver with the matching removed is strongly connected."""
    removed = set(matching)
    v0 = q.vertices[0]
    everything = set(q.vertices)
    return (
        reachable(q, v0, removed) == everything
        and reachable(q, v0, removed, reverse=True) == everything
    )


def with_characters(L: WeightLattice, matchings: Sequence[PerfectMatching]) -> list[PerfectMatching]:
    return [
        PerfectMatching(m.id, m.edges, reduced_character(L, m.edges)) for m in matchings
    ]


@dataclass(frozen=True)
class CenterDiagram:
    """Toric diagram of the center: matching points with multiplicities."""

    points: Mapping[Point, tuple[tuple[str, ...], ...]]
    hull: tuple[Point, ...]

    def multiplicity(self, p: Point) -> int:
        return len(self.points.get(p, ()))

    @property
    def vertices(self) -> set[Point]:
        return set(self.hull)


def diagram_of_center(L: WeightLattice, matchings: Sequence[PerfectMatching]) -> CenterDiagram:
    points: dict[Point, list[tuple[str, ...]]] = {}
    for m in matchings:
        chi = m.character if m.character is not None else reduced_character(L, m.edges)
        points.setdefault((chi[1], chi[2]), []).append(m.id)
    hull = convex_hull(points)
    return CenterDiagram(
        {p: tuple(sorted(ids)) for p, ids in sorted(points.items())}, tuple(hull)
    )


def in_cone(L: WeightLattice, matchings: Iterable[PerfectMatching], content: Sequence[int]) -> bool:
    """Membership of the class of ``content`` in the cone cut out by the
    matching characters."""
    return all(evaluate_on_content(m.edges, L.quiver, content) >= 0 for m in matchings)


def gorenstein_witness(L: WeightLattice, extremal: Iterable[PerfectMatching]) -> bool:
    """Every extremal character takes the value 1 on the face class."""
    omega = L.m_lifts[0]
    return all(evaluate_on_content(m.edges, L.quiver, omega) == 1 for m in extremal)
