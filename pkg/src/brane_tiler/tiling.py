"""Brane tilings, their dual quivers and the superpotential.

A tiling document lists white and black vertices, edges and faces.  Each face
gives its boundary counterclockwise as an alternating vertex list starting at
a white vertex.  When two edges join the same pair of vertices the boundary
alone is ambiguous, so a face may carry a parallel ``edges`` list naming the
edge used by each boundary segment (``edges[k]`` joins ``boundary[k]`` and
``boundary[k+1]``).
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

import jsonschema

from .errors import TilingError

TILING_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["name", "white", "black", "edges", "faces"],
    "properties": {
        "name": {"type": "string"},
        "white": {"type": "array", "items": {"type": "string"}},
        "black": {"type": "array", "items": {"type": "string"}},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "white", "black"],
                "properties": {
                    "id": {"type": "string"},
                    "white": {"type": "string"},
                    "black": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "faces": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "boundary"],
                "properties": {
                    "id": {"type": "string"},
                    "boundary": {"type": "array", "items": {"type": "string"}},
                    "edges": {"type": "array", "items": {"type": "string"}},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


@dataclass(frozen=True)
class Edge:
    id: str
    white: str
    black: str


@dataclass(frozen=True)
class Face:
    id: str
    boundary: tuple[str, ...]
    edges: tuple[str, ...]

    def segments(self) -> Iterable[tuple[str, str, str]]:
        """Yield ``(start vertex, edge id, end vertex)`` in boundary order."""
        n = len(self.boundary)
        for k in range(n):
            yield self.boundary[k], self.edges[k], self.boundary[(k + 1) % n]


@dataclass(frozen=True)
class BraneTiling:
    name: str
    white: tuple[str, ...]
    black: tuple[str, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.white + self.black

    def edge(self, edge_id: str) -> Edge:
        return self._edge_index[edge_id]

    @cached_property
    def _edge_index(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def euler_characteristic(self) -> int:
        return len(self.white) + len(self.black) - len(self.edges) + len(self.faces)

    def to_document(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "white": list(self.white),
            "black": list(self.black),
            "edges": [{"id": e.id, "white": e.white, "black": e.black} for e in self.edges],
            "faces": [
                {"id": f.id, "boundary": list(f.boundary), "edges": list(f.edges)}
                for f in self.faces
            ],
        }


@dataclass(frozen=True)
class DualQuiver:
    """Quiver with potential dual to a tiling.

    ``positive_faces`` is keyed by white vertex, ``negative_faces`` by black
    vertex; each value is a directed cycle of arrow ids starting at its
    smallest arrow id.
    """

    vertices: tuple[str, ...]
    arrows: tuple[str, ...]
    source: Mapping[str, str]
    target: Mapping[str, str]
    positive_faces: Mapping[str, tuple[str, ...]]
    negative_faces: Mapping[str, tuple[str, ...]]

    @property
    def faces(self) -> dict[str, tuple[str, ...]]:
        return {**self.positive_faces, **self.negative_faces}

    def face_of(self, arrow: str, positive: bool) -> str:
        index = self._positive_face_of if positive else self._negative_face_of
        return index[arrow]

    @cached_property
    def _positive_face_of(self) -> dict[str, str]:
        return {a: f for f, cyc in self.positive_faces.items() for a in cyc}

    @cached_property
    def _negative_face_of(self) -> dict[str, str]:
        return {a: f for f, cyc in self.negative_faces.items() for a in cyc}

    def potential(self) -> list[tuple[int, tuple[str, ...]]]:
        """Signed cycles of the superpotential: white faces minus black faces."""
        terms = [(1, cyc) for _, cyc in sorted(self.positive_faces.items())]
        terms += [(-1, cyc) for _, cyc in sorted(self.negative_faces.items())]
        return terms

    def path_vertices(self, path: Sequence[str]) -> list[str]:
        """Vertices visited by a head-to-tail path of arrows."""
        if not path:
            return []
        out = [self.source[path[0]]]
        for a in path:
            if self.source[a] != out[-1]:
                raise ValueError(f"path is not head-to-tail at arrow {a!r}")
            out.append(self.target[a])
        return out


def parse_tiling(document: Mapping[str, Any]) -> BraneTiling:
    """Validate a tiling document and build a :class:`BraneTiling`."""
    try:
        jsonschema.validate(document, TILING_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise TilingError(f"schema error at '{path}': {exc.message}") from None

    white = tuple(document["white"])
    black = tuple(document["black"])
    _require_unique("vertex", white + black)
    _require_unique("edge", [e["id"] for e in document["edges"]])
    _require_unique("face", [f["id"] for f in document["faces"]])

    white_set, black_set = set(white), set(black)
    edges = []
    for e in document["edges"]:
        if e["white"] not in white_set or e["black"] not in black_set:
            raise TilingError(
                f"edge {e['id']!r} must join a white and a black vertex, "
                f"got {e['white']!r} and {e['black']!r}"
            )
        edges.append(Edge(e["id"], e["white"], e["black"]))

    _check_connected(white + black, edges)
    chi = len(white) + len(black) - len(edges) + len(document["faces"])
    if chi != 0:
        raise TilingError(
            f"Euler characteristic |G0|-|G1|+|G2| = {chi}, a torus tiling needs 0"
        )

    faces = tuple(_parse_face(f, white_set, black_set, edges) for f in document["faces"])
    tiling = BraneTiling(document["name"], white, black, tuple(edges), faces)
    _check_incidence(tiling)
    _rotations(tiling)
    return tiling


def _require_unique(kind: str, ids: Sequence[str]) -> None:
    dup = sorted(k for k, n in Counter(ids).items() if n > 1)
    if dup:
        raise TilingError(f"duplicate {kind} ids: {dup}")


def _check_connected(vertices: Sequence[str], edges: Sequence[Edge]) -> None:
    adj: dict[str, set[str]] = {v: set() for v in vertices}
    for e in edges:
        adj[e.white].add(e.black)
        adj[e.black].add(e.white)
    if not vertices:
        raise TilingError("tiling has no vertices")
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    missing = [v for v in vertices if v not in seen]
    if missing:
        raise TilingError(f"graph is disconnected; unreachable vertices: {missing}")


def _parse_face(
    raw: Mapping[str, Any], white: set[str], black: set[str], edges: Sequence[Edge]
) -> Face:
    fid = raw["id"]
    boundary = tuple(raw["boundary"])
    n = len(boundary)
    if n < 2 or n % 2:
        raise TilingError(f"face {fid!r}: boundary must have even length >= 2")
    for k, v in enumerate(boundary):
        expected = white if k % 2 == 0 else black
        if v not in expected:
            colour = "white" if k % 2 == 0 else "black"
            raise TilingError(
                f"face {fid!r}: boundary position {k} must be a {colour} vertex, got {v!r}"
            )
    by_pair: dict[tuple[str, str], list[str]] = defaultdict(list)
    by_id = {e.id: e for e in edges}
    for e in edges:
        by_pair[(e.white, e.black)].append(e.id)

    if "edges" in raw:
        seg_edges = tuple(raw["edges"])
        if len(seg_edges) != n:
            raise TilingError(f"face {fid!r}: 'edges' must have one entry per boundary segment")
        for k, eid in enumerate(seg_edges):
            u, v = boundary[k], boundary[(k + 1) % n]
            e = by_id.get(eid)
            if e is None:
                raise TilingError(f"face {fid!r}: unknown edge {eid!r}")
            if {e.white, e.black} != {u, v}:
                raise TilingError(f"face {fid!r}: edge {eid!r} does not join {u!r} and {v!r}")
    else:
        found = []
        for k in range(n):
            u, v = boundary[k], boundary[(k + 1) % n]
            key = (u, v) if u in white else (v, u)
            candidates = by_pair.get(key, [])
            if not candidates:
                raise TilingError(f"face {fid!r}: no edge joins {u!r} and {v!r}")
            if len(candidates) > 1:
                raise TilingError(
                    f"face {fid!r}: segment {u!r}-{v!r} is ambiguous between edges "
                    f"{sorted(candidates)}; give the face an 'edges' list"
                )
            found.append(candidates[0])
        seg_edges = tuple(found)
    return Face(fid, boundary, seg_edges)


def _check_incidence(t: BraneTiling) -> None:
    white = set(t.white)
    forward: Counter[str] = Counter()
    backward: Counter[str] = Counter()
    for f in t.faces:
        for u, eid, _ in f.segments():
            (forward if u in white else backward)[eid] += 1
    bad = [
        e.id for e in t.edges if forward[e.id] != 1 or backward[e.id] != 1
    ]
    if bad:
        raise TilingError(
            "each edge must occur in exactly two face boundaries, once white->black "
            f"and once black->white; offending edges: {sorted(bad)}"
        )


def _rotations(t: BraneTiling) -> tuple[dict[str, str], dict[str, str], dict[str, str], dict[str, str]]:
    """Return (source, target, white successor, black successor) maps on edges.

    The successor maps send an arrow to the next arrow of the face cycle
    around its white (resp. black) endpoint.
    """
    white = set(t.white)
    source: dict[str, str] = {}
    target: dict[str, str] = {}
    succ_white: dict[str, str] = {}
    succ_black: dict[str, str] = {}
    for f in t.faces:
        for k, v in enumerate(f.boundary):
            before = f.edges[k - 1]
            after = f.edges[k]
            if v in white:
                # before: black->white, after: white->black
                source[before] = f.id
                target[after] = f.id
                succ_white[after] = before
            else:
                target[before] = f.id
                source[after] = f.id
                succ_black[before] = after

    for colour, succ, verts, attr in (
        ("white", succ_white, t.white, "white"),
        ("black", succ_black, t.black, "black"),
    ):
        for v in verts:
            incident = [e.id for e in t.edges if getattr(e, attr) == v]
            orbit = [incident[0]]
            while succ[orbit[-1]] != orbit[0]:
                orbit.append(succ[orbit[-1]])
            if len(orbit) != len(incident):
                raise TilingError(
                    f"{colour} vertex {v!r}: faces around it do not close up into a "
                    "single disc (surface is pinched there)"
                )
    return source, target, succ_white, succ_black


def _canonical_cycle(cycle: Sequence[str]) -> tuple[str, ...]:
    k = min(range(len(cycle)), key=lambda i: cycle[i])
    return tuple(cycle[k:]) + tuple(cycle[:k])


def _cycle_from_successor(start: str, succ: Mapping[str, str]) -> tuple[str, ...]:
    out = [start]
    while succ[out[-1]] != start:
        out.append(succ[out[-1]])
    return _canonical_cycle(out)


def dualize(t: BraneTiling) -> DualQuiver:
    """Dual quiver: vertices are tiling faces, arrows are edges.

    The arrow of an edge runs from the face whose boundary traverses the edge
    black->white to the face traversing it white->black, which puts the white
    endpoint on the right of the arrow.
    """
    source, target, succ_white, succ_black = _rotations(t)
    positive = {}
    negative = {}
    for w in t.white:
        first = min(e.id for e in t.edges if e.white == w)
        positive[w] = _cycle_from_successor(first, succ_white)
    for b in t.black:
        first = min(e.id for e in t.edges if e.black == b)
        negative[b] = _cycle_from_successor(first, succ_black)
    q = DualQuiver(
        vertices=tuple(f.id for f in t.faces),
        arrows=tuple(e.id for e in t.edges),
        source=source,
        target=target,
        positive_faces=positive,
        negative_faces=negative,
    )
    for cyc in q.faces.values():
        q.path_vertices(cyc)  # raises if not head-to-tail
        if q.target[cyc[-1]] != q.source[cyc[0]]:
            raise TilingError(f"face cycle {cyc} does not close")
    return q


def cyclic_derivative(q: DualQuiver, arrow: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Return ``(u_plus, u_minus)``, the paths completing ``arrow`` to its
    white and black face cycles.  Both run from ``t(arrow)`` to ``s(arrow)``.
    """
    if arrow not in q.source:
        raise KeyError(arrow)
    out = []
    for positive in (True, False):
        faces = q.positive_faces if positive else q.negative_faces
        cyc = faces[q.face_of(arrow, positive)]
        k = cyc.index(arrow)
        out.append(cyc[k + 1:] + cyc[:k])
    return out[0], out[1]


def tiling_from_quiver(
    name: str,
    vertices: Sequence[str],
    arrows: Mapping[str, tuple[str, str]],
    positive_faces: Mapping[str, Sequence[str]],
    negative_faces: Mapping[str, Sequence[str]],
) -> BraneTiling:
    """Build the tiling whose dual is the given quiver with potential.

    ``arrows`` maps arrow id to ``(source, target)``; the face dictionaries map
    a face id (which becomes a white or black vertex id) to its arrow cycle.
    The resulting document is passed through :func:`parse_tiling`.
    """
    pos_of: dict[str, str] = {}
    neg_of: dict[str, str] = {}
    pred_white: dict[str, str] = {}
    succ_black: dict[str, str] = {}
    for fid, cyc in positive_faces.items():
        for k, a in enumerate(cyc):
            if a in pos_of:
                raise TilingError(f"arrow {a!r} lies in two positive faces")
            pos_of[a] = fid
            pred_white[a] = cyc[k - 1]
    for fid, cyc in negative_faces.items():
        for k, a in enumerate(cyc):
            if a in neg_of:
                raise TilingError(f"arrow {a!r} lies in two negative faces")
            neg_of[a] = fid
            succ_black[a] = cyc[(k + 1) % len(cyc)]
    missing = sorted((set(arrows) - set(pos_of)) | (set(arrows) - set(neg_of)))
    if missing:
        raise TilingError(f"arrows not covered by both face classes: {missing}")

    faces = []
    for v in vertices:
        incoming = sorted(a for a, (_, t) in arrows.items() if t == v)
        if not incoming:
            raise TilingError(f"quiver vertex {v!r} has no incoming arrow")
        boundary: list[str] = []
        edges: list[str] = []
        c = incoming[0]
        while True:
            d = succ_black[c]
            boundary += [pos_of[c], neg_of[c]]
            edges += [c, d]
            c = pred_white[d]
            if c == incoming[0]:
                break
        if sorted(edges[0::2]) != incoming:
            raise TilingError(
                f"quiver vertex {v!r}: arrows around it do not form a single disc"
            )
        faces.append({"id": v, "boundary": boundary, "edges": edges})

    doc = {
        "name": name,
        "white": list(positive_faces),
        "black": list(negative_faces),
        "edges": [
            {"id": a, "white": pos_of[a], "black": neg_of[a]} for a in arrows
        ],
        "faces": faces,
    }
    return parse_tiling(doc)
