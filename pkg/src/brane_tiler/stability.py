"""Stability of torus-fixed representations of dimension vector (1, ..., 1).

A cosupport ``I`` (arrows acting by zero) is theta-stable when every
nonempty proper vertex set closed under the arrows of ``Q - I`` has positive
theta-weight.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import StabilityError
from .matchings import reachable
from .tiling import BraneTiling, DualQuiver, cyclic_derivative

MAX_GENERIC_CHECK = 25


def stability_vector(q: DualQuiver, values: Sequence[int] | Mapping[str, int]) -> tuple[int, ...]:
    """Validate theta (in quiver vertex order, or keyed by vertex)."""
    if isinstance(values, Mapping):
        if set(values) != set(q.vertices):
            raise StabilityError("theta must assign a value to every quiver vertex")
        theta = tuple(int(values[v]) for v in q.vertices)
    else:
        theta = tuple(int(x) for x in values)
    if len(theta) != len(q.vertices):
        raise StabilityError(
            f"theta has {len(theta)} entries but the quiver has {len(q.vertices)} vertices"
        )
    if sum(theta) != 0:
        raise StabilityError(f"theta must sum to zero, got {sum(theta)}")
    return theta


def is_generic(theta: Sequence[int]) -> bool:
    """No nonempty proper subset of vertices has total weight zero."""
    n = len(theta)
    if n > MAX_GENERIC_CHECK:
        raise StabilityError(
            f"genericity check is exponential and refused for {n} > {MAX_GENERIC_CHECK} "
            "vertices; supply a theta known to be generic"
        )
    if sum(theta) != 0:
        raise StabilityError("theta must sum to zero")
    # (subset size, subset sum) pairs reachable so far
    states = {(0, 0)}
    for x in theta:
        states |= {(k + 1, s + x) for k, s in states}
    return not any(s == 0 and 0 < k < n for k, s in states)


def is_w_compatible(q: DualQuiver, cosupport: Iterable[str]) -> bool:
    """Both paths of every cyclic derivative vanish together on ``x_I``."""
    zero = set(cosupport)
    for a in q.arrows:
        plus, minus = cyclic_derivative(q, a)
        if any(b in zero for b in plus) != any(b in zero for b in minus):
            return False
    return True


def _complement_graph(q: DualQuiver, cosupport: set[str]) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(q.vertices)
    for a in q.arrows:
        if a not in cosupport:
            g.add_edge(q.source[a], q.target[a])
    return g


def minimum_closed_weight(q: DualQuiver, cosupport: Iterable[str], theta: Sequence[int]) -> tuple[int, frozenset[str]] | None:
    """Smallest theta-weight of a nonempty proper subset closed under the
    arrows outside ``cosupport``, with a minimizing set.

    Every such set contains a sink and misses a source of the condensation,
    so one closure problem is solved per (sink, source) pair.  Returns None
    when no nonempty proper closed set exists.
    """
    weight = dict(zip(q.vertices, theta))
    cond = nx.condensation(_complement_graph(q, set(cosupport)))
    if cond.number_of_nodes() <= 1:
        return None
    members = nx.get_node_attributes(cond, "members")
    w = {c: sum(weight[v] for v in members[c]) for c in cond.nodes}
    sinks = sorted(c for c in cond.nodes if cond.out_degree(c) == 0)
    sources = sorted(c for c in cond.nodes if cond.in_degree(c) == 0)

    best: tuple[int, frozenset[str]] | None = None
    for s in sinks:
        for r in sources:
            if s == r:
                continue
            net = nx.DiGraph()
            net.add_nodes_from(["src", "snk"])
            for c in cond.nodes:
                # profit of keeping c is -w[c]; closure arcs carry no capacity
                if w[c] < 0:
                    net.add_edge("src", c, capacity=-w[c])
                elif w[c] > 0:
                    net.add_edge(c, "snk", capacity=w[c])
            for c, d in cond.edges:
                net.add_edge(c, d)
            if net.has_edge("src", s):
                del net["src"][s]["capacity"]
            else:
                net.add_edge("src", s)
            if net.has_edge(r, "snk"):
                del net[r]["snk"]["capacity"]
            else:
                net.add_edge(r, "snk")
            _, (side, _) = nx.minimum_cut(net, "src", "snk")
            chosen = [c for c in side if c != "src"]
            total = sum(w[c] for c in chosen)
            if best is None or total < best[0]:
                verts = frozenset(v for c in chosen for v in members[c])
                best = (total, verts)
    return best


def is_theta_stable(q: DualQuiver, cosupport: Iterable[str], theta: Sequence[int]) -> bool:
    zero = set(cosupport)
    if not is_w_compatible(q, zero):
        raise StabilityError(f"cosupport {sorted(zero)} is not W-compatible")
    theta = stability_vector(q, theta)
    best = minimum_closed_weight(q, zero, theta)
    return best is None or best[0] > 0


def is_reachable_stable(q: DualQuiver, cosupport: Iterable[str], start: str) -> bool:
    """Every vertex is reachable from ``start`` avoiding ``cosupport``; this is
    stability for theta negative at ``start`` and positive elsewhere."""
    return reachable(q, start, cosupport) == set(q.vertices)


# -- orbit classification ---------------------------------------------------------


class OrbitType(str, Enum):
    DIM3 = "dim3"
    DIM2 = "dim2"
    DIM1 = "dim1"
    DIM0 = "dim0"
    OTHER = "other"


def _components(t: BraneTiling, edges: set[str]) -> list[tuple[set[str], list[str]]]:
    """Connected components of the subgraph spanned by ``edges`` as
    ``(vertex set, edge ids)``."""
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in sorted(edges):
        e = t.edge(eid)
        for v in (e.white, e.black):
            parent.setdefault(v, v)
        a, b = find(e.white), find(e.black)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[str, tuple[set[str], list[str]]] = {}
    for eid in sorted(edges):
        root = find(t.edge(eid).white)
        verts, es = groups.setdefault(root, (set(), []))
        verts.update((t.edge(eid).white, t.edge(eid).black))
        es.append(eid)
    return [groups[k] for k in sorted(groups)]


def big_components(t: BraneTiling, cosupport: Iterable[str]) -> list[list[str]]:
    """Edge lists of components with more than one edge."""
    return [es for _, es in _components(t, set(cosupport)) if len(es) > 1]


def _degrees(t: BraneTiling, edges: Iterable[str]) -> dict[str, int]:
    deg: dict[str, int] = {}
    for eid in edges:
        e = t.edge(eid)
        deg[e.white] = deg.get(e.white, 0) + 1
        deg[e.black] = deg.get(e.black, 0) + 1
    return deg


def _theta_chains(t: BraneTiling, big: Sequence[str]) -> tuple[str, str, list[list[str]]] | None:
    """Split a theta-shaped component into its three chains from the white
    trivalent vertex to the black one, or return None."""
    deg = _degrees(t, big)
    if any(d not in (2, 3) for d in deg.values()):
        return None
    tri = [v for v, d in deg.items() if d == 3]
    whites = set(t.white)
    if len(tri) != 2 or (tri[0] in whites) == (tri[1] in whites):
        return None
    top = tri[0] if tri[0] in whites else tri[1]
    bottom = tri[1] if top == tri[0] else tri[0]
    at: dict[str, list[str]] = {}
    for eid in big:
        e = t.edge(eid)
        at.setdefault(e.white, []).append(eid)
        at.setdefault(e.black, []).append(eid)
    chains = []
    for first in sorted(at[top]):
        chain = [first]
        here = top
        while True:
            e = t.edge(chain[-1])
            here = e.black if here == e.white else e.white
            if here == bottom or here == top:
                break
            nxt = [x for x in at[here] if x != chain[-1]]
            chain.append(nxt[0])
        if here != bottom:
            return None
        chains.append(chain)
    if sum(len(c) for c in chains) != len(big):
        return None
    return top, bottom, chains


def classify_cosupport(t: BraneTiling, cosupport: Iterable[str]) -> OrbitType:
    """Dimension of the torus orbit attached to a stable cosupport."""
    zero = set(cosupport)
    if not zero:
        return OrbitType.DIM3
    deg = _degrees(t, zero)
    if len(deg) != len(t.white) + len(t.black):
        return OrbitType.OTHER
    if all(d == 1 for d in deg.values()):
        return OrbitType.DIM2
    big = big_components(t, zero)
    if len(big) != 1:
        return OrbitType.OTHER
    big_deg = _degrees(t, big[0])
    if all(d == 2 for d in big_deg.values()):
        return OrbitType.DIM1
    if _theta_chains(t, big[0]) is not None:
        return OrbitType.DIM0
    return OrbitType.OTHER


def _cycle_order(t: BraneTiling, cycle: Sequence[str]) -> list[str]:
    at: dict[str, list[str]] = {}
    for eid in cycle:
        e = t.edge(eid)
        at.setdefault(e.white, []).append(eid)
        at.setdefault(e.black, []).append(eid)
    first = min(cycle)
    order = [first]
    here = t.edge(first).black
    while len(order) < len(cycle):
        nxt = [x for x in at[here] if x != order[-1]][0]
        order.append(nxt)
        e = t.edge(nxt)
        here = e.white if here == e.black else e.black
    return order


def _check_matchings(t: BraneTiling, parts: Sequence[frozenset[str]]) -> None:
    for p in parts:
        if len(p) != len(t.white) or len(_degrees(t, p)) != len(t.white) + len(t.black):
            raise StabilityError(f"decomposition produced a non-matching {sorted(p)}")


def decompose_dim1(t: BraneTiling, cosupport: Iterable[str]) -> tuple[frozenset[str], frozenset[str]]:
    """The two perfect matchings inside a cosupport whose big component is
    an even cycle: remove alternate cycle edges."""
    zero = set(cosupport)
    if classify_cosupport(t, zero) is not OrbitType.DIM1:
        raise StabilityError("cosupport is not of one-dimensional type")
    order = _cycle_order(t, big_components(t, zero)[0])
    odd = frozenset(zero - set(order[0::2]))
    even = frozenset(zero - set(order[1::2]))
    parts = tuple(sorted((odd, even), key=sorted))
    _check_matchings(t, parts)
    return parts  # type: ignore[return-value]


def decompose_dim0(
    t: BraneTiling, cosupport: Iterable[str]
) -> tuple[frozenset[str], frozenset[str], frozenset[str]]:
    """The three perfect matchings inside a fixed-point cosupport.

    With chains ``a_{i,1..2k_i+1}`` between the trivalent vertices, the
    i-th matching drops the odd edges of the other chains and the even edges
    of chain i.
    """
    zero = set(cosupport)
    if classify_cosupport(t, zero) is not OrbitType.DIM0:
        raise StabilityError("cosupport is not of fixed-point type")
    found = _theta_chains(t, big_components(t, zero)[0])
    assert found is not None
    _, _, chains = found
    parts = []
    for i, chain in enumerate(chains):
        drop = set(chain[1::2])
        for j, other in enumerate(chains):
            if j != i:
                drop |= set(other[0::2])
        parts.append(frozenset(zero - drop))
    parts.sort(key=sorted)
    _check_matchings(t, parts)
    return parts[0], parts[1], parts[2]
