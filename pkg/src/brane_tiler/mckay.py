"""Brane tilings of abelian orbifolds C^3/G with G in SL3(C).

Characters of ``G = Z/n1 x ... x Z/nk`` are weight tuples.  The vertex of a
character is labelled by its weights (``"3"`` for a cyclic group, ``"1,0"``
otherwise).  The arrow of type ``i`` leaves ``rho`` and ends at ``rho + w_i``;
for a cyclic group with a single-digit order it is named ``"ij"`` after its
endpoints, the usual naming for small cyclic groups.  A suffix ``_i`` is added
when several arrows share both endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

from .errors import GroupError
from .lattice import WeightLattice, evaluate_on_content
from .tiling import BraneTiling, DualQuiver, dualize, tiling_from_quiver

Element = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroupAction:
    factors: tuple[int, ...]
    weights: tuple[Element, Element, Element]

    def __post_init__(self) -> None:
        if not self.factors or any(n < 1 for n in self.factors):
            raise GroupError(f"cyclic factors must be positive, got {self.factors}")
        if len(self.weights) != 3 or any(len(w) != len(self.factors) for w in self.weights):
            raise GroupError("need three characters, each with one weight per cyclic factor")
        object.__setattr__(
            self, "weights", tuple(self.reduce(w) for w in self.weights)
        )
        total = self.reduce(tuple(map(sum, zip(*self.weights))))
        if any(total):
            raise GroupError(
                f"weights {self.weights} do not sum to zero modulo {self.factors}; "
                "the action is not in SL3"
            )
        if len(self._span()) != self.order:
            raise GroupError(
                f"characters {self.weights} do not generate the character group"
            )

    @classmethod
    def cyclic(cls, n: int, weights: Sequence[int]) -> AbelianGroupAction:
        if len(weights) != 3:
            raise GroupError("need exactly three weights")
        return cls((n,), tuple((w,) for w in weights))  # type: ignore[arg-type]

    @property
    def order(self) -> int:
        out = 1
        for n in self.factors:
            out *= n
        return out

    def reduce(self, e: Sequence[int]) -> Element:
        return tuple(x % n for x, n in zip(e, self.factors))

    def add(self, a: Element, b: Element) -> Element:
        return self.reduce([x + y for x, y in zip(a, b)])

    def elements(self) -> list[Element]:
        return [tuple(e) for e in product(*(range(n) for n in self.factors))]

    def _span(self) -> set[Element]:
        zero = tuple(0 for _ in self.factors)
        seen = {zero}
        stack = [zero]
        while stack:
            e = stack.pop()
            for w in self.weights:
                f = self.add(e, w)
                if f not in seen:
                    seen.add(f)
                    stack.append(f)
        return seen

    def label(self, e: Element) -> str:
        return ",".join(str(x) for x in e)


@dataclass(frozen=True)
class McKayTiling:
    group: AbelianGroupAction
    tiling: BraneTiling
    quiver: DualQuiver
    arrow_type: Mapping[str, int]
    trivial_vertex: str


def _arrow_names(g: AbelianGroupAction) -> dict[tuple[Element, int], str]:
    labels = {e: g.label(e) for e in g.elements()}
    compact = all(len(s) == 1 for s in labels.values())
    ends = {}
    for e in g.elements():
        for i, w in enumerate(g.weights, start=1):
            ends[(e, i)] = (labels[e], labels[g.add(e, w)])
    counts: dict[tuple[str, str], int] = {}
    for pair in ends.values():
        counts[pair] = counts.get(pair, 0) + 1
    names = {}
    for key, (s, t) in ends.items():
        base = f"{s}{t}" if compact else f"{s}-{t}"
        names[key] = base if counts[(s, t)] == 1 else f"{base}_{key[1]}"
    return names


def _parity(perm: Sequence[int]) -> int:
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return inversions % 2


def _rotate_min(cycle: Sequence[str]) -> tuple[str, ...]:
    k = min(range(len(cycle)), key=lambda i: cycle[i])
    return tuple(cycle[k:]) + tuple(cycle[:k])


def build_mckay_tiling(g: AbelianGroupAction) -> McKayTiling:
    """Tiling whose dual quiver is the McKay quiver of ``g`` acting on C^3.

    Each pair (character, permutation of the three types) gives a triangular
    face; even permutations are white faces, odd ones black.
    """
    names = _arrow_names(g)
    elements = g.elements()
    vertices = [g.label(e) for e in elements]
    arrows: dict[str, tuple[str, str]] = {}
    arrow_type: dict[str, int] = {}
    for e in elements:
        for i, w in enumerate(g.weights, start=1):
            a = names[(e, i)]
            arrows[a] = (g.label(e), g.label(g.add(e, w)))
            arrow_type[a] = i

    positive: dict[str, tuple[str, ...]] = {}
    negative: dict[str, tuple[str, ...]] = {}
    seen: set[tuple[str, ...]] = set()
    for e in elements:
        for perm in permutations((1, 2, 3)):
            cyc = []
            here = e
            for i in perm:
                cyc.append(names[(here, i)])
                here = g.add(here, g.weights[i - 1])
            key = _rotate_min(cyc)
            if key in seen:
                continue
            seen.add(key)
            # name the face after the tail of its type-1 arrow
            k = perm.index(1)
            start = e
            for i in perm[:k]:
                start = g.add(start, g.weights[i - 1])
            cyc = cyc[k:] + cyc[:k]
            if _parity(perm) == 0:
                positive[f"W{g.label(start)}"] = tuple(cyc)
            else:
                negative[f"B{g.label(start)}"] = tuple(cyc)

    n = g.order
    if len(positive) + len(negative) != 2 * n or len(arrows) != 3 * n:
        raise GroupError(
            f"face construction gave {len(positive) + len(negative)} faces and "
            f"{len(arrows)} arrows; expected {2 * n} and {3 * n}"
        )
    name = "C3/Z" + "xZ".join(str(k) for k in g.factors)
    name += "(" + ";".join(",".join(str(x) for x in w) for w in zip(*g.weights)) + ")"
    tiling = tiling_from_quiver(name, vertices, arrows, positive, negative)
    quiver = dualize(tiling)
    zero = g.label(tuple(0 for _ in g.factors))
    return McKayTiling(g, tiling, quiver, arrow_type, zero)


def typed_character(mt: McKayTiling, matching: Iterable[str]) -> tuple[int, int, int]:
    """Number of arrows of each type in a perfect matching (``n`` times the
    reduced character in the coordinates dual to the three types)."""
    counts = [0, 0, 0]
    chosen = set(matching)
    if not chosen <= set(mt.arrow_type):
        raise GroupError("matching uses arrows outside the McKay quiver")
    for a in chosen:
        counts[mt.arrow_type[a] - 1] += 1
    return counts[0], counts[1], counts[2]


def type_projection(mt: McKayTiling, content: Sequence[int]) -> tuple[int, int, int]:
    """Image of an arrow content under the map sending a type-i arrow to e_i."""
    out = [0, 0, 0]
    for a, x in zip(mt.quiver.arrows, content):
        out[mt.arrow_type[a] - 1] += x
    return out[0], out[1], out[2]


def reduced_from_typed(
    mt: McKayTiling, L: WeightLattice, typed: Sequence[int]
) -> tuple[Fraction, ...]:
    """Reduced character predicted from typed counts via the inclusion of M
    into Z^3 (one entry per basis vector of M)."""
    n = mt.group.order
    return tuple(
        Fraction(sum(t * p for t, p in zip(typed, type_projection(mt, lift))), n)
        for lift in L.m_lifts
    )


def hilb_stability(mt: McKayTiling) -> tuple[int, ...]:
    """Stability selecting the G-Hilbert scheme: ``-(n-1)`` at the trivial
    character and ``+1`` elsewhere, in quiver vertex order."""
    n = mt.group.order
    return tuple(
        -(n - 1) if v == mt.trivial_vertex else 1 for v in mt.quiver.vertices
    )


def matching_value_on_path(matching: Iterable[str], q: DualQuiver, path: Sequence[str]) -> int:
    content = [0] * len(q.arrows)
    index = {a: k for k, a in enumerate(q.arrows)}
    for a in path:
        content[index[a]] += 1
    return evaluate_on_content(matching, q, content)
