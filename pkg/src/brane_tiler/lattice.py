"""Weight lattices of a dual quiver.

Arrow contents live in ``Z^{Q1}`` (vectors indexed by ``q.arrows``).  The
weight lattice is the quotient of ``Z^{Q1}`` by the differences of face
boundaries; ``M`` is the kernel of the induced boundary map to ``Z^{Q0}`` and
has rank 3.  All arithmetic is over Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from .errors import LatticeError, MatchingError
from .tiling import DualQuiver

Vector = tuple[int, ...]
Matrix = list[list[int]]


# -- integer linear algebra ---------------------------------------------------


def _dm(rows: Matrix, shape: tuple[int, int]) -> DomainMatrix:
    return DomainMatrix([[ZZ(x) for x in row] for row in rows], shape, ZZ)


def _to_rows(m: DomainMatrix) -> Matrix:
    return [[int(x) for x in row] for row in m.to_list()]


def smith(rows: Matrix, ncols: int) -> tuple[list[int], Matrix, Matrix, Matrix]:
    """Smith decomposition ``S A T = D``.

    Returns ``(invariant factors, S, S^-1, T)``; the invariant factors are the
    nonzero diagonal entries of ``D``, in order.
    """
    nrows = len(rows)
    d, s, t = smith_normal_decomp(_dm(rows, (nrows, ncols)))
    diag = d.to_list()
    factors = []
    for k in range(min(nrows, ncols)):
        if diag[k][k] == 0:
            break
        factors.append(abs(int(diag[k][k])))
    s_inv = s.convert_to(QQ).inv().convert_to(ZZ)
    return factors, _to_rows(s), _to_rows(s_inv), _to_rows(t)


def _matvec(m: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def _column(m: Matrix, j: int) -> list[int]:
    return [row[j] for row in m]


def _unimodular_sending_to_e1(v: Sequence[int]) -> Matrix:
    """Integer matrix ``U`` with ``det U = +-1`` and ``U v = e1``; ``v`` primitive."""
    factors, s, _, t = smith([[x] for x in v], 1)
    if factors != [1]:
        raise LatticeError(f"vector {list(v)} is not primitive")
    sign = t[0][0]
    return [[sign * x for x in row] for row in s]


def _inverse(m: Matrix) -> Matrix:
    n = len(m)
    return _to_rows(_dm(m, (n, n)).convert_to(QQ).inv().convert_to(ZZ))


# -- paths ----------------------------------------------------------------------


@dataclass(frozen=True)
class WeakPath:
    """Walk along arrows and inverse arrows, recorded by its content vector."""

    start: str
    end: str
    content: Vector

    @classmethod
    def from_arrows(cls, q: DualQuiver, arrows: Sequence[str], start: str | None = None) -> WeakPath:
        """Strict path along ``arrows``; ``start`` is needed only when empty."""
        if not arrows:
            if start is None:
                raise ValueError("empty path needs an explicit start vertex")
            return cls(start, start, (0,) * len(q.arrows))
        verts = q.path_vertices(arrows)
        index = {a: k for k, a in enumerate(q.arrows)}
        content = [0] * len(q.arrows)
        for a in arrows:
            content[index[a]] += 1
        return cls(verts[0], verts[-1], tuple(content))

    def inverse(self) -> WeakPath:
        return WeakPath(self.end, self.start, tuple(-x for x in self.content))

    def then(self, other: WeakPath) -> WeakPath:
        if self.end != other.start:
            raise ValueError(f"cannot concatenate: {self.end!r} != {other.start!r}")
        return WeakPath(
            self.start, other.end, tuple(a + b for a, b in zip(self.content, other.content))
        )


# -- lattices -------------------------------------------------------------------


@dataclass(frozen=True)
class MatchingCharacter:
    """Linear functional ``chi_I`` given by its values on the basis of Lambda."""

    arrows: frozenset[str]
    on_basis: Vector

    def __call__(self, weight: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.on_basis, weight))


@dataclass(frozen=True)
class WeightLattice:
    quiver: DualQuiver
    reference_face: str
    relators: tuple[Vector, ...]
    rank_lambda: int
    rank_m: int
    rank_b: int
    # Lambda coordinates of x in Z^{Q1} are (to_lambda @ x)
    to_lambda: tuple[Vector, ...]
    # lifts of the Lambda basis to Z^{Q1}
    lambda_lifts: tuple[Vector, ...]
    # basis of M as lifts to Z^{Q1}; the first one is the class of a face
    m_lifts: tuple[Vector, ...]
    omega: Vector

    @property
    def arrow_index(self) -> dict[str, int]:
        return {a: k for k, a in enumerate(self.quiver.arrows)}

    def class_of(self, content: Sequence[int]) -> Vector:
        return tuple(_matvec([list(r) for r in self.to_lambda], content))

    def boundary(self, weight: Sequence[int]) -> dict[str, int]:
        """Image of a Lambda element in ``Z^{Q0}`` (``d`` of the exact sequence)."""
        q = self.quiver
        out = {v: 0 for v in q.vertices}
        for coeff, lift in zip(weight, self.lambda_lifts):
            if coeff:
                for a, x in zip(q.arrows, lift):
                    out[q.target[a]] += coeff * x
                    out[q.source[a]] -= coeff * x
        return out

    def in_m(self, weight: Sequence[int]) -> bool:
        return all(v == 0 for v in self.boundary(weight).values())


def content_boundary(q: DualQuiver, content: Sequence[int]) -> dict[str, int]:
    out = {v: 0 for v in q.vertices}
    for a, x in zip(q.arrows, content):
        out[q.target[a]] += x
        out[q.source[a]] -= x
    return out


def face_vector(q: DualQuiver, cycle: Iterable[str]) -> list[int]:
    index = {a: k for k, a in enumerate(q.arrows)}
    v = [0] * len(q.arrows)
    for a in cycle:
        v[index[a]] += 1
    return v


def build_lattices(q: DualQuiver) -> WeightLattice:
    """Present Lambda, M and B for ``q`` and check the rank identities."""
    n0, n1 = len(q.vertices), len(q.arrows)
    faces = q.faces
    face_ids = sorted(faces)
    ref = face_ids[0]
    ref_vec = face_vector(q, faces[ref])
    relators = tuple(
        tuple(x - y for x, y in zip(face_vector(q, faces[f]), ref_vec))
        for f in face_ids[1:]
    )

    # Lambda = Z^{Q1} / span(relators)
    cols = [[r[i] for r in relators] for i in range(n1)]
    factors, s, s_inv, _ = smith(cols, len(relators))
    if any(f != 1 for f in factors):
        raise LatticeError(f"weight lattice has torsion (invariant factors {factors})")
    rk = len(factors)
    rank_lambda = n1 - rk
    to_lambda = tuple(tuple(row) for row in s[rk:])
    lambda_lifts = tuple(tuple(_column(s_inv, j)) for j in range(rk, n1))

    # d : Lambda -> Z^{Q0} on the Lambda basis
    d_cols = []
    for lift in lambda_lifts:
        b = content_boundary(q, lift)
        d_cols.append([b[v] for v in q.vertices])
    d_rows = [[d_cols[j][i] for j in range(rank_lambda)] for i in range(n0)]
    d_factors, _, _, t = smith(d_rows, rank_lambda)
    if any(f != 1 for f in d_factors):
        raise LatticeError("image of d is not saturated in Z^{Q0}")
    rank_b = len(d_factors)
    kernel = [_column(t, j) for j in range(rank_b, rank_lambda)]
    rank_m = len(kernel)

    if rank_lambda != n0 + 2 or rank_m != 3 or rank_b != n0 - 1:
        raise LatticeError(
            f"rank mismatch: rk Lambda = {rank_lambda} (expected {n0 + 2}), "
            f"rk M = {rank_m} (expected 3), rk B = {rank_b} (expected {n0 - 1}); "
            "input is not a torus tiling or is corrupted"
        )

    # coordinates of omega in the kernel basis, then move it to the front
    omega = tuple(_matvec([list(r) for r in to_lambda], ref_vec))
    t_inv = _inverse(t)
    full = _matvec(t_inv, omega)
    if any(full[:rank_b]):
        raise LatticeError("face class does not lie in M")
    u = _unimodular_sending_to_e1(full[rank_b:])
    u_inv = _inverse(u)
    m_lambda = [
        [sum(kernel[k][i] * u_inv[k][j] for k in range(3)) for i in range(rank_lambda)]
        for j in range(3)
    ]
    m_lifts = [tuple(ref_vec)]
    for vec in m_lambda[1:]:
        lift = [0] * n1
        for coeff, basis in zip(vec, lambda_lifts):
            if coeff:
                for i, x in enumerate(basis):
                    lift[i] += coeff * x
        m_lifts.append(tuple(lift))

    return WeightLattice(
        quiver=q,
        reference_face=ref,
        relators=relators,
        rank_lambda=rank_lambda,
        rank_m=rank_m,
        rank_b=rank_b,
        to_lambda=to_lambda,
        lambda_lifts=lambda_lifts,
        m_lifts=tuple(m_lifts),
        omega=omega,
    )


def path_weight(L: WeightLattice, u: WeakPath) -> Vector:
    """Class of the content of ``u`` in Lambda."""
    b = content_boundary(L.quiver, u.content)
    expected = {v: 0 for v in L.quiver.vertices}
    expected[u.end] += 1
    expected[u.start] -= 1
    if b != expected:
        raise ValueError(f"content of path does not run from {u.start!r} to {u.end!r}")
    return L.class_of(u.content)


def weights_equal(L: WeightLattice, u: WeakPath, v: WeakPath) -> bool:
    if (u.start, u.end) != (v.start, v.end):
        raise ValueError("paths must share start and end vertices")
    return path_weight(L, u) == path_weight(L, v)


def is_perfect_matching(q: DualQuiver, arrows: Iterable[str]) -> bool:
    chosen = set(arrows)
    if not chosen <= set(q.arrows):
        return False
    return all(sum(a in chosen for a in cyc) == 1 for cyc in q.faces.values())


def matching_character(L: WeightLattice, arrows: Iterable[str]) -> MatchingCharacter:
    chosen = frozenset(arrows)
    if not is_perfect_matching(L.quiver, chosen):
        raise MatchingError(f"{sorted(chosen)} is not a perfect matching")
    mask = [1 if a in chosen else 0 for a in L.quiver.arrows]
    on_basis = tuple(sum(m * x for m, x in zip(mask, lift)) for lift in L.lambda_lifts)
    return MatchingCharacter(chosen, on_basis)


def evaluate_on_content(arrows: Iterable[str], q: DualQuiver, content: Sequence[int]) -> int:
    chosen = set(arrows)
    return sum(x for a, x in zip(q.arrows, content) if a in chosen)


def reduced_character(L: WeightLattice, arrows: Iterable[str]) -> Vector:
    """Coordinates of the restriction of ``chi_I`` to M in the dual basis.

    The first coordinate is always 1; the last two are the toric diagram point.
    """
    chosen = frozenset(arrows)
    if not is_perfect_matching(L.quiver, chosen):
        raise MatchingError(f"{sorted(chosen)} is not a perfect matching")
    return tuple(evaluate_on_content(chosen, L.quiver, lift) for lift in L.m_lifts)


def is_minimal_path(
    L: WeightLattice, u: WeakPath, extremal_matchings: Iterable[Iterable[str]]
) -> bool:
    """A path is minimal when some extremal matching avoids it entirely."""
    path_weight(L, u)
    return any(evaluate_on_content(I, L.quiver, u.content) == 0 for I in extremal_matchings)
