import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form
from hypothesis import given, settings, strategies as st

from brane_tiler.errors import MatchingError
from brane_tiler.lattice import (
    WeakPath,
    face_vector,
    is_minimal_path,
    matching_character,
    path_weight,
    reduced_character,
    smith,
    weights_equal,
)
from brane_tiler.matchings import is_extremal
from brane_tiler.tiling import cyclic_derivative

from conftest import ALL, model
from oracles import lattice_ranks


@pytest.mark.parametrize("name", ALL)
def test_ranks_match_oracle(name):
    m = model(name)
    L, q = m.lattice, m.quiver
    n0 = len(q.vertices)
    assert (L.rank_lambda, L.rank_m, L.rank_b) == (n0 + 2, 3, n0 - 1)
    assert (L.rank_lambda, L.rank_m, L.rank_b) == lattice_ranks(q)


@pytest.mark.parametrize("name", ALL)
def test_presentation_is_consistent(name):
    L = model(name).lattice
    k = L.rank_lambda
    ident = [[int(i == j) for j in range(k)] for i in range(k)]
    assert [list(L.class_of(lift)) for lift in L.lambda_lifts] == ident
    for r in L.relators:
        assert L.class_of(r) == (0,) * k


@pytest.mark.parametrize("name", ALL)
def test_face_classes_agree(name):
    L, q = model(name).lattice, model(name).quiver
    for cyc in q.faces.values():
        assert L.class_of(face_vector(q, cyc)) == L.omega
    assert L.class_of(L.m_lifts[0]) == L.omega


@pytest.mark.parametrize("name", ALL)
def test_m_basis_is_saturated(name):
    L = model(name).lattice
    classes = [L.class_of(v) for v in L.m_lifts]
    assert all(L.in_m(c) for c in classes)
    snf = smith_normal_form(sympy.Matrix(classes))
    assert [abs(snf[i, i]) for i in range(3)] == [1, 1, 1]


@pytest.mark.parametrize("name", ALL)
def test_f_term_relations_have_equal_weight(name):
    L, q = model(name).lattice, model(name).quiver
    for a in q.arrows:
        plus, minus = cyclic_derivative(q, a)
        u = WeakPath.from_arrows(q, plus, start=q.target[a])
        v = WeakPath.from_arrows(q, minus, start=q.target[a])
        assert weights_equal(L, u, v)


def test_weak_path_algebra():
    q = model("z6").quiver
    L = model("z6").lattice
    u = WeakPath.from_arrows(q, ["01", "13"])
    back = u.inverse()
    loop = u.then(back)
    assert loop.start == loop.end == "0"
    assert path_weight(L, loop) == (0,) * L.rank_lambda
    with pytest.raises(ValueError):
        u.then(u)
    with pytest.raises(ValueError):
        WeakPath.from_arrows(q, [])
    assert WeakPath.from_arrows(q, [], start="3").content == (0,) * len(q.arrows)
    with pytest.raises(ValueError):
        path_weight(L, WeakPath("0", "2", u.content))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALL), st.data())
def test_character_is_well_defined(name, data):
    m = model(name)
    q, L = m.quiver, m.lattice
    content = data.draw(st.lists(st.integers(-4, 4), min_size=len(q.arrows), max_size=len(q.arrows)))
    pm = data.draw(st.sampled_from(m.matchings))
    chi = matching_character(L, pm.edges)
    direct = sum(x for a, x in zip(q.arrows, content) if a in pm.edges)
    assert chi(L.class_of(content)) == direct


@pytest.mark.parametrize("name", ALL)
def test_character_normalised_on_faces(name):
    m = model(name)
    for pm in m.matchings:
        assert reduced_character(m.lattice, pm.edges)[0] == 1
        assert matching_character(m.lattice, pm.edges)(m.lattice.omega) == 1


def test_non_matching_rejected():
    L = model("z6").lattice
    with pytest.raises(MatchingError):
        reduced_character(L, ["01", "13"])
    with pytest.raises(MatchingError):
        matching_character(L, ["nope"])


def test_minimal_paths_c3():
    m = model("c3")
    q, L = m.quiver, m.lattice
    extremal = [pm.edges for pm in m.matchings if is_extremal(q, pm.edges)]
    assert is_minimal_path(L, WeakPath.from_arrows(q, ["x"]), extremal)
    assert is_minimal_path(L, WeakPath.from_arrows(q, ["x", "x"]), extremal)
    assert not is_minimal_path(L, WeakPath.from_arrows(q, ["x", "y", "z"]), extremal)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 4).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )
)
def test_smith_decomposition(rows):
    ncols = len(rows[0])
    factors, s, s_inv, t = smith(rows, ncols)
    S, A, T = sympy.Matrix(s), sympy.Matrix(rows), sympy.Matrix(t)
    D = S * A * T
    assert abs(S.det()) == 1 and abs(T.det()) == 1
    assert S * sympy.Matrix(s_inv) == sympy.eye(len(rows))
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i, j] == 0
    assert [abs(D[i, i]) for i in range(len(factors))] == factors
    assert len(factors) == A.rank()
    assert all(factors[i + 1] % factors[i] == 0 for i in range(len(factors) - 1))
