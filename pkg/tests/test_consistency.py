from fractions import Fraction

import pytest

from brane_tiler.consistency import check_r_charge, consistency_class, find_r_charge
from brane_tiler.errors import InfeasibleError

from conftest import ALL, mckay, model

CLASSES = {
    "c3": "geometric",
    "conifold": "geometric",
    "spp": "geometric",
    "f0": "geometric",
    "z3": "geometric",
    "z6": "geometric",
    "c3-subdivided-edge": "consistent-only",
    "c3-doubled-edge": "inconsistent",
}

# best margin of the geometric LP
EPSILON = {
    "c3": Fraction(1, 3),
    "conifold": Fraction(1, 2),
    "spp": Fraction(1, 3),
    "f0": Fraction(1, 2),
    "z3": Fraction(1, 3),
    "z6": Fraction(1, 3),
}


def test_every_fixture_is_classified():
    assert set(CLASSES) == set(ALL)


@pytest.mark.parametrize("name", ALL)
def test_consistency_class(name):
    assert consistency_class(model(name).quiver) == CLASSES[name]


@pytest.mark.parametrize("name", sorted(EPSILON))
def test_geometric_margin(name):
    q = model(name).quiver
    charge = find_r_charge(q, "geometric")
    assert charge.epsilon == EPSILON[name]
    assert check_r_charge(q, charge.values, "geometric") >= charge.epsilon
    assert sum(charge.values.values()) == len(q.faces)


@pytest.mark.parametrize("n, weights", [(1, (1, 1, 1)), (3, (1, 1, 1)), (6, (1, 2, 3)), (5, (1, 1, 3)), (7, (1, 2, 4))])
def test_two_thirds_on_mckay(n, weights):
    q = mckay(n, weights).quiver
    values = {a: Fraction(2, 3) for a in q.arrows}
    assert check_r_charge(q, values, "geometric") == Fraction(1, 3)
    assert find_r_charge(q, "geometric").epsilon >= Fraction(1, 3)


def test_consistent_only_needs_value_one():
    q = model("c3-subdivided-edge").quiver
    with pytest.raises(InfeasibleError):
        find_r_charge(q, "geometric")
    charge = find_r_charge(q, "consistent")
    assert charge.epsilon == Fraction(1, 2)
    assert max(charge.values.values()) == 1


def test_inconsistent_has_no_r_charge():
    q = model("c3-doubled-edge").quiver
    for mode in ("geometric", "consistent"):
        with pytest.raises(InfeasibleError):
            find_r_charge(q, mode)


def test_check_rejects_bad_values():
    q = model("c3").quiver
    with pytest.raises(InfeasibleError, match="sums to"):
        check_r_charge(q, {"x": Fraction(1), "y": Fraction(1, 2), "z": Fraction(1, 3)})
    with pytest.raises(InfeasibleError, match="margin"):
        check_r_charge(q, {"x": Fraction(1), "y": Fraction(1, 2), "z": Fraction(1, 2)}, "geometric")
    with pytest.raises(InfeasibleError, match="vertex"):
        # faces of the doubled-edge tiling sum to 2 but its digon vertex fails
        check_r_charge(model("c3-doubled-edge").quiver, {a: Fraction(1, 2) for a in "xuyz"})


def test_unknown_mode():
    with pytest.raises(ValueError):
        find_r_charge(model("c3").quiver, "strict")
