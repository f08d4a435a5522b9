"""Regenerate the bundled fixture tilings from their quivers with potential."""

from __future__ import annotations

import json
from pathlib import Path

from brane_tiler.mckay import AbelianGroupAction, build_mckay_tiling
from brane_tiler.tiling import BraneTiling, tiling_from_quiver

OUT = Path(__file__).resolve().parent.parent / "src" / "brane_tiler" / "fixtures"


def c3() -> BraneTiling:
    loops = {a: ("0", "0") for a in "xyz"}
    return tiling_from_quiver("c3", ["0"], loops, {"w": list("xyz")}, {"b": list("xzy")})


def conifold() -> BraneTiling:
    arrows = {"a1": ("1", "2"), "a2": ("1", "2"), "b1": ("2", "1"), "b2": ("2", "1")}
    return tiling_from_quiver(
        "conifold", ["1", "2"], arrows,
        {"w": ["a1", "b1", "a2", "b2"]},
        {"b": ["a1", "b2", "a2", "b1"]},
    )


def spp() -> BraneTiling:
    arrows = {
        "p": ("1", "1"),
        "X12": ("1", "2"), "X21": ("2", "1"),
        "X13": ("1", "3"), "X31": ("3", "1"),
        "X23": ("2", "3"), "X32": ("3", "2"),
    }
    return tiling_from_quiver(
        "spp", ["1", "2", "3"], arrows,
        {"w1": ["p", "X13", "X31"], "w2": ["X12", "X23", "X32", "X21"]},
        {"b1": ["p", "X12", "X21"], "b2": ["X13", "X32", "X23", "X31"]},
    )


def f0() -> BraneTiling:
    arrows = {}
    for i in "12":
        arrows[f"A{i}"] = ("1", "2")
        arrows[f"B{i}"] = ("2", "3")
        arrows[f"C{i}"] = ("3", "4")
        arrows[f"D{i}"] = ("4", "1")
    return tiling_from_quiver(
        "f0", ["1", "2", "3", "4"], arrows,
        {"w1": ["A1", "B1", "C2", "D2"], "w2": ["A2", "B2", "C1", "D1"]},
        {"b1": ["A1", "B2", "C2", "D1"], "b2": ["A2", "B1", "C1", "D2"]},
    )


def c3_doubled_edge() -> BraneTiling:
    """c3 with one edge doubled; the new digon face admits no R-charge."""
    arrows = {"x": ("0", "1"), "u": ("1", "0"), "y": ("0", "0"), "z": ("0", "0")}
    return tiling_from_quiver(
        "c3-doubled-edge", ["0", "1"], arrows,
        {"w": ["x", "u", "y", "z"]},
        {"b": ["u", "z", "y", "x"]},
    )


def c3_subdivided_edge() -> BraneTiling:
    """c3 with one edge subdivided by two bivalent vertices; R-charges exist
    but some must equal 1."""
    loops = {a: ("0", "0") for a in ("x1", "x2", "x3", "y", "z")}
    return tiling_from_quiver(
        "c3-subdivided-edge", ["0"], loops,
        {"w": ["x1", "y", "z"], "w2": ["x2", "x3"]},
        {"b": ["x3", "z", "y"], "b2": ["x1", "x2"]},
    )


def mckay(n: int, weights: tuple[int, int, int]) -> BraneTiling:
    return build_mckay_tiling(AbelianGroupAction.cyclic(n, weights)).tiling


FIXTURES = {
    "c3": c3,
    "conifold": conifold,
    "spp": spp,
    "f0": f0,
    "z3": lambda: mckay(3, (1, 1, 1)),
    "z6": lambda: mckay(6, (1, 2, 3)),
    "c3-doubled-edge": c3_doubled_edge,
    "c3-subdivided-edge": c3_subdivided_edge,
}


def main() -> None:
    OUT.mkdir(exist_ok=True)
    for name, make in FIXTURES.items():
        doc = make().to_document()
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")
        print(f"wrote {name}.json")


if __name__ == "__main__":
    main()
