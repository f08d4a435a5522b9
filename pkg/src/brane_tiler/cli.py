"""``brane-tiler`` command line.

Every subcommand prints a JSON report on stdout.  Reports are a pure function
of the input document and the flags (timings only appear with ``--timings``),
so repeated runs are byte-identical.  Exit codes: 0 success, 1 I/O failure,
2 usage, 3 invalid input, 4 infeasible, 5 invariant failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from .consistency import consistency_class, find_r_charge
from .errors import BraneTilerError, InfeasibleError, TilingError
from .fan import ToricTriangulation, build_triangulation, emit_diagram
from .lattice import WeightLattice, build_lattices
from .matchings import (
    PerfectMatching,
    count_matchings_oracle,
    diagram_of_center,
    enumerate_matchings,
    is_extremal,
    with_characters,
)
from .mckay import (
    AbelianGroupAction,
    McKayTiling,
    build_mckay_tiling,
    hilb_stability,
    typed_character,
)
from .stability import is_generic, is_theta_stable, stability_vector
from .tiling import BraneTiling, DualQuiver, dualize, parse_tiling

EXIT_IO = 1


@dataclass
class RunReport:
    command: str
    input_digest: str
    counts: dict[str, int] = field(default_factory=dict)
    consistency: str | None = None
    outputs: dict[str, str] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    def to_document(self, with_timings: bool = False) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "command": self.command,
            "input_digest": self.input_digest,
            "counts": self.counts,
            "consistency": self.consistency,
            "outputs": self.outputs,
        }
        doc.update(self.details)
        if with_timings:
            doc["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return doc


class _Stages:
    def __init__(self, report: RunReport) -> None:
        self.report = report

    def run(self, name: str, fn, *args, **kwargs):
        start = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.report.timings[name] = time.perf_counter() - start


# -- inputs ---------------------------------------------------------------------


def bundled_fixtures() -> list[str]:
    root = resources.files("brane_tiler") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> dict[str, Any]:
    text = (resources.files("brane_tiler") / "fixtures" / f"{name}.json").read_text()
    return json.loads(text)


def read_input(path: str) -> bytes:
    """Read a tiling file; a missing ``.../NAME.json`` falls back to the
    bundled fixture of that name."""
    p = Path(path)
    if p.exists():
        return p.read_bytes()
    if p.suffix == ".json" and p.stem in bundled_fixtures():
        return (resources.files("brane_tiler") / "fixtures" / p.name).read_bytes()
    raise FileNotFoundError(f"no such file: {path}")


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _load_tiling(path: str) -> tuple[bytes, BraneTiling]:
    data = read_input(path)
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise TilingError(f"{path}: not valid JSON ({exc})") from None
    return data, parse_tiling(doc)


def parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} must be comma-separated integers") from None


def _group_from_args(args: argparse.Namespace) -> AbelianGroupAction:
    if args.factors is None:
        return AbelianGroupAction.cyclic(args.cyclic, parse_int_list(args.weights, "--weights"))
    factors = tuple(parse_int_list(args.factors, "--factors"))
    weights = tuple(
        tuple(parse_int_list(w, "--weights")) for w in args.weights.split(";")
    )
    return AbelianGroupAction(factors, weights)  # type: ignore[arg-type]


def default_theta(q: DualQuiver) -> tuple[int, ...]:
    """Negative at the first vertex and +1 elsewhere; always generic."""
    n = len(q.vertices)
    return tuple(-(n - 1) if k == 0 else 1 for k in range(n))


# -- shared stages --------------------------------------------------------------


def _matchings(stages: _Stages, t: BraneTiling, L: WeightLattice) -> list[PerfectMatching]:
    ms = stages.run("matchings", enumerate_matchings, t)
    return stages.run("characters", with_characters, L, ms)


def _matching_rows(q: DualQuiver, ms: Sequence[PerfectMatching], mk: McKayTiling | None = None) -> list[dict[str, Any]]:
    rows = []
    for k, m in enumerate(ms, start=1):
        row: dict[str, Any] = {
            "index": k,
            "edges": list(m.id),
            "point": list(m.point),
            "extremal": is_extremal(q, m.edges),
        }
        if mk is not None:
            row["typed_character"] = list(typed_character(mk, m.edges))
        rows.append(row)
    return rows


def _write(path: str | None, text: str, report: RunReport, key: str) -> None:
    if path is None:
        return
    Path(path).write_text(text)
    report.outputs[key] = path


def _fan(
    stages: _Stages,
    report: RunReport,
    t: BraneTiling,
    q: DualQuiver,
    theta: Sequence[int],
    args: argparse.Namespace,
    mk: McKayTiling | None = None,
) -> ToricTriangulation:
    L = stages.run("lattice", build_lattices, q)
    ms = _matchings(stages, t, L)
    tri = stages.run("triangulation", build_triangulation, t, L, ms, theta)
    report.consistency = stages.run("consistency", consistency_class, q)
    report.counts.update(
        matchings=len(ms),
        stable=len(tri.rays),
        edges=len(tri.edges),
        triangles=len(tri.triangles),
    )
    rays = []
    for k, r in enumerate(tri.rays):
        entry: dict[str, Any] = {"index": k, "edges": list(r.id), "point": list(r.point)}
        if mk is not None:
            entry["typed_character"] = list(typed_character(mk, r.edges))
        rays.append(entry)
    report.details.update(
        theta=list(theta),
        vertex_order=list(q.vertices),
        rays=rays,
        fan_edges=[list(e) for e in tri.edges],
        triangles=[list(f) for f in tri.triangles],
    )
    _write(args.svg, emit_diagram(tri, "svg"), report, "svg")
    _write(args.json, emit_diagram(tri, "json"), report, "json")
    return tri


# -- subcommands ----------------------------------------------------------------


def cmd_validate(args: argparse.Namespace, report: RunReport, stages: _Stages) -> None:
    data, t = stages.run("parse", _load_tiling, args.tiling)
    q = stages.run("dualize", dualize, t)
    report.input_digest = _digest(data)
    report.counts.update(
        white=len(t.white), black=len(t.black), edges=len(t.edges), faces=len(t.faces)
    )
    report.details.update(
        name=t.name,
        euler_characteristic=t.euler_characteristic(),
        vertex_order=list(q.vertices),
        potential=[[sign, list(cyc)] for sign, cyc in q.potential()],
    )


def cmd_lattice(args: argparse.Namespace, report: RunReport, stages: _Stages) -> None:
    data, t = stages.run("parse", _load_tiling, args.tiling)
    q = dualize(t)
    L = stages.run("lattice", build_lattices, q)
    report.input_digest = _digest(data)
    report.counts.update(vertices=len(q.vertices), arrows=len(q.arrows), faces=len(q.faces))
    report.details.update(
        rank_lambda=L.rank_lambda,
        rank_m=L.rank_m,
        rank_b=L.rank_b,
        reference_face=L.reference_face,
        m_basis=[list(v) for v in L.m_lifts],
    )


def cmd_matchings(args: argparse.Namespace, report: RunReport, stages: _Stages) -> None:
    data, t = stages.run("parse", _load_tiling, args.tiling)
    q = dualize(t)
    L = stages.run("lattice", build_lattices, q)
    ms = _matchings(stages, t, L)
    d = diagram_of_center(L, ms)
    report.input_digest = _digest(data)
    report.counts.update(
        matchings=len(ms),
        permanent=count_matchings_oracle(t),
        extremal=sum(is_extremal(q, m.edges) for m in ms),
    )
    report.details.update(
        matchings=_matching_rows(q, ms),
        hull=[list(p) for p in d.hull],
        multiplicities=[[list(p), len(ids)] for p, ids in d.points.items()],
    )


def cmd_consistency(args: argparse.Namespace, report: RunReport, stages: _Stages) -> None:
    data, t = stages.run("parse", _load_tiling, args.tiling)
    q = dualize(t)
    report.input_digest = _digest(data)
    cls = stages.run("consistency", consistency_class, q)
    report.consistency = cls
    if cls == "inconsistent":
        raise InfeasibleError("no R-charge with values in (0, 1] exists")
    mode = "geometric" if cls == "geometric" else "consistent"
    charge = find_r_charge(q, mode)
    report.details.update(
        mode=mode,
        epsilon=str(charge.epsilon),
        r_charge={a: str(charge.values[a]) for a in q.arrows},
    )


def cmd_stable(args: argparse.Namespace, report: RunReport, stages: _Stages) -> None:
    data, t = stages.run("parse", _load_tiling, args.tiling)
    q = dualize(t)
    theta = stability_vector(q, parse_int_list(args.theta, "--theta"))
    report.input_digest = _digest(data)
    L = stages.run("lattice", build_lattices, q)
    ms = _matchings(stages, t, L)
    stable = [m for m in ms if is_theta_stable(q, m.edges, theta)]
    report.counts.update(matchings=len(ms), stable=len(stable))
    report.details.update(
        theta=list(theta),
        vertex_order=list(q.vertices),
        generic=is_generic(theta),
        stable=[
            {"index": ms.index(m) + 1, "edges": list(m.id), "point": list(m.point)}
            for m in stable
        ],
    )
    if args.pairs:
        pairs = [
            [ms.index(a) + 1, ms.index(b) + 1]
            for i, a in enumerate(stable)
            for b in stable[i + 1:]
            if is_theta_stable(q, a.edges | b.edges, theta)
        ]
        report.counts["stable_pairs"] = len(pairs)
        report.details["stable_pairs"] = pairs


def cmd_fan(args: argparse.Namespace, report: RunReport, stages: _Stages) -> None:
    data, t = stages.run("parse", _load_tiling, args.tiling)
    q = dualize(t)
    report.input_digest = _digest(data)
    theta = (
        stability_vector(q, parse_int_list(args.theta, "--theta"))
        if args.theta is not None
        else default_theta(q)
    )
    _fan(stages, report, t, q, theta, args)


def _group_digest(g: AbelianGroupAction) -> str:
    spec = json.dumps({"factors": g.factors, "weights": g.weights}, sort_keys=True)
    return _digest(spec.encode())


def cmd_mckay(args: argparse.Namespace, report: RunReport, stages: _Stages) -> None:
    g = _group_from_args(args)
    mk = stages.run("mckay", build_mckay_tiling, g)
    q = mk.quiver
    report.input_digest = _group_digest(g)
    L = stages.run("lattice", build_lattices, q)
    ms = _matchings(stages, mk.tiling, L)
    typed = Counter(typed_character(mk, m.edges) for m in ms)
    report.counts.update(
        vertices=len(q.vertices), arrows=len(q.arrows), faces=len(q.faces), matchings=len(ms)
    )
    report.details.update(
        name=mk.tiling.name,
        trivial_vertex=mk.trivial_vertex,
        hilb_theta=list(hilb_stability(mk)),
        matchings=_matching_rows(q, ms, mk),
        typed_characters=[[list(k), v] for k, v in sorted(typed.items())],
    )
    if args.emit_tiling:
        text = json.dumps(mk.tiling.to_document(), indent=2) + "\n"
        _write(args.emit_tiling, text, report, "tiling")


def cmd_mckay_fan(args: argparse.Namespace, report: RunReport, stages: _Stages) -> None:
    g = _group_from_args(args)
    mk = stages.run("mckay", build_mckay_tiling, g)
    report.input_digest = _group_digest(g)
    theta = (
        stability_vector(mk.quiver, parse_int_list(args.theta, "--theta"))
        if args.theta is not None
        else hilb_stability(mk)
    )
    _fan(stages, report, mk.tiling, mk.quiver, theta, args, mk)


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brane-tiler",
        description="Brane tilings, perfect matchings, stability and toric fans.",
    )
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized drivers")
    parser.add_argument("--timings", action="store_true", help="include stage timings")
    sub = parser.add_subparsers(dest="command", required=True)

    def tiling_cmd(name: str, fn, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("tiling", help="tiling JSON file (or fixtures/NAME.json)")
        p.set_defaults(func=fn)
        return p

    tiling_cmd("validate", cmd_validate, "check a tiling document")
    tiling_cmd("lattice", cmd_lattice, "weight lattice ranks and M basis")
    tiling_cmd("matchings", cmd_matchings, "perfect matchings and the center diagram")
    tiling_cmd("consistency", cmd_consistency, "R-charge and consistency class")
    p = tiling_cmd("stable", cmd_stable, "theta-stable perfect matchings")
    p.add_argument("--theta", required=True, help="comma-separated, in vertex order")
    p.add_argument("--pairs", action="store_true", help="also list stable pairs")
    p = tiling_cmd("fan", cmd_fan, "triangulated toric diagram")
    p.add_argument("--theta", help="comma-separated, in vertex order (default: generic)")
    p.add_argument("--svg", help="write the diagram as SVG")
    p.add_argument("--json", help="write the triangulation as JSON")

    def group_cmd(name: str, fn, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--cyclic", type=int, help="order n of a cyclic group")
        src.add_argument("--factors", help="orders of cyclic factors, comma-separated")
        p.add_argument(
            "--weights",
            required=True,
            help="a,b,c for --cyclic; 'a1,a2;b1,b2;c1,c2' for --factors",
        )
        p.set_defaults(func=fn)
        return p

    p = group_cmd("mckay", cmd_mckay, "tiling of an abelian orbifold C^3/G")
    p.add_argument("--emit-tiling", help="write the tiling document")
    p = group_cmd("mckay-fan", cmd_mckay_fan, "fan of C^3/G (G-Hilbert stability by default)")
    p.add_argument("--theta", help="comma-separated, in vertex order")
    p.add_argument("--svg", help="write the diagram as SVG")
    p.add_argument("--json", help="write the triangulation as JSON")
    return parser


def _run(args: argparse.Namespace) -> RunReport:
    report = RunReport(command=args.command, input_digest="")
    if args.seed is not None:
        report.details["seed"] = args.seed
    args.func(args, report, _Stages(report))
    return report


def run_pipeline(argv: Sequence[str] | None = None) -> RunReport:
    """Run one subcommand and return its report; errors propagate."""
    return _run(build_parser().parse_args(argv))


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = _run(args)
    except BraneTilerError as exc:
        print(f"brane-tiler: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except argparse.ArgumentTypeError as exc:
        print(f"brane-tiler: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"brane-tiler: {exc}", file=sys.stderr)
        return EXIT_IO
    json.dump(report.to_document(args.timings), sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
