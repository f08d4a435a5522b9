"""Exception hierarchy shared by all stages."""


class BraneTilerError(Exception):
    """Base class; ``exit_code`` is used by the CLI."""

    exit_code = 1


class TilingError(BraneTilerError, ValueError):
    """Input document does not describe a valid torus tiling."""

    exit_code = 3


class LatticeError(BraneTilerError):
    """Rank or freeness condition on the weight lattices failed."""

    exit_code = 5


class MatchingError(BraneTilerError, ValueError):
    """Arrow set is not a perfect matching where one is required."""

    exit_code = 3


class InfeasibleError(BraneTilerError):
    """No R-charge exists in the requested mode."""

    exit_code = 4


class StabilityError(BraneTilerError, ValueError):
    """Invalid stability parameter or cosupport."""

    exit_code = 3


class TriangulationError(BraneTilerError):
    """A triangulation invariant failed; never repaired silently."""

    exit_code = 5


class GroupError(BraneTilerError, ValueError):
    """Group action is not a valid abelian subgroup of SL3."""

    exit_code = 3
