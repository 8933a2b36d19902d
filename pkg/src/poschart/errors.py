"""Exception hierarchy.

Errors fall in three families that the CLI maps to exit codes:
input problems (2), violated mathematical assumptions (3) and exhausted
resource budgets (4).  Anything else is a bug.
"""


class PosChartError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self)}


class InputError(PosChartError, ValueError):
    exit_code = 2


class AssumptionError(PosChartError):
    exit_code = 3


class ResourceLimit(PosChartError):
    exit_code = 4


# exact linear algebra
class RankDeficient(InputError):
    pass


class Torsion(AssumptionError):
    def __init__(self, divisors):
        self.divisors = tuple(divisors)
        super().__init__(f"class group has torsion: elementary divisors {self.divisors}")


class NotUnimodular(AssumptionError):
    def __init__(self, det):
        self.det = det
        super().__init__(f"matrix is not unimodular (det = {det})")


# polytopes and cones
class Unbounded(InputError):
    pass


class Empty(InputError):
    pass


class NotLattice(InputError):
    pass


class NotSimplicial(AssumptionError):
    pass


class NotPointed(InputError):
    pass


class NotSmoothFan(AssumptionError):
    def __init__(self, cone, det=None):
        self.cone = tuple(cone)
        self.det = det
        super().__init__(
            f"normal fan is not smooth: maximal cone {self.cone} has |det| = {det}"
        )


# chart assembly
class NotNef(AssumptionError):
    pass


class NegativeExponent(InputError):
    pass


class AssumptionFacetCount(AssumptionError):
    """Minkowski sum is not full-dimensional or has the wrong number of facets."""


class AssumptionUnimodular(AssumptionError):
    def __init__(self, det):
        self.det = det
        super().__init__(f"matrix M is not unimodular: det M = {det}")


class AssumptionPositivity(AssumptionError):
    """A section has a coefficient that is not strictly positive."""


class IdentityFailed(PosChartError):
    pass


# numerics
class PoleAt(InputError):
    pass


class DegenerateExponents(InputError):
    pass


class NoConvergence(PosChartError):
    exit_code = 4


# catalog
class UnknownEntry(InputError):
    def __init__(self, name, available):
        self.name = name
        self.available = tuple(available)
        super().__init__(
            f"unknown catalog entry {name!r}; available: {', '.join(self.available)}"
        )
