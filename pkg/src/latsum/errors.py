"""Exception hierarchy.

Every library error derives from :class:`LatsumError`.  ``exit_code`` is what
the command line front end returns: 2 for bad input, 3 for a broken internal
invariant (which means a bug, not a user mistake).
"""


class LatsumError(Exception):
    exit_code = 2
    code = "error"


class RankError(LatsumError):
    code = "rank"


class DimensionError(LatsumError):
    code = "dimension"


class ZeroVectorError(LatsumError):
    code = "zero-vector"


class SingularMatrixError(LatsumError):
    code = "singular-matrix"


class PatternError(LatsumError):
    code = "pattern"


class GenericityError(LatsumError):
    code = "non-generic"


class NonSimpleError(LatsumError):
    code = "non-simple"

    def __init__(self, vertex, n_facets):
        self.vertex = vertex
        self.n_facets = n_facets
        coords = ", ".join(str(x) for x in vertex)
        super().__init__(f"vertex ({coords}) lies on {n_facets} facets; polytope is not simple")


class SingularDirectionError(LatsumError):
    code = "singular-direction"


class DomainError(LatsumError):
    code = "domain"


class DegenerateError(LatsumError):
    code = "degenerate"


class UnboundedError(LatsumError):
    code = "unbounded"


class IntegralityError(LatsumError):
    exit_code = 3
    code = "integrality"


class PoleCancellationError(LatsumError):
    exit_code = 3
    code = "pole-cancellation"
