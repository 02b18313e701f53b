"""Exception hierarchy shared by all selectra modules."""

from __future__ import annotations


class SelectraError(Exception):
    """Base class for all library errors."""


# ---------------------------------------------------------------------------
# complex_core
# ---------------------------------------------------------------------------

class GeometryError(SelectraError):
    pass


class DegenerateSimplex(GeometryError):
    """Simplex vertices are affinely dependent (or repeated)."""


class OverlappingInteriors(GeometryError):
    """Two simplices of an embedded complex have intersecting interiors."""


class UnknownCell(GeometryError):
    """Cell is not a member of the complex."""


class PointOutsideComplex(GeometryError):
    """Point does not lie in the realization of the complex."""


class MeshMismatch(GeometryError):
    """A map's complex is not a refinement of the expected complex."""


class UnsupportedDim(GeometryError):
    """Operation not available at this dimension."""


# ---------------------------------------------------------------------------
# convex bodies / relations
# ---------------------------------------------------------------------------

class BodyError(SelectraError):
    pass


class NotOpenForm(BodyError):
    """Body (or a relation's body) is not in an open representation."""


class UnknownContainment(BodyError):
    """Containment of fattened bodies could not be certified either way."""


class UnsupportedForm(BodyError):
    """Body form not accepted by this operation."""


class EnumerationOverflow(BodyError):
    """Exact vertex enumeration exceeded the supported size."""


class EmptyInterval(BodyError):
    """Lower bound meets or exceeds upper bound on some cell."""


class NonConvexUnion(BodyError):
    """Union of bodies is not representable as a single convex body."""


class RelationError(SelectraError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotOpenRelation(RelationError):
    pass


class NotLSCRelation(RelationError):
    pass


class NotUSC(RelationError):
    pass


class NotLSC(RelationError):
    pass


class GapViolated(RelationError):
    """xi >= eta on the reported cell."""


class NotDisjoint(SelectraError):
    """Subcomplexes share a cell."""


class NotACover(SelectraError):
    def __init__(self, message, uncovered=()):
        super().__init__(message)
        self.uncovered = tuple(uncovered)


class NotIncreasing(SelectraError):
    """Cover members are not nested along the index order."""


class IndexMismatch(SelectraError):
    """Covers use different index sets."""


# ---------------------------------------------------------------------------
# engines
# ---------------------------------------------------------------------------

class EngineError(SelectraError):
    pass


class InfeasibleInteriorPoint(EngineError):
    """Interior-point rule failed on a validated body (defensive)."""


class SubdivisionLimitExceeded(EngineError):
    def __init__(self, message, depth=None, star=None):
        super().__init__(message)
        self.depth = depth
        self.star = star


class NotASelectionOnA(EngineError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# cli / instance documents
# ---------------------------------------------------------------------------

class ParseError(SelectraError):
    def __init__(self, message, line=None, col=None):
        super().__init__(message)
        self.line = line
        self.col = col


class ValidationError(SelectraError):
    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location
