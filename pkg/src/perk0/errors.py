"""Exception types shared across the package."""


class Perk0Error(Exception):
    """Base class for all domain errors raised by this package."""


class NoSolution(Perk0Error):
    """A linear system A*X = B has no solution over the given field."""


class CyclicQuiver(Perk0Error):
    """The quiver contains a directed cycle."""


class InadmissibleRelation(Perk0Error):
    """A relation is not a composable monomial path of length >= 2."""


class NotAComplex(Perk0Error):
    """d^2 = 0 fails at some degree.

    The offending degree is stored in ``degree``.
    """

    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or f"d^2 != 0 at degree {degree}")


class ShapeMismatch(Perk0Error):
    """Components or maps have incompatible shapes."""


class NotAChainMap(Perk0Error):
    """The square f d = d f fails at some degree."""


class NotHereditary(Perk0Error):
    """Operation requires an algebra with no relations."""


class PeriodOne(Perk0Error):
    """Hom-space formula in the periodic derived category needs m >= 2."""


class NotTypeA(Perk0Error):
    """Operation requires a relation-free quiver whose underlying graph is a path."""


class SearchTooLarge(Perk0Error):
    """The orthogonal-set search would exceed the configured object bound."""


class CertificateFailed(Perk0Error):
    """The class-map sandwich certificate failed.

    This is a hard error: the certified statement is a theorem, so a failure
    signals an implementation bug, never a mathematical outcome.  ``detail``
    holds a JSON-able description of the offending relation or witness.
    """

    def __init__(self, message, detail=None):
        self.detail = detail or {}
        super().__init__(message)
