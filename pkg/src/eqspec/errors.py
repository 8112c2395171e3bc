"""Exception types raised by the numerical routines."""


class EqspecError(Exception):
    """Base class for all errors raised by this package."""


class AmbiguousDedup(EqspecError):
    """Two orbit images sit between 'equal' and 'distinct' at the given tolerance."""


class NotPositiveDefinite(EqspecError):
    """A mass (Gram) matrix failed its Cholesky factorization."""


class NoUnitEigenvalue(EqspecError):
    """No eigenvalue of a harmonic-map density lies within tolerance of 1."""


class CommonRoot(EqspecError):
    """The two polynomials of a rational map share a root."""


class RankAmbiguous(EqspecError):
    """A singular value falls in the gray zone between zero and nonzero."""


class NegativeMultiplicity(EqspecError):
    """The McKay recurrence produced a negative multiplicity."""


class StagnationWarning(UserWarning):
    """The density maximizer made no progress over its stagnation window."""
