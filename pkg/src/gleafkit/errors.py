"""Exception hierarchy shared by every module."""


class GleafkitError(Exception):
    """Base class for library errors."""


class DomainError(GleafkitError, ValueError):
    """An index or dimension lies outside the range an operation accepts."""


class CompositionError(GleafkitError, ValueError):
    """Two simplices (or maps) were composed without being composable."""


class CompatibilityError(GleafkitError, ValueError):
    """Two local sections do not agree on the overlap they are glued along."""


class ValidationError(GleafkitError, ValueError):
    """A value violates the invariants of its type."""
