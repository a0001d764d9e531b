"""Exception types shared across the package."""


class CayleyError(Exception):
    """Base class for all package-specific errors."""


class ModelError(CayleyError, ValueError):
    """Invalid model construction or an element that does not belong to a model."""


class ElementSyntaxError(CayleyError, ValueError):
    """Unparseable element or model descriptor text."""


class CapabilityError(CayleyError):
    """The operation is not supported for this model (e.g. diameter of Z^2)."""


class UnreachableError(CayleyError):
    """Target element is not reachable by generator words (non-generating semigroup set)."""


class CacheError(CayleyError):
    """A distance-table cache file is damaged or belongs to a different model."""


class InvariantError(CayleyError):
    """A mathematically guaranteed invariant was violated; the data is inconsistent."""
