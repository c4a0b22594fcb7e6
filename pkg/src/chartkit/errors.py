"""Exception types shared across the package."""


class ChartKitError(Exception):
    """Base class for all chartkit errors."""


class StructureError(ChartKitError):
    """Malformed chart description: dangling dart, duplicate id, bad label."""


class EmbeddingError(ChartKitError):
    """The rotation system does not embed in the sphere/disk (genus > 0),
    or the component placement data is inconsistent."""


class GeometryError(ChartKitError):
    """A walk or region argument is not a simple closed curve, or a
    region/tangle request is ill-posed."""


class PreconditionError(ChartKitError):
    """An operation's stated precondition does not hold for the input.

    The message names the failed precondition.
    """


class MoveError(ChartKitError):
    """A rewrite site is stale, inapplicable, or the replacement is invalid."""


class ClassificationError(ChartKitError):
    """A path/tangle does not match any of the hypothesis patterns of the
    classification operation that was asked to run on it."""
