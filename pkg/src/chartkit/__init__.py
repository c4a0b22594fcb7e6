"""chartkit: combinatorial surface-braid charts as rotation systems.

Charts are oriented labeled plane graphs with black, crossing and white
vertices.  The package validates them, extracts their strand and cycle
structure, evaluates counting identities and minimality obstructions, and
applies the standard local moves as checked rewrites.
"""

__version__ = "0.1.0"

from .errors import (ChartKitError, ClassificationError, EmbeddingError,
                     GeometryError, MoveError, PreconditionError,
                     StructureError)

__all__ = [
    "ChartKitError", "StructureError", "EmbeddingError", "GeometryError",
    "PreconditionError", "MoveError", "ClassificationError",
]
