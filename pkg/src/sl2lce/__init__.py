"""sl2lce: exact-arithmetic engine for nilpotent supports, Shalika
representations and branching rules of SL(2) over a p-adic field."""

from .field import FieldConfig, PadicScalar, PrecisionError, SquareClass
from .lie import FilterPoint, OrbitLabel, Sl2Element

__version__ = "0.1.0"

__all__ = [
    "FieldConfig",
    "PadicScalar",
    "PrecisionError",
    "SquareClass",
    "FilterPoint",
    "OrbitLabel",
    "Sl2Element",
    "__version__",
]
