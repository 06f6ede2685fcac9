"""curvefam: exact topology-type analysis of two-parameter plane curve families."""

from .polycore import MPoly

__all__ = ["MPoly"]
__version__ = "0.1.0"
