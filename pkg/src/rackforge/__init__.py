"""Homology, triangulation and cocycle computations for finite quandles."""

from .errors import RackforgeError
from .homology import HomologyResult, rack_homology
from .quandle import FiniteQuandle, alexander, dihedral, from_table, make_quandle, trivial

__version__ = "0.1.0"

__all__ = [
    "FiniteQuandle", "HomologyResult", "RackforgeError", "alexander", "dihedral",
    "from_table", "make_quandle", "rack_homology", "trivial",
]
