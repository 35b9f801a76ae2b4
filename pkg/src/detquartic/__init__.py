"""detquartic: Hermitian determinantal representations of quartic surfaces."""

from .scalar_poly import GQ, MultiPoly, PolyMatrix
from .pencil import Definiteness, HermitianMatrix, HermitianPencil
from .singularities import Profile, SolverConfig, profile, profile_report
from .spectra import hyperbolicity_check, on_spectrahedron
from .search import FoundExample, SearchTarget, TrackerState, run_search

__all__ = [
    "GQ",
    "MultiPoly",
    "PolyMatrix",
    "Definiteness",
    "HermitianMatrix",
    "HermitianPencil",
    "Profile",
    "SolverConfig",
    "profile",
    "profile_report",
    "hyperbolicity_check",
    "on_spectrahedron",
    "FoundExample",
    "SearchTarget",
    "TrackerState",
    "run_search",
]

__version__ = "0.1.0"
