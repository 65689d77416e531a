"""
homotopy-monoids

Exact computations with finite models of classifying spaces, bar
constructions, the W-bar resolution, Moore loops and the path-valued
map zeta, with command-line verification suites.
"""

from .barcat import em, hocolim, two_sided_bar
from .exactalg import ChainComplex, HomologyResult, homology, homology_all
from .moorezeta import ev, zeta, zeta_loop
from .simplicial import FinCategory, FinMonoid, FinSemigroup, SimplicialSet, chains, nerve
from .wconstruct import WTuple, epsilon, normalize, wmul

__version__ = "0.1.0"

__all__ = [
    "ChainComplex",
    "FinCategory",
    "FinMonoid",
    "FinSemigroup",
    "HomologyResult",
    "SimplicialSet",
    "WTuple",
    "chains",
    "em",
    "epsilon",
    "ev",
    "hocolim",
    "homology",
    "homology_all",
    "nerve",
    "normalize",
    "two_sided_bar",
    "wmul",
    "zeta",
    "zeta_loop",
]
