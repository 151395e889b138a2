"""RO(Z/2)-graded homotopy of the real Johnson-Wilson theories ER(n).

Exact 2-local linear algebra, the Borel spectral sequence for ER(n), the
closed-form coefficient ring, and checks of the fibration relating ER(n)
to E(n).
"""

from .algebra import (
    ALPHA,
    Degree,
    FGGroup,
    IntMatrix,
    smith_normal_form,
    subgroup_equal,
    subquotient,
)
from .ehomotopy import e_block_basis, one_minus_sigma
from .erring import distinguished, er_block_basis, er_product, lam, period_length
from .maps import CHECKS, SCHEMA_VERSION, GradedMap, Window, map_matrix
from .pages import BlockIndex, PageMonomial, e2_block_basis, monomial_degree
from .sseq import BorelSS, e_infinity, engine, turn_page

__version__ = "0.1.0"

__all__ = [
    "ALPHA", "Degree", "FGGroup", "IntMatrix", "smith_normal_form", "subgroup_equal",
    "subquotient", "e_block_basis", "one_minus_sigma", "distinguished", "er_block_basis",
    "er_product", "lam", "period_length", "CHECKS", "SCHEMA_VERSION", "GradedMap", "Window",
    "map_matrix", "BlockIndex", "PageMonomial", "e2_block_basis", "monomial_degree",
    "BorelSS", "e_infinity", "engine", "turn_page",
]
