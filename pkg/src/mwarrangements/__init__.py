"""Milnor-Witt motivic cohomology of hyperplane arrangement complements.

Units, Milnor-Witt K-theory coefficients, the presentation by unit
generators with its nbc normal form, and the exterior-algebra model over
Z[eta]/2eta.
"""

from .arrangement import Arrangement, ArrangementError, Circuit, Hyperplane, Unit
from .ktheory import MWElement, ZeroTest, bracket_form, epsilon, eta, is_zero, symbol
from .osmodel import EtaInt, ExtElement, nf_mod_L, phi, psi, rank_mod_L, tilde_div, wedge
from .parsing import ParseError, parse_expression
from .presentation import (
    NormalForm,
    PresElement,
    basis,
    multiply,
    normal_form,
    r_minus_one_identity,
    r_polynomial,
    rank,
    restriction_boundary,
)
from .scalar import GF, QQ, Field, Scalar

__all__ = [
    "Arrangement",
    "ArrangementError",
    "Circuit",
    "Hyperplane",
    "Unit",
    "MWElement",
    "ZeroTest",
    "bracket_form",
    "epsilon",
    "eta",
    "is_zero",
    "symbol",
    "EtaInt",
    "ExtElement",
    "nf_mod_L",
    "phi",
    "psi",
    "rank_mod_L",
    "tilde_div",
    "wedge",
    "ParseError",
    "parse_expression",
    "NormalForm",
    "PresElement",
    "basis",
    "multiply",
    "normal_form",
    "r_minus_one_identity",
    "r_polynomial",
    "rank",
    "restriction_boundary",
    "GF",
    "QQ",
    "Field",
    "Scalar",
]
