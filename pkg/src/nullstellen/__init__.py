"""Exact Groebner bases and decision procedures for the Nullstellensatz over Q."""

from .errors import AlgebraError
from .groebner import GroebnerBasis, Ideal, eliminate, groebner_basis, ideal_equal, intersect, is_member, normal_form
from .nullstellensatz import (
    VarietyResult,
    check_statement_f,
    maximal_point,
    point_ideal,
    radical_member,
    solvable,
    strong_nss_check,
    vanishing_ideal,
    variety_points,
)
from .parser import load_ideal, parse_poly, print_poly
from .ring import Monomial, MonomialOrder, Polynomial, grevlex, grlex, lex
from .univariate import RationalFunction, squarefree_part

__version__ = "0.1.0"
