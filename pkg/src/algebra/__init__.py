"""Exact polynomial algebra: rings, polynomials, Groebner bases and the modular pipeline."""
from .rings import (DEFAULT_VARIABLES, IMAGINARY_UNIT, Extension, Ring, TermOrder, make_ring,
                    prime_field)
from .poly import MPoly, divide, exact_divide, monomial_content, resultant
from .parser import parse_poly, render
from .groebner import (GroebnerBasis, GroebnerSolver, Ideal, buchberger, eliminate,
                       ideal_intersect, normal_form, radical_membership)
from .modular import DecompositionReport, modular_gb, rat_reconstruct, verify_decomposition

__all__ = [
    'DEFAULT_VARIABLES', 'IMAGINARY_UNIT', 'Extension', 'Ring', 'TermOrder', 'make_ring',
    'prime_field', 'MPoly', 'divide', 'exact_divide', 'monomial_content', 'resultant',
    'parse_poly', 'render', 'GroebnerBasis', 'GroebnerSolver', 'Ideal', 'buchberger',
    'eliminate', 'ideal_intersect', 'normal_form', 'radical_membership',
    'DecompositionReport', 'modular_gb', 'rat_reconstruct', 'verify_decomposition',
]
