"""Conversion between MPoly and sympy expressions.

The polynomial engine never factors; the few places that need factorization
(univariate root splitting over Q(i), resultant factors) go through sympy.
"""

from typing import Dict

import sympy
from sympy import Poly, Symbol

from .poly import MPoly
from .rings import Ring


def sympy_symbols(ring: Ring) -> Dict[str, Symbol]:
    return {name: Symbol(name) for name in ring.symbols}


def to_sympy(f: MPoly):
    """Exact sympy expression; extension variables become sqrt(d) (I for d = -1)."""
    ring = f.ring
    symbols = [Symbol(s) for s in ring.symbols]
    for i, sq in ring.ext:
        symbols[i] = sympy.I if sq == -1 else sympy.sqrt(sq)
    total = sympy.Integer(0)
    for m, c in f.terms.items():
        n, d = int(ring.domain.numer(c)), int(ring.domain.denom(c))
        term = sympy.Rational(n, d)
        for s, e in zip(symbols, m):
            if e:
                term *= s ** e
        total += term
    return total


def from_sympy(expr, ring: Ring) -> MPoly:
    """Read a polynomial expression back; sympy.I maps to the ring's I extension."""
    expr = sympy.expand(sympy.sympify(expr))
    replacements = {}
    for i, sq in ring.ext:
        name = ring.symbols[i]
        root = sympy.I if sq == -1 else sympy.sqrt(sq)
        replacements[root] = Symbol(name)
    if replacements:
        expr = sympy.expand(expr.xreplace(replacements))
    gens = [Symbol(s) for s in ring.symbols]
    poly = Poly(expr, *gens, domain='QQ')
    result = ring.poly()
    for monom, coeff in poly.terms():
        coeff = sympy.Rational(coeff)
        if coeff == 0:
            continue
        base = [int(e) for e in monom]
        ext_powers = []
        for i, _ in ring.ext:
            ext_powers.append((ring.symbols[i], base[i]))
            base[i] = 0
        term = MPoly(ring, {tuple(base): ring.domain(int(coeff.p)) / ring.domain(int(coeff.q))})
        for name, e in ext_powers:
            if e:
                term = term * ring.gen(name) ** e
        result = result + term
    return result
