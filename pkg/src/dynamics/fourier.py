"""Quasi-trigonometric polynomials: sums of c * theta^m * cos(k theta) and c * theta^m * sin(k theta)."""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple

from ..algebra.poly import MPoly
from ..algebra.rings import Ring

COS, SIN = 'c', 's'
Key = Tuple[int, int, str]


def _canonical(m: int, k: int, phase: str, c: Fraction):
    """Fold a negative harmonic into k >= 0; sin(0) vanishes."""
    if k < 0:
        k = -k
        if phase == SIN:
            c = -c
    if phase == SIN and k == 0:
        return None
    return (m, k, phase), c


def _product_rule(a: Key, b: Key) -> Tuple[Tuple[Key, Fraction], ...]:
    (m1, k1, p1), (m2, k2, p2) = a, b
    m = m1 + m2
    half = Fraction(1, 2)
    if p1 == COS and p2 == COS:
        raw = ((k1 - k2, COS, half), (k1 + k2, COS, half))
    elif p1 == SIN and p2 == SIN:
        raw = ((k1 - k2, COS, half), (k1 + k2, COS, -half))
    elif p1 == SIN:
        raw = ((k1 + k2, SIN, half), (k1 - k2, SIN, half))
    else:
        raw = ((k1 + k2, SIN, half), (k2 - k1, SIN, half))
    out = []
    for k, phase, c in raw:
        folded = _canonical(m, k, phase, c)
        if folded is not None:
            out.append(folded)
    return tuple(out)


@lru_cache(maxsize=None)
def _antiderivative(m: int, k: int, phase: str) -> Tuple[Tuple[Key, Fraction], ...]:
    """Integral from 0 to theta of t^m cos(kt) or t^m sin(kt), by parts."""
    terms: Dict[Key, Fraction] = {}

    def add(key, c):
        terms[key] = terms.get(key, Fraction(0)) + c

    if k == 0:
        add((m + 1, 0, COS), Fraction(1, m + 1))
    elif phase == COS:
        add((m, k, SIN), Fraction(1, k))
        if m:
            for key, c in _antiderivative(m - 1, k, SIN):
                add(key, -Fraction(m, k) * c)
    else:
        add((m, k, COS), -Fraction(1, k))
        if m:
            for key, c in _antiderivative(m - 1, k, COS):
                add(key, Fraction(m, k) * c)
        else:
            add((0, 0, COS), Fraction(1, k))
    return tuple((key, c) for key, c in terms.items() if c)


class FourierPoly:
    """Finite sum over keys (m, k, phase) with polynomial coefficients in a parameter ring."""

    __slots__ = ('ring', 'terms')

    def __init__(self, ring: Ring, terms: Dict[Key, MPoly] = None):
        self.ring = ring
        self.terms = {key: c for key, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def constant(cls, ring: Ring, c) -> "FourierPoly":
        c = c if isinstance(c, MPoly) else ring.constant(c)
        return cls(ring, {(0, 0, COS): c})

    @classmethod
    def cos(cls, ring: Ring, k: int = 1) -> "FourierPoly":
        return cls(ring, {(0, k, COS): ring.constant(1)})

    @classmethod
    def sin(cls, ring: Ring, k: int = 1) -> "FourierPoly":
        return cls(ring, {(0, k, SIN): ring.constant(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FourierPoly) and self.terms == other.terms

    def __repr__(self):
        parts = []
        for (m, k, phase), c in sorted(self.terms.items()):
            basis = "1" if k == 0 else f"{'cos' if phase == COS else 'sin'}({k}t)"
            parts.append(f"({c})*t^{m}*{basis}")
        return " + ".join(parts) or "0"

    def __add__(self, other: "FourierPoly") -> "FourierPoly":
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return FourierPoly(self.ring, terms)

    def __neg__(self):
        return FourierPoly(self.ring, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: "FourierPoly") -> "FourierPoly":
        return self + (-other)

    def scale(self, c) -> "FourierPoly":
        """Multiply by a ring polynomial or a rational."""
        return FourierPoly(self.ring, {key: v * c for key, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, FourierPoly):
            return self.scale(other)
        out: Dict[Key, MPoly] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                product = ca * cb
                for key, c in _product_rule(a, b):
                    term = product * c
                    out[key] = out[key] + term if key in out else term
        return FourierPoly(self.ring, out)

    __rmul__ = __mul__

    def map_coefficients(self, fn) -> "FourierPoly":
        return FourierPoly(self.ring, {key: fn(c) for key, c in self.terms.items()})

    def derivative(self) -> "FourierPoly":
        out: Dict[Key, MPoly] = {}

        def add(key, c):
            out[key] = out[key] + c if key in out else c

        for (m, k, phase), c in self.terms.items():
            if m:
                add((m - 1, k, phase), c * m)
            if k:
                if phase == COS:
                    add((m, k, SIN), c * (-k))
                else:
                    add((m, k, COS), c * k)
        return FourierPoly(self.ring, out)

    def integrate(self) -> "FourierPoly":
        """The antiderivative vanishing at theta = 0."""
        out: Dict[Key, MPoly] = {}
        for (m, k, phase), c in self.terms.items():
            for key, q in _antiderivative(m, k, phase):
                term = c * q
                out[key] = out[key] + term if key in out else term
        return FourierPoly(self.ring, out)

    def at_zero(self) -> MPoly:
        return self.terms.get((0, 0, COS), self.ring.poly())

    def at_two_pi(self, pi: str = 'pi') -> MPoly:
        """Value at theta = 2*pi as a polynomial in the ring symbol `pi`."""
        result = self.ring.poly()
        two_pi = self.ring.gen(pi) * 2
        for (m, k, phase), c in self.terms.items():
            if phase == COS:
                result = result + c * two_pi ** m
        return result

    def integral_over_period(self, pi: str = 'pi') -> MPoly:
        return self.integrate().at_two_pi(pi)

    def max_theta_power(self) -> int:
        return max((m for m, _, _ in self.terms), default=0)


def trig_monomial(ring: Ring, a: int, b: int, cache: Dict[Tuple[int, int], FourierPoly]) -> FourierPoly:
    """cos(theta)^a * sin(theta)^b, memoized in `cache`."""
    if (a, b) in cache:
        return cache[(a, b)]
    if a == 0 and b == 0:
        result = FourierPoly.constant(ring, 1)
    elif a > 0:
        result = trig_monomial(ring, a - 1, b, cache) * FourierPoly.cos(ring)
    else:
        result = trig_monomial(ring, a, b - 1, cache) * FourierPoly.sin(ring)
    cache[(a, b)] = result
    return result


def fourier_sum(ring: Ring, items: Iterable[FourierPoly]) -> FourierPoly:
    total = FourierPoly(ring)
    for item in items:
        total = total + item
    return total
