"""Linearizability quantities from the homological equations of the linearizing transform."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational

from ..algebra.poly import MPoly
from ..config import AnalysisConfig
from ..errors import SeriesCapError
from .systems import COMPLEX_STATE, PlanarSystem, complexify, riccati_family

logger = logging.getLogger(__name__)


@dataclass
class LinTransform:
    """z1 = z + sum_d U_d, w1 = w + sum_d V_d with homogeneous U_d, V_d for 2 <= d <= order."""
    U: Dict[int, MPoly]
    V: Dict[int, MPoly]
    order: int

    def z1(self, ring) -> MPoly:
        result = ring.gen('z')
        for part in self.U.values():
            result = result + part
        return result

    def w1(self, ring) -> MPoly:
        result = ring.gen('w')
        for part in self.V.values():
            result = result + part
        return result

    def real_form(self, ring) -> Tuple[MPoly, MPoly]:
        """(x1, y1) as polynomials in x, y: x1 = (z1 + w1)/2, y1 = -i(z1 - w1)/2."""
        x, y, i = ring.gen('x'), ring.gen('y'), ring.gen('I')
        back = {'z': x + i * y, 'w': x - i * y}
        z1 = self.z1(ring).subs(back)
        w1 = self.w1(ring).subs(back)
        half = ring.constant(1) / 2
        return (z1 + w1) * half, -i * (z1 - w1) * half

    def coefficients(self, ring) -> Tuple[Dict[Tuple[int, int], MPoly], Dict[Tuple[int, int], MPoly]]:
        """c_mn and d_mn of x1 = x + sum c_mn x^m y^n, y1 = y + sum d_mn x^m y^n."""
        x1, y1 = self.real_form(ring)
        c = {k: v for k, v in x1.coefficients_in(('x', 'y')).items() if sum(k) >= 2}
        d = {k: v for k, v in y1.coefficients_in(('x', 'y')).items() if sum(k) >= 2}
        return c, d


@dataclass
class QuantityList:
    """Pairs (i_k, j_k), k = 1..K, with the complex obstructions they come from."""
    pairs: List[Tuple[MPoly, MPoly]]
    obstructions: List[Tuple[MPoly, MPoly]] = field(default_factory=list)

    def __len__(self):
        return len(self.pairs)

    def i(self, k: int) -> MPoly:
        return self.pairs[k - 1][0]

    def j(self, k: int) -> MPoly:
        return self.pairs[k - 1][1]

    def generators(self) -> List[MPoly]:
        return [q for pair in self.pairs for q in pair]

    def is_zero(self) -> bool:
        return all(q.is_zero() for q in self.generators())

    def to_json(self) -> List[dict]:
        return [{"k": k, "i": str(i), "j": str(j)} for k, (i, j) in enumerate(self.pairs, 1)]


def _zw(ring, m: int, n: int) -> MPoly:
    return MPoly(ring, {ring.monomial({'z': m, 'w': n}): ring.one})


class LinearizabilityComputer:
    """Solves the homological equations degree by degree."""

    def __init__(self, config: Optional[AnalysisConfig] = None):
        self.config = config or AnalysisConfig()
        self.logger = logging.getLogger(__name__)

    def compute(self, system, K: int,
                scales: Optional[Tuple[Fraction, Fraction]] = None) -> Tuple[QuantityList, LinTransform]:
        """Quantities (i_k, j_k) for k = 1..K and the transform through degree 2K + 1.

        Args:
            system: a PlanarSystem (complexified first) or a ComplexSystem
            K: number of pairs
            scales: multipliers of the real and imaginary parts (default: pair_scales())

        Returns:
            (QuantityList, LinTransform)
        """
        if K < 1:
            raise ValueError(f"Order must be positive: {K}")
        if K > self.config.max_series_order:
            raise SeriesCapError(K, self.config.max_series_order)
        cs = complexify(system) if isinstance(system, PlanarSystem) else system
        ring = cs.ring
        zero = ring.poly()
        parts = cs.components()
        X = {n: xy[0] for n, xy in parts.items()}
        Y = {n: xy[1] for n, xy in parts.items()}
        top = 2 * K + 1
        U: Dict[int, MPoly] = {}
        V: Dict[int, MPoly] = {}
        Uz, Uw, Vz, Vw = {}, {}, {}, {}
        obstructions = []

        for d in range(2, top + 1):
            rhs_u = -X.get(d, zero)
            rhs_v = Y.get(d, zero)
            for e in range(2, d):
                j = d - e + 1
                xj, yj = X.get(j, zero), Y.get(j, zero)
                if xj.is_zero() and yj.is_zero():
                    continue
                rhs_u = rhs_u - Uz[e] * xj + Uw[e] * yj
                rhs_v = rhs_v + Vw[e] * yj - Vz[e] * xj
            u_d, v_d = ring.poly(), ring.poly()
            resonant_u = resonant_v = zero
            for (m, n), coeff in rhs_u.coefficients_in(COMPLEX_STATE).items():
                if m - n - 1 == 0:
                    resonant_u = coeff
                else:
                    u_d = u_d + coeff * _zw(ring, m, n) / (m - n - 1)
            for (m, n), coeff in rhs_v.coefficients_in(COMPLEX_STATE).items():
                if m - n + 1 == 0:
                    resonant_v = coeff
                else:
                    v_d = v_d + coeff * _zw(ring, m, n) / (m - n + 1)
            U[d], V[d] = u_d, v_d
            Uz[d], Uw[d] = u_d.diff('z'), u_d.diff('w')
            Vz[d], Vw[d] = v_d.diff('z'), v_d.diff('w')
            if d % 2 == 1:
                obstructions.append((resonant_u, resonant_v))
                self.logger.debug(f"Order {(d - 1) // 2}: obstructions with "
                                  f"{len(resonant_u)} and {len(resonant_v)} terms")

        pairs = [real_pair(a, b, scales) for a, b in obstructions]
        self.logger.info(f"Computed {K} pairs of linearizability quantities for {cs.name or 'system'}")
        return QuantityList(pairs, obstructions), LinTransform(U, V, top)


def real_pair(I_k: MPoly, J_k: MPoly,
              scales: Optional[Tuple[Fraction, Fraction]] = None) -> Tuple[MPoly, MPoly]:
    """(I_k - J_k)/2 and -i(I_k + J_k)/2, each multiplied by its calibrated scale."""
    ring = I_k.ring
    i = ring.gen('I')
    half = ring.constant(1) / 2
    re = (I_k - J_k) * half
    im = -i * (I_k + J_k) * half
    s_re, s_im = pair_scales() if scales is None else scales
    return re * s_re, im * s_im


@lru_cache(maxsize=None)
def pair_scales() -> Tuple[Fraction, Fraction]:
    """Positive rationals sending the first real pair of the Riccati family to its primitive form.

    The same two scales apply at every order of every system.
    """
    unit = (Fraction(1), Fraction(1))
    quantities, _ = LinearizabilityComputer().compute(riccati_family(), 1, scales=unit)
    return tuple(1 / _fraction(q.content(), q.ring) for q in quantities.pairs[0])


def _fraction(c, ring) -> Fraction:
    return Fraction(int(ring.domain.numer(c)), int(ring.domain.denom(c)))


def linearizability_quantities(system, K: int, config: Optional[AnalysisConfig] = None):
    return LinearizabilityComputer(config).compute(system, K)


def specialize_condition(quantities: QuantityList, bindings: Dict[str, object]) -> List[MPoly]:
    """Substitute a condition into every quantity (i1, j1, i2, j2, ...)."""
    return [q.subs(bindings) for q in quantities.generators()]


def transform_residual(system: PlanarSystem, transform: LinTransform, N: Optional[int] = None
                       ) -> Tuple[MPoly, MPoly]:
    """Terms of degree <= N of x1' + y1 and y1' - x1 along the system (zero when linearized)."""
    ring = system.ring
    N = transform.order if N is None else N
    x1, y1 = transform.real_form(ring)
    x1 = x1.truncate(N, ('x', 'y'))
    y1 = y1.truncate(N, ('x', 'y'))
    dx1 = x1.diff('x') * system.P + x1.diff('y') * system.Q
    dy1 = y1.diff('x') * system.P + y1.diff('y') * system.Q
    return (dx1 + y1).truncate(N, ('x', 'y')), (dy1 - x1).truncate(N, ('x', 'y'))


def span_agreement(printed: Sequence[MPoly], computed: Sequence[MPoly],
                   bindings: Dict[str, MPoly]) -> bool:
    """True iff every printed polynomial, restricted by `bindings`, lies in the
    rational span of the restricted computed ones."""
    restricted_c = [c.subs(bindings) for c in computed]
    restricted_p = [p.subs(bindings) for p in printed]
    monomials = sorted({m for f in restricted_c + restricted_p for m in f.terms})
    ring = computed[0].ring

    def row(f):
        values = []
        for m in monomials:
            c = f.terms.get(m, ring.zero)
            values.append(Rational(int(ring.domain.numer(c)), int(ring.domain.denom(c))))
        return values

    if not monomials:
        return True
    base = Matrix([row(f) for f in restricted_c])
    rank = base.rank()
    for p in restricted_p:
        if Matrix([row(f) for f in restricted_c] + [row(p)]).rank() != rank:
            return False
    return True
