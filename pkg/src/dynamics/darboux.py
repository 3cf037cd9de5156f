"""Darboux factors, cofactors and Darboux linearization certificates."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from ..algebra.bridge import from_sympy, to_sympy
from ..algebra.groebner import GroebnerSolver, Ideal
from ..algebra.poly import MPoly, divide
from ..algebra.rings import IMAGINARY_UNIT, TermOrder, make_ring
from ..config import AnalysisConfig
from ..errors import CertificateError
from .linquant import LinTransform
from .systems import COMPLEX_STATE, ComplexSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DarbouxFactor:
    """f with f_z z' + f_w w' = K f."""
    f: MPoly
    K: MPoly


@dataclass
class LinearizationCertificate:
    """z1 = f0 * prod f_j^alpha_j, w1 = g0 * prod g_j^beta_j; entry 0 of each list is (f0, 1)."""
    z_factors: List[Tuple[MPoly, Fraction]]
    w_factors: List[Tuple[MPoly, Fraction]]
    system: str = ''

    def perturbed(self, side: str, index: int, delta: int = 1) -> "LinearizationCertificate":
        """A copy with one exponent shifted by delta."""
        z = list(self.z_factors)
        w = list(self.w_factors)
        target = z if side == 'z' else w
        f, a = target[index]
        target[index] = (f, a + delta)
        return LinearizationCertificate(z, w, self.system)


@dataclass
class CertificateReport:
    valid: bool
    failures: List[str] = field(default_factory=list)
    cofactors: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"valid": self.valid, "failures": self.failures, "cofactors": self.cofactors}


def _state_degree(f: MPoly) -> int:
    return f.total_degree(COMPLEX_STATE)


def cofactor_of(f: MPoly, system: ComplexSystem) -> Optional[MPoly]:
    """K with f_z z' + f_w w' = K f and deg K <= deg(system) - 1, or None."""
    if f.is_zero():
        raise ValueError("Darboux factor must be nonzero")
    derivative = f.diff('z') * system.zdot + f.diff('w') * system.wdot
    if derivative.is_zero():
        return system.ring.poly()
    quotient, remainder = divide(derivative, f)
    if not remainder.is_zero():
        return None
    if _state_degree(quotient) > system.degree - 1:
        return None
    return quotient


def combine_factors(a: DarbouxFactor, b: DarbouxFactor) -> DarbouxFactor:
    return DarbouxFactor(a.f * b.f, a.K + b.K)


def verify_certificate(cert: LinearizationCertificate, system: ComplexSystem) -> CertificateReport:
    """Check the shape of every factor, that each is Darboux, and the cofactor sums +1 and -1."""
    ring = system.ring
    failures: List[str] = []
    cofactors: Dict[str, str] = {}
    z, w = ring.gen('z'), ring.gen('w')

    for side, factors, lead, target in (('z', cert.z_factors, z, 1), ('w', cert.w_factors, w, -1)):
        if not factors:
            failures.append(f"{side}: no factors")
            continue
        f0, a0 = factors[0]
        parts = f0.homogeneous_components(COMPLEX_STATE)
        if 0 in parts or parts.get(1) != lead or a0 != 1:
            failures.append(f"{side}: leading factor must be {side} + higher order terms with exponent 1")
        for j, (fj, _) in enumerate(factors[1:], 1):
            if fj.homogeneous_components(COMPLEX_STATE).get(0) != ring.constant(1):
                failures.append(f"{side}: factor {j} must equal 1 at the origin")
        total = ring.poly()
        darboux = True
        for j, (fj, alpha) in enumerate(factors):
            K = cofactor_of(fj, system)
            if K is None:
                failures.append(f"{side}: factor {j} is not a Darboux factor")
                darboux = False
                continue
            cofactors[f"{side}{j}"] = str(K)
            total = total + K * alpha
        if darboux and total != ring.constant(target):
            failures.append(f"{side}: cofactor sum is {total}, expected {target}")

    valid = not failures
    if valid:
        logger.info(f"Certificate for {cert.system or 'system'} verified")
    else:
        logger.warning(f"Certificate for {cert.system or 'system'} failed: {'; '.join(failures)}")
    return CertificateReport(valid, failures, cofactors)


def _binomial_series(h: MPoly, alpha: Fraction, N: int) -> MPoly:
    """(1 + h)^alpha truncated at degree N, for h without constant term."""
    ring = h.ring
    result = ring.constant(1)
    power = ring.constant(1)
    coeff = Fraction(1)
    for k in range(1, N + 1):
        power = (power * h).truncate(N, COMPLEX_STATE)
        if power.is_zero():
            break
        coeff = coeff * (alpha - k + 1) / k
        if coeff:
            result = result + power * coeff
    return result


def _product_series(factors: Sequence[Tuple[MPoly, Fraction]], N: int) -> MPoly:
    ring = factors[0][0].ring
    result = factors[0][0].truncate(N, COMPLEX_STATE)
    for fj, alpha in factors[1:]:
        series = _binomial_series(fj - ring.constant(1), Fraction(alpha), N)
        result = (result * series).truncate(N, COMPLEX_STATE)
    return result


def expand_linearization(cert: LinearizationCertificate, system: ComplexSystem, N: int) -> LinTransform:
    """Power series of z1, w1 through total degree N."""
    report = verify_certificate(cert, system)
    if not report.valid:
        raise CertificateError(f"Certificate not verified: {'; '.join(report.failures)}")
    ring = system.ring
    z1 = _product_series(cert.z_factors, N)
    w1 = _product_series(cert.w_factors, N)
    U = (z1 - ring.gen('z')).homogeneous_components(COMPLEX_STATE)
    V = (w1 - ring.gen('w')).homogeneous_components(COMPLEX_STATE)
    return LinTransform(U, V, N)


def linearization_residual(transform: LinTransform, system: ComplexSystem, N: Optional[int] = None
                           ) -> Tuple[MPoly, MPoly]:
    """Terms of degree <= N of z1' - z1 and w1' + w1 along the system."""
    ring = system.ring
    N = transform.order if N is None else N
    z1, w1 = transform.z1(ring), transform.w1(ring)
    dz1 = z1.diff('z') * system.zdot + z1.diff('w') * system.wdot
    dw1 = w1.diff('z') * system.zdot + w1.diff('w') * system.wdot
    return (dz1 - z1).truncate(N, COMPLEX_STATE), (dw1 + w1).truncate(N, COMPLEX_STATE)


class FactorSearch:
    """Undetermined-coefficient search for Darboux factors of a numeric complex system.

    Three normalizations are searched: f(0) = 1, f = z + O(2) and f = w + O(2).
    The lowest cofactor coefficient is then 0, 1 or -1; nonresonant coefficients of
    f are solved degree by degree and the remaining polynomial conditions on the
    cofactor and the resonant coefficients are solved through a lex Groebner basis
    over Q(i).
    """

    TYPES = {'constant': (0, 0), 'z': (1, 1), 'w': (1, -1)}

    def __init__(self, config: Optional[AnalysisConfig] = None):
        self.config = config or AnalysisConfig()
        self.logger = logging.getLogger(__name__)
        self.solver = GroebnerSolver(self.config)

    def search(self, system: ComplexSystem, max_degree: int) -> List[DarbouxFactor]:
        if max_degree < 1 or max_degree > self.config.max_factor_degree:
            raise ValueError(f"Factor degree must be in 1..{self.config.max_factor_degree}: {max_degree}")
        free = set(system.X.variables()) | set(system.Y.variables())
        free -= set(COMPLEX_STATE) | {'I'}
        if free:
            raise ValueError(f"Factor search needs numeric parameters; free: {', '.join(sorted(free))}")
        found: List[DarbouxFactor] = []
        for kind in self.TYPES:
            for factor in self._search_type(system, max_degree, kind):
                if factor.f not in [g.f for g in found]:
                    found.append(factor)
        self.logger.info(f"Found {len(found)} Darboux factors of degree <= {max_degree}")
        return found

    def _search_type(self, system: ComplexSystem, max_degree: int, kind: str) -> List[DarbouxFactor]:
        low, k0 = self.TYPES[kind]
        n = system.degree
        k_names = [f"k{i}{d - i}" for d in range(1, n) for i in range(d, -1, -1)]
        r_names = []
        for d in range(low + 1, max_degree + 1):
            for m in range(d, -1, -1):
                if m - (d - m) == k0:
                    r_names.append(f"r{m}{d - m}")
        unknowns = r_names + k_names
        ring = make_ring(tuple(unknowns) + COMPLEX_STATE + ('I',), order=TermOrder('lex'),
                         extensions=(IMAGINARY_UNIT,))
        X = system.X.to_ring(ring)
        Y = system.Y.to_ring(ring)
        z, w = ring.gen('z'), ring.gen('w')

        def mono(m, k):
            return MPoly(ring, {ring.monomial({'z': m, 'w': k}): ring.one})

        K = ring.constant(k0)
        for name in k_names:
            K = K + ring.gen(name) * mono(int(name[1]), int(name[2]))
        K_high = K - ring.constant(k0)

        zero = ring.poly()
        X_parts = X.homogeneous_components(COMPLEX_STATE)
        Y_parts = Y.homogeneous_components(COMPLEX_STATE)
        K_parts = K_high.homogeneous_components(COMPLEX_STATE)
        f_parts: Dict[int, MPoly] = {low: ring.constant(1) if kind == 'constant' else (z if kind == 'z' else w)}
        constraints: List[MPoly] = []
        top = max_degree + n - 1
        for d in range(low + 1, top + 1):
            # degree-d part of f_z X - f_w Y - (K - k0) f from lower-degree parts of f
            rest = ring.poly()
            for e, fe in f_parts.items():
                if e >= d:
                    continue
                j = d - e + 1
                rest = rest + fe.diff('z') * X_parts.get(j, zero) - fe.diff('w') * Y_parts.get(j, zero)
                rest = rest - K_parts.get(d - e, zero) * fe
            coeffs = rest.coefficients_in(COMPLEX_STATE)
            fd = ring.poly()
            if d <= max_degree:
                for m in range(d, -1, -1):
                    c = coeffs.get((m, d - m), ring.poly())
                    eigen = m - (d - m) - k0
                    if eigen == 0:
                        if not c.is_zero():
                            constraints.append(c)
                        fd = fd + ring.gen(f"r{m}{d - m}") * mono(m, d - m)
                    else:
                        fd = fd - c * mono(m, d - m) / eigen
            else:
                constraints.extend(c for c in coeffs.values() if not c.is_zero())
            f_parts[d] = fd
        f = ring.poly()
        for part in f_parts.values():
            f = f + part

        factors = []
        for solution in self._solve(ring, constraints, unknowns):
            fs = f.subs(solution)
            Ks = K.subs(solution)
            if kind == 'constant' and fs.is_constant():
                continue
            factors.append(DarbouxFactor(fs.to_ring(system.ring), Ks.to_ring(system.ring)))
        return factors

    def _solve(self, ring, constraints: List[MPoly], unknowns: List[str]) -> List[Dict[str, MPoly]]:
        if not constraints:
            if unknowns:
                self.logger.warning("Factor family is not zero-dimensional; skipped")
                return []
            return [{}]
        gb = self.solver.buchberger(Ideal(constraints, ring))
        if gb.is_unit():
            return []
        return self._triangular(ring, gb.basis, list(unknowns), {})

    def _triangular(self, ring, basis: List[MPoly], remaining: List[str], partial: Dict[str, MPoly]):
        basis = [g for g in basis if not g.is_zero()]
        if any(g.is_constant() for g in basis):
            return []
        if not remaining:
            return [dict(partial)]
        var = remaining[-1]
        univariate = [g for g in basis if set(g.variables()) - {'I'} == {var}]
        if not univariate:
            # var is free on this component
            self.logger.warning(f"Factor family is not zero-dimensional in {var}; skipped")
            return []
        solutions = []
        for root in self._gaussian_roots(univariate[-1], var):
            substituted = [g.subs({var: root}) for g in basis]
            substituted = [g for g in substituted if not g.is_zero()]
            reduced: List[MPoly] = []
            if substituted:
                gb = self.solver.buchberger(Ideal(substituted, ring))
                if gb.is_unit():
                    continue
                reduced = gb.basis
            solutions.extend(self._triangular(ring, reduced, remaining[:-1], {**partial, var: root}))
        return solutions

    def _gaussian_roots(self, g: MPoly, var: str) -> List[MPoly]:
        """Roots in Q(i) of a univariate polynomial, through sympy's Gaussian factorization."""
        ring = g.ring
        symbol = sympy.Symbol(var)
        _, factors = sympy.factor_list(to_sympy(g), symbol, gaussian=True)
        roots = []
        for factor, _ in factors:
            poly = sympy.Poly(factor, symbol, gaussian=True)
            if poly.degree() == 1:
                _, b = poly.monic().all_coeffs()
                roots.append(from_sympy(-b, ring))
            elif poly.degree() > 1:
                self.logger.debug(f"Discarding irreducible factor of degree {poly.degree()} in {var}")
        return roots


def search_factors(system: ComplexSystem, max_degree: int,
                   config: Optional[AnalysisConfig] = None) -> List[DarbouxFactor]:
    return FactorSearch(config).search(system, max_degree)
