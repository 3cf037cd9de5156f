"""Poincare compactification charts, infinite singular points and directional blow-ups."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra.poly import MPoly, exact_divide, monomial_content
from ..algebra.rings import Ring
from ..dynamics.systems import PolynomialField

logger = logging.getLogger(__name__)

CHARTS = ('U1', 'U2', 'U3', 'V1', 'V2', 'V3')
CHART_VARIABLES = ('u', 'v')


@dataclass(frozen=True)
class ChartField:
    """(u', v') of a field of degree n in one of the six charts."""
    chart: str
    u_dot: MPoly
    v_dot: MPoly
    degree: int

    @property
    def ring(self) -> Ring:
        return self.u_dot.ring

    def as_field(self) -> PolynomialField:
        return PolynomialField(self.u_dot, self.v_dot, (), CHART_VARIABLES, self.chart)

    def to_strings(self) -> Dict[str, str]:
        return {"chart": self.chart, "du": str(self.u_dot), "dv": str(self.v_dot), "degree": self.degree}


@dataclass
class InfinitePoint:
    chart: str
    point: Tuple[float, float]
    jacobian: List[List[float]]

    def to_dict(self) -> dict:
        return {"chart": self.chart, "point": list(self.point), "jacobian": self.jacobian}


@dataclass
class BlowUpStep:
    direction: str
    cancelled: Dict[str, int]
    degenerate: bool = False


@dataclass
class BlowUpChain:
    """Successive directional blow-ups of the origin of a planar field in (u, v)."""
    steps: List[BlowUpStep]
    u_dot: MPoly
    v_dot: MPoly
    notes: List[str] = field(default_factory=list)

    @property
    def degenerate(self) -> bool:
        return any(step.degenerate for step in self.steps)

    def to_dict(self) -> dict:
        return {
            "steps": [{"direction": s.direction, "cancelled": s.cancelled, "degenerate": s.degenerate}
                      for s in self.steps],
            "du": str(self.u_dot),
            "dv": str(self.v_dot),
            "notes": self.notes,
        }


def chart_ring(ring: Ring) -> Ring:
    return ring.with_symbols(CHART_VARIABLES)


def _evaluate_form(f: MPoly, x: str, y: str, xv: MPoly, yv: MPoly) -> MPoly:
    return f.subs({x: xv, y: yv})


def chart_field(system: PolynomialField, chart: str) -> ChartField:
    """The compactified field in a chart, with the v^(n-j) prefactors kept."""
    if chart not in CHARTS:
        raise ValueError(f"Unknown chart: {chart}")
    ring = chart_ring(system.ring)
    x, y = system.variables
    n = system.degree
    u, v = ring.gen('u'), ring.gen('v')
    one = ring.constant(1)
    u_dot, v_dot = ring.poly(), ring.poly()
    base = chart[1]
    if base == '3':
        u_dot = system.P.to_ring(ring).subs({x: u, y: v})
        v_dot = system.Q.to_ring(ring).subs({x: u, y: v})
    else:
        for j, (P_j, Q_j) in system.components().items():
            P_j, Q_j = P_j.to_ring(ring), Q_j.to_ring(ring)
            weight = v ** (n - j)
            if base == '1':
                p = _evaluate_form(P_j, x, y, one, u)
                q = _evaluate_form(Q_j, x, y, one, u)
                u_dot = u_dot + weight * (q - u * p)
                v_dot = v_dot - v * weight * p
            else:
                p = _evaluate_form(P_j, x, y, u, one)
                q = _evaluate_form(Q_j, x, y, u, one)
                u_dot = u_dot + weight * (p - u * q)
                v_dot = v_dot - v * weight * q
    if chart[0] == 'V' and (n - 1) % 2 == 1:
        u_dot, v_dot = -u_dot, -v_dot
    return ChartField(chart, u_dot, v_dot, n)


def _real_roots(f: MPoly, var: str) -> List[float]:
    """Real roots of a univariate numeric polynomial."""
    parts = f.coefficients_in((var,))
    if not parts:
        return []
    degree = max(e for (e,) in parts)
    coefficients = [float(parts[(e,)].evaluate({})) if (e,) in parts else 0.0 for e in range(degree, -1, -1)]
    if degree == 0:
        return []
    roots = np.roots(coefficients)
    return sorted({round(float(r.real), 12) for r in roots if abs(r.imag) < 1e-9})


def _jacobian(f: MPoly, g: MPoly, point: Dict[str, float]) -> List[List[float]]:
    rows = []
    for h in (f, g):
        rows.append([float(complex(h.diff(var).evaluate(point)).real) + 0.0 for var in CHART_VARIABLES])
    return rows


def _require_numeric(system: PolynomialField):
    if system.free_parameters():
        raise ValueError(f"Numeric parameters required; free: {', '.join(system.free_parameters())}")


def infinite_singulars(system: PolynomialField) -> Dict[str, List[InfinitePoint]]:
    """Singular points on the equator: real roots on v = 0 in U1 and the origin of U2."""
    _require_numeric(system)
    found: Dict[str, List[InfinitePoint]] = {}
    u1 = chart_field(system, 'U1')
    on_equator = u1.u_dot.subs({'v': 0})
    points = []
    if on_equator.is_zero():
        logger.warning("Equator of U1 consists of singular points")
    else:
        for root in _real_roots(on_equator, 'u'):
            point = {'u': root, 'v': 0.0}
            points.append(InfinitePoint('U1', (root, 0.0), _jacobian(u1.u_dot, u1.v_dot, point)))
    found['U1'] = points
    u2 = chart_field(system, 'U2')
    origin = {'u': 0.0, 'v': 0.0}
    found['U2'] = []
    if float(complex(u2.u_dot.evaluate(origin)).real) == 0 and float(complex(u2.v_dot.evaluate(origin)).real) == 0:
        found['U2'].append(InfinitePoint('U2', (0.0, 0.0), _jacobian(u2.u_dot, u2.v_dot, origin)))
    for chart, items in found.items():
        logger.info(f"{chart}: {len(items) or 'no'} infinite singular points")
    return found


def _single_blow_up(f: MPoly, g: MPoly, direction: str) -> Tuple[MPoly, MPoly, BlowUpStep]:
    ring = f.ring
    u, v = ring.gen('u'), ring.gen('v')
    if direction == 'u':
        fs, gs = f.subs({'v': u * v}), g.subs({'v': u * v})
        new_f = fs
        new_g = exact_divide(gs - v * fs, u)
    elif direction == 'v':
        fs, gs = f.subs({'u': u * v}), g.subs({'u': u * v})
        new_g = gs
        new_f = exact_divide(fs - u * gs, v)
    else:
        raise ValueError(f"Blow-up direction must be 'u' or 'v': {direction}")
    common_f = monomial_content(new_f, CHART_VARIABLES)
    common_g = monomial_content(new_g, CHART_VARIABLES)
    cancelled = {var: min(common_f.get(var, 0), common_g.get(var, 0)) for var in CHART_VARIABLES}
    cancelled = {var: e for var, e in cancelled.items() if e}
    if cancelled:
        monomial = ring.constant(1)
        for var, e in cancelled.items():
            monomial = monomial * ring.gen(var) ** e
        new_f = exact_divide(new_f, monomial)
        new_g = exact_divide(new_g, monomial)
    return new_f, new_g, BlowUpStep(direction, cancelled, degenerate=not cancelled)


def blow_up(field_or_chart: Union[ChartField, Tuple[MPoly, MPoly]], directions: Union[str, Sequence[str]],
            times: int = 1) -> BlowUpChain:
    """Directional blow-ups of the origin; `u` keeps u (v = u v1), `v` keeps v (u = u1 v).

    A step without a common factor is recorded as degenerate and the chain goes on.
    """
    if isinstance(field_or_chart, ChartField):
        f, g = field_or_chart.u_dot, field_or_chart.v_dot
    else:
        f, g = field_or_chart
    if isinstance(directions, str):
        directions = [directions] * times
    else:
        directions = list(directions) * times
    steps = []
    notes = []
    origin = {'u': 0, 'v': 0}
    for direction in directions:
        if f.evaluate(origin) != 0 or g.evaluate(origin) != 0:
            raise ValueError("Blow-up needs a singular point at the origin")
        f, g, step = _single_blow_up(f, g, direction)
        if step.degenerate:
            notes.append(f"{direction}-directional step left no common factor")
            logger.warning(f"Degenerate blow-up step in direction {direction}")
        steps.append(step)
    return BlowUpChain(steps, f, g, notes)


def divisor_equilibria(chain: BlowUpChain) -> List[dict]:
    """Equilibria on the last exceptional divisor with their eigenvalues."""
    if not chain.steps:
        return []
    direction = chain.steps[-1].direction
    if direction == 'v':
        divisor, along, component = 'v', 'u', chain.u_dot
    else:
        divisor, along, component = 'u', 'v', chain.v_dot
    restricted = component.subs({divisor: 0})
    if restricted.is_zero():
        logger.warning("Exceptional divisor consists of equilibria")
        return []
    out = []
    for root in _real_roots(restricted, along):
        point = {along: root, divisor: 0.0}
        other = chain.v_dot if component is chain.u_dot else chain.u_dot
        if abs(float(complex(other.evaluate(point)).real)) > 1e-9:
            continue
        jac = _jacobian(chain.u_dot, chain.v_dot, point)
        eig = np.linalg.eigvals(np.array(jac))
        eigenvalues = sorted((float(e.real) for e in eig))
        out.append({along: root, divisor: 0.0, "jacobian": jac, "eigenvalues": eigenvalues,
                    "hyperbolic": all(abs(e.real) > 1e-9 for e in eig)})
    return out


def overlap_factor(system: PolynomialField) -> Optional[int]:
    """k with U1 pushed to U2 coordinates equal to u^k times the U2 field, or None.

    With u2 = 1/u1 and v2 = v1/u1: u2' = -u1'/u1^2, v2' = (u1 v1' - v1 u1')/u1^2.
    """
    u1 = chart_field(system, 'U1')
    u2 = chart_field(system, 'U2')
    ring = u1.ring
    u, v = ring.gen('u'), ring.gen('v')
    pushed = (-u1.u_dot, u * u1.v_dot - v * u1.u_dot)  # times u^2
    D = max(u2.u_dot.total_degree(CHART_VARIABLES), u2.v_dot.total_degree(CHART_VARIABLES))

    def pull_back(h: MPoly) -> MPoly:
        """u^D h(1/u, v/u)."""
        out = ring.poly()
        for (a, b), c in h.coefficients_in(CHART_VARIABLES).items():
            out = out + c * u ** (D - a - b) * v ** b
        return out

    pulled = (pull_back(u2.u_dot), pull_back(u2.v_dot))  # times u^D
    shifts = set()
    for a, b in zip(pushed, pulled):
        # a / u^2 = u^k * b / u^D
        lhs, rhs = a * u ** D, b * u ** 2
        k = _monomial_shift(lhs, rhs, 'u')
        if k is None:
            return None
        shifts.add(k)
    if len(shifts) > 1:
        shifts.discard('any')
    if len(shifts) != 1:
        return None
    k = shifts.pop()
    return 0 if k == 'any' else k


def _monomial_shift(a: MPoly, b: MPoly, var: str):
    """k with a = var^k b, 'any' when both vanish, None otherwise."""
    if a.is_zero() and b.is_zero():
        return 'any'
    if a.is_zero() or b.is_zero():
        return None
    k = monomial_content(a, (var,))[var] - monomial_content(b, (var,))[var]
    x = a.ring.gen(var)
    if k >= 0:
        return k if a == b * x ** k else None
    return k if b == a * x ** (-k) else None
