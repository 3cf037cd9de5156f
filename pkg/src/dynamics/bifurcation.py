"""Weak-center order and critical-period bifurcations on the center varieties."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy
from scipy.optimize import fsolve

from ..algebra.bridge import from_sympy, to_sympy
from ..algebra.groebner import GroebnerSolver, Ideal
from ..algebra.poly import MPoly, resultant
from ..algebra.rings import Extension, make_ring
from ..config import AnalysisConfig
from ..errors import EliminationError, IntegrationError, SearchBudgetError
from .conditions import CENTER_CAVEAT, CenterCondition, center_condition
from .numeric import PeriodOracle, log_grid, numeric_period
from .period import PeriodCoefficients, PeriodComputer
from .systems import PlanarSystem, general_family, riccati_family

logger = logging.getLogger(__name__)

SAMPLE_VALUES = (Fraction(1, 2), Fraction(1), Fraction(-1), Fraction(3, 2), Fraction(2))
SPOT_RADIUS = 0.02


@dataclass
class Restriction:
    """A center condition written as bindings plus leftover nonlinear generators."""
    bindings: Dict[str, MPoly]
    leftover: List[MPoly]
    system: PlanarSystem
    trace: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def ideal(self) -> Optional[Ideal]:
        return Ideal(self.leftover, self.system.ring) if self.leftover else None


@dataclass
class WeakCenterReport:
    variety: str
    order: Union[int, str]
    elimination_trace: List[Tuple[str, str]] = field(default_factory=list)
    rank: Optional[int] = None
    critical_period_count: Optional[int] = None
    p: List[str] = field(default_factory=list)
    restriction: List[Tuple[str, str]] = field(default_factory=list)
    critical_points: List[Dict[str, float]] = field(default_factory=list)
    obstruction: Optional[MPoly] = None
    notes: List[str] = field(default_factory=list)
    literature_order: Optional[int] = None
    coefficients: Optional[PeriodCoefficients] = field(default=None, repr=False)
    free_parameters: Tuple[str, ...] = ()
    spot_checks: List[dict] = field(default_factory=list)
    passed: bool = True

    def to_dict(self) -> dict:
        return {
            "variety": self.variety,
            "order": self.order,
            "elimination_trace": [list(step) for step in self.elimination_trace],
            "rank": self.rank,
            "critical_period_count": self.critical_period_count,
            "p": self.p,
            "restriction": [list(step) for step in self.restriction],
            "critical_points": self.critical_points,
            "obstruction": str(self.obstruction) if self.obstruction is not None else None,
            "literature_order": self.literature_order,
            "spot_checks": self.spot_checks,
            "passed": self.passed,
            "notes": self.notes,
            "caveat": CENTER_CAVEAT,
        }


@dataclass
class SignSearchResult:
    point: Optional[Dict[str, Fraction]]
    critical_radii: List[float] = field(default_factory=list)
    signs: List[int] = field(default_factory=list)
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "point": {k: str(v) for k, v in self.point.items()} if self.point else None,
            "critical_radii": self.critical_radii,
            "signs": self.signs,
            "reason": self.reason,
        }


def _constant_value(f: MPoly) -> Optional[Fraction]:
    if not f.is_constant() or f.is_zero():
        return None
    c = f.constant_coefficient()
    return Fraction(int(f.ring.domain.numer(c)), int(f.ring.domain.denom(c)))


def _linear_variable(g: MPoly, variables: Sequence[str], last: bool) -> Optional[Tuple[str, MPoly]]:
    """A variable of degree one in g with a nonzero constant coefficient, solved for."""
    ordered = sorted(set(g.variables()) & set(variables), key=lambda v: g.ring.index[v], reverse=last)
    for var in ordered:
        if g.degree(var) != 1:
            continue
        parts = g.coefficients_in((var,))
        c = _constant_value(parts.get((1,), g.ring.poly()))
        if c is None:
            continue
        rest = parts.get((0,), g.ring.poly())
        return var, rest * (-1 / c)
    return None


def quadratic_form_matrix(f: MPoly) -> Optional[Tuple[Tuple[str, ...], sympy.Matrix]]:
    """(variables, symmetric matrix) when f is a quadratic form over Q, else None."""
    variables = tuple(f.variables())
    if f.is_zero() or any(sum(m) != 2 for m in f.terms):
        return None
    n = len(variables)
    matrix = sympy.zeros(n, n)
    for exps, c in f.coefficients_in(variables).items():
        value = _constant_value(c)
        if value is None:
            return None
        i, j = [i for i, e in enumerate(exps) for _ in range(e)]
        rational = sympy.Rational(value.numerator, value.denominator)
        if i == j:
            matrix[i, i] += rational
        else:
            matrix[i, j] += rational / 2
            matrix[j, i] += rational / 2
    return variables, matrix


def is_definite(f: MPoly) -> bool:
    """True for a positive or negative definite quadratic form (exact leading minors)."""
    form = quadratic_form_matrix(f)
    if form is None:
        return False
    _, matrix = form
    for sign in (1, -1):
        m = matrix * sign
        if all(m[:k, :k].det() > 0 for k in range(1, m.shape[0] + 1)):
            return True
    return False


def restrict(cc: CenterCondition, system: Optional[PlanarSystem] = None) -> Restriction:
    """Solve linear generators with constant coefficients, latest variable first.

    A leftover definite quadratic form has only the zero real solution, so its
    variables are bound to zero and the restriction is repeated.
    """
    system = system or riccati_family(a03_zero=True)
    ring = system.ring
    params = system.params
    # parameters the family does not carry are zero
    absent = {v: 0 for g in cc.polynomials(ring) for v in g.variables() if v not in params}
    pending = [g.subs(absent) for g in cc.polynomials(ring)]
    pending = [g for g in pending if not g.is_zero()]
    bindings: Dict[str, MPoly] = {}
    trace: List[Tuple[str, str]] = []
    while True:
        progress = False
        leftover = []
        for g in pending:
            g = g.subs(bindings) if bindings else g
            if g.is_zero():
                continue
            solved = _linear_variable(g, params, last=True)
            if solved is None:
                leftover.append(g)
                continue
            var, expr = solved
            bindings = {k: v.subs({var: expr}) for k, v in bindings.items()}
            bindings[var] = expr
            trace.append((var, str(expr)))
            progress = True
        pending = [g.subs(bindings) for g in leftover]
        pending = [g for g in pending if not g.is_zero()]
        if progress:
            continue
        definite = [g for g in pending if is_definite(g)]
        if not definite:
            break
        for g in definite:
            for var in g.variables():
                bindings = {k: v.subs({var: 0}) for k, v in bindings.items()}
                bindings[var] = ring.poly()
                trace.append((var, "0 (definite form)"))
        pending = [g.subs(bindings) for g in pending]
        pending = [g for g in pending if not g.is_zero()]
    restricted = system.bind(bindings, name=f"{system.name}-{cc.name}")
    return Restriction(bindings, pending, restricted, trace)


def center_point(restriction: Restriction) -> Optional[Dict[str, Fraction]]:
    """A rational point of the restricted variety, or None.

    Free parameters cycle through SAMPLE_VALUES; each leftover generator then fixes
    one variable it holds linearly, latest variable first.
    """
    params = restriction.system.free_parameters()
    point = {name: SAMPLE_VALUES[i % len(SAMPLE_VALUES)] for i, name in enumerate(params)}
    solved = set()
    for g in restriction.leftover:
        if _exact(g, point) == 0:
            continue
        ordered = sorted(set(g.variables()) - solved, key=lambda v: g.ring.index[v], reverse=True)
        for var in ordered:
            if g.degree(var) != 1:
                continue
            parts = g.coefficients_in((var,))
            slope = _exact(parts[(1,)], point)
            if slope == 0:
                continue
            point[var] = -_exact(parts.get((0,), g.ring.poly()), point) / slope
            solved.add(var)
            break
    if any(_exact(g, point) != 0 for g in restriction.leftover):
        return None
    return point


def _exact(f: MPoly, point: Dict[str, Fraction]) -> Fraction:
    return Fraction(f.evaluate({v: point[v] for v in f.variables()}))


def _univariate_roots(f: MPoly, var: str, values: Dict[str, float]) -> List[float]:
    """Real roots in `var` of f at numeric values of the other variables."""
    parts = f.coefficients_in((var,))
    degree = max(e for (e,) in parts)
    coefficients = []
    for e in range(degree, -1, -1):
        c = parts.get((e,))
        coefficients.append(complex(c.evaluate(values)).real if c is not None else 0.0)
    while coefficients and abs(coefficients[0]) < 1e-300:
        coefficients.pop(0)
    if len(coefficients) < 2:
        return []
    roots = np.roots(coefficients)
    scale = max(1.0, float(np.max(np.abs(roots)))) if len(roots) else 1.0
    return sorted(float(r.real) for r in roots if abs(r.imag) <= 1e-7 * scale)


def _numeric(f: MPoly, point: Dict[str, float]) -> float:
    values = {v: point[v] for v in f.variables() if v in point}
    return float(complex(f.evaluate(values)).real)


class BifurcationAnalyzer:
    """Runs the elimination chain and the rank computation for one center condition."""

    def __init__(self, config: Optional[AnalysisConfig] = None):
        self.config = config or AnalysisConfig()
        self.logger = logging.getLogger(__name__)
        self.periods = PeriodComputer(self.config)

    def weak_center_order(self, cc: CenterCondition, K: int) -> WeakCenterReport:
        if K < 1:
            raise ValueError(f"Order must be at least 1: {K}")
        restriction = restrict(cc)
        system = restriction.system
        report = WeakCenterReport(cc.name, 0, restriction=restriction.trace,
                                  literature_order=cc.literature_order,
                                  free_parameters=system.free_parameters())
        if not system.free_parameters():
            report.order = "isochronous"
            report.notes.append("restriction leaves the linear center")
            return report
        if cc.kukles:
            K = 1
        coefficients = self.periods.compute(system, K, restriction.ideal)
        report.coefficients = coefficients
        report.p = [str(p) for p in coefficients.p]
        ps = coefficients.p
        if all(p.is_zero() for p in ps):
            report.order = "isochronous"
            report.notes.append(f"p_2..p_{2 * K} vanish identically")
            return report
        if cc.kukles:
            report.order = cc.literature_order
            report.notes.append(f"{cc.real_dimension_note}; order taken from the literature")
            kukles = self.kukles_p2(cc)
            agree = self._same_on_variety(kukles, ps[0], restriction)
            report.notes.append(f"p2 on the reduced Kukles family {'matches' if agree else 'differs'}")
            checked = self.spot_check(restriction, coefficients, report)
            report.passed = agree and checked
            return report
        if is_definite(ps[0]):
            report.order = 0
            report.critical_period_count = 0
            report.notes.append("p2 is a definite quadratic form")
            return report
        self._eliminate(ps, system, report)
        return report

    def kukles_p2(self, cc: CenterCondition) -> MPoly:
        """p2 computed on the reduced Kukles family x' = -y, y' = x + Q(x, y) under the same condition."""
        family = general_family(3)
        zero = {name: 0 for name in family.params if name.startswith('a') or name == 'b03'}
        kukles = family.bind(zero, name="kukles")
        restriction = restrict(cc, kukles)
        computed = self.periods.compute(restriction.system, 1, restriction.ideal)
        target = riccati_family(a03_zero=True).ring
        return computed.p[0].to_ring(target)

    def _same_on_variety(self, first: MPoly, second: MPoly, restriction: Restriction) -> bool:
        difference = first.to_ring(second.ring) - second
        if difference.is_zero():
            return True
        if restriction.ideal is None:
            return False
        return GroebnerSolver(self.config).buchberger(restriction.ideal).contains(difference)

    def spot_check(self, restriction: Restriction, coefficients: PeriodCoefficients,
                   report: WeakCenterReport, r0: float = SPOT_RADIUS) -> bool:
        """Compare the integrated period with the truncated series at one point of the variety."""
        point = center_point(restriction)
        if point is None:
            report.notes.append("no sample point found on the variety")
            return False
        values = {name: float(v) for name, v in point.items()}
        check = {"values": {name: str(v) for name, v in point.items()}, "r0": r0}
        series = coefficients.series_period(values, r0)
        try:
            numeric = numeric_period(restriction.system, r0, values, self.config)
        except IntegrationError as e:
            check.update(series=series, error=str(e), agrees=False)
            report.spot_checks.append(check)
            return False
        difference = abs(numeric - series)
        # the series must account for most of the deviation from 2 pi
        agrees = difference <= 0.1 * abs(numeric - 2 * math.pi) + 1e-8
        check.update(numeric=numeric, series=series, difference=difference, agrees=agrees)
        report.spot_checks.append(check)
        if not agrees:
            self.logger.warning(f"{report.variety}: period {numeric:.12g} against series {series:.12g}")
        return agrees

    # -- elimination chain ------------------------------------------------

    def _eliminate(self, ps: List[MPoly], system: PlanarSystem, report: WeakCenterReport) -> None:
        params = system.free_parameters()
        bindings: Dict[str, MPoly] = {}
        order = 0
        stratum = None
        index = 0
        while index < len(ps):
            p = ps[index].subs(bindings) if bindings else ps[index]
            if p.is_zero():
                order += 1
                index += 1
                continue
            solved = _linear_variable(p, params, last=False)
            if solved is not None:
                var, expr = solved
                bindings = {k: v.subs({var: expr}) for k, v in bindings.items()}
                bindings[var] = expr
                report.elimination_trace.append((var, str(expr)))
                self.logger.info(f"{report.variety}: p_{2 * index + 2} = 0 solved for {var}")
                order += 1
                index += 1
                continue
            variables = [v for v in params if v in p.variables()]
            if len(variables) == 2 and len(p.homogeneous_components(variables)) == 1:
                stratum = self._binary_step(p, variables, report)
                if stratum is None:
                    break
                order += 1
                index += 1
                break
            if index + 1 >= len(ps):
                report.notes.append(f"p_{2 * index + 2} needs p_{2 * index + 4} for elimination")
                break
            q = ps[index + 1].subs(bindings) if bindings else ps[index + 1]
            stratum = self._resultant_step(p, q, variables, report)
            if stratum is None:
                break
            order += 2
            index += 2
            break
        report.order = order
        if stratum is None and bindings:
            stratum = {"kind": "linear"}
        if stratum is None:
            report.rank = None if order else 0
            report.critical_period_count = order if order == 0 else None
            return
        points = self._sample_stratum(stratum, bindings, params)
        if index < len(ps):
            following = ps[index]
            nonzero = [abs(_numeric(following, pt)) > 1e-8 for pt in points]
            report.notes.append(f"p_{2 * index + 2} nonzero at {sum(nonzero)}/{len(points)} stratum points")
        else:
            report.notes.append(f"order {order} is a lower bound: raise K to test p_{2 * order + 2}")
        ranks = [self.jacobian_rank(ps[:order], params, pt) for pt in points]
        report.critical_points = points
        report.rank = min(ranks) if ranks else None
        report.critical_period_count = order if report.rank == order else None
        self.logger.info(f"{report.variety}: order {order}, rank {report.rank} at {len(points)} points")

    def _binary_step(self, p: MPoly, variables: List[str], report: WeakCenterReport):
        u, v = variables
        dehomogenized = p.subs({v: 1})
        form = dehomogenized.primitive()
        report.elimination_trace.append((f"{u}/{v}", str(form)))
        ratios = _univariate_roots(form, u, {})
        if not ratios:
            report.notes.append(f"binary form {form} has no real ratio")
            return None
        return {"kind": "binary", "u": u, "v": v, "ratios": ratios, "form": form}

    def _resultant_step(self, p: MPoly, q: MPoly, variables: List[str], report: WeakCenterReport):
        degrees = {var: p.degree(var) for var in variables}
        low = min(degrees.values())
        candidates = [var for var in variables if degrees[var] == low]
        var = max(candidates, key=lambda name: p.ring.index[name])
        if low == 2:
            parts = p.coefficients_in((var,))
            zero = p.ring.poly()
            a, b, c = (parts.get((e,), zero) for e in (2, 1, 0))
            discriminant = (b * b - a * c * 4).primitive()
            report.elimination_trace.append((f"discriminant({var})", str(discriminant)))
        res = resultant(p, q, var)
        if res.is_zero():
            raise EliminationError(f"Resultant in {var} vanishes", str(p))
        factor = self._real_factor(res, [v for v in variables if v != var])
        if factor is None:
            report.notes.append(f"resultant in {var} has no factor with real points")
            return None
        if factor.terms and min(factor.terms.items(), key=lambda t: p.ring.key(t[0]))[1] < 0:
            factor = -factor
        report.obstruction = factor
        report.elimination_trace.append((f"resultant({var})", str(factor)))
        return {"kind": "resultant", "var": var, "p": p, "q": q, "factor": factor}

    def _real_factor(self, f: MPoly, variables: List[str]) -> Optional[MPoly]:
        """The factor of largest degree with real points, over Q."""
        ring = f.ring
        _, factors = sympy.factor_list(to_sympy(f))
        best = None
        for expr, _ in factors:
            g = from_sympy(expr, ring)
            if g.degree() < 1:
                continue
            used = [v for v in variables if v in g.variables()]
            if not used:
                continue
            if len(used) == 1:
                has_real = bool(_univariate_roots(g, used[0], {}))
            else:
                has_real = any(_univariate_roots(g, used[-1], {used[0]: float(s)}) for s in SAMPLE_VALUES)
            if has_real and (best is None or g.degree() > best.degree()):
                best = g
        return best.primitive() if best is not None else None

    def _sample_stratum(self, stratum: dict, bindings: Dict[str, MPoly],
                        params: Sequence[str]) -> List[Dict[str, float]]:
        """At least five real points where the eliminated coefficients vanish."""
        points = []
        for s in SAMPLE_VALUES:
            s = float(s)
            if stratum["kind"] == "linear":
                points.append({name: s for name in params if name not in bindings})
            elif stratum["kind"] == "binary":
                for t in stratum["ratios"]:
                    points.append({stratum["u"]: t * s, stratum["v"]: s})
            else:
                factor, var = stratum["factor"], stratum["var"]
                used = [v for v in params if v in factor.variables()]
                first, second = used[0], used[-1]
                for root in _univariate_roots(factor, second, {first: s}):
                    base = {first: s, second: root}
                    candidates = _univariate_roots(stratum["p"], var, base)
                    if not candidates:
                        continue
                    best = min(candidates, key=lambda c: abs(_numeric(stratum["q"], dict(base, **{var: c}))))
                    points.append(dict(base, **{var: best}))
        completed = []
        for point in points:
            for name in params:
                if name not in point and name not in bindings:
                    point[name] = 1.0
            for name, expr in bindings.items():
                point[name] = _numeric(expr, point)
            completed.append(point)
        return completed

    @staticmethod
    def jacobian_rank(ps: Sequence[MPoly], params: Sequence[str], point: Dict[str, float]) -> int:
        if not ps:
            return 0
        J = np.array([[_numeric(p.diff(v), point) for v in params] for p in ps], dtype=float)
        scale = max(1.0, float(np.max(np.abs(J))))
        return int(np.linalg.matrix_rank(J, tol=1e-7 * scale))

    # -- critical-period search -------------------------------------------

    def alternating_sign_search(self, cc: CenterCondition, report: Optional[WeakCenterReport] = None,
                                attempts: int = 6, ratio: Optional[float] = None) -> SignSearchResult:
        """A rational point near the critical stratum with alternating p_2, ..., p_(2k+2)
        and the numeric critical radii found there.

        Consecutive raw coefficients must satisfy |t_j| <= ratio |t_(j+1)| rho^2, with ratio
        defaulting to config.sign_ratio.
        """
        ratio = self.config.sign_ratio if ratio is None else ratio
        if not 0 < ratio < 1:
            raise ValueError(f"Sign ratio must lie in (0, 1): {ratio}")
        report = report or self.weak_center_order(cc, 3)
        if report.order == "isochronous":
            return SignSearchResult(None, reason="isochronous: every period coefficient vanishes")
        k = report.order
        if k == 0:
            return SignSearchResult(None, reason="order 0: no admissible perturbation")
        if report.rank != k or not report.critical_points:
            raise SearchBudgetError(f"{cc.name}: rank {report.rank} is not full at order {k}")
        restriction = restrict(cc)
        system = restriction.system
        coefficients = self.periods.compute(system, k + 2, restriction.ideal)
        raw = [r.subs({'pi': 1}) for r in coefficients.raw]
        params = list(report.free_parameters)
        base = report.critical_points[0]
        t_top = _numeric(raw[k], base)
        t_next = _numeric(raw[k + 1], base)
        if t_top == 0 or t_next == 0:
            raise SearchBudgetError(f"{cc.name}: degenerate critical point")
        rho2 = abs(t_top / t_next)

        J = np.array([[_numeric(p.diff(v), base) for v in params] for p in raw[:k]], dtype=float)
        chosen = self._pivot_columns(J, k)
        if chosen is None:
            raise SearchBudgetError(f"{cc.name}: no nonsingular parameter block")
        moving = [params[i] for i in chosen]

        sigma = min(self.config.sign_spacing, ratio / k)
        for attempt in range(attempts):
            roots = [sigma * rho2 * (i + 1) / k for i in range(k)]
            # sum_j j p_2j u^(j-1) = (k+1) t_top prod (u - u_i)
            target_poly = np.poly(roots) * (k + 1) * t_top
            targets = [target_poly[k - j] / (j + 1) for j in range(k)]

            def equations(x):
                point = dict(base, **dict(zip(moving, x)))
                return [_numeric(raw[j], point) - targets[j] for j in range(k)]

            solution, info, status, message = fsolve(equations, [base[m] for m in moving], full_output=True)
            if status != 1:
                self.logger.warning(f"{cc.name}: fsolve attempt {attempt + 1} failed: {message}")
                sigma /= 2
                continue
            point = {name: Fraction(base[name]).limit_denominator(10 ** 8) for name in params}
            for name, value in zip(moving, solution):
                point[name] = Fraction(float(value)).limit_denominator(10 ** 8)
            signs = self._alternating(raw[:k + 1], point, rho2, ratio)
            if signs is None:
                self.logger.warning(f"{cc.name}: attempt {attempt + 1} lost sign alternation")
                sigma /= 2
                continue
            values = {name: float(v) for name, v in point.items()}
            oracle = PeriodOracle(system, values, self.config)
            lo = 0.5 * math.sqrt(roots[0])
            hi = 1.5 * math.sqrt(roots[-1])
            radii = oracle.derivative_sign_changes(log_grid(lo, hi, self.config.scan_points))
            return SignSearchResult(point, radii, signs)
        raise SearchBudgetError(f"{cc.name}: no alternating point after {attempts} attempts")

    @staticmethod
    def _pivot_columns(J: np.ndarray, k: int) -> Optional[List[int]]:
        chosen: List[int] = []
        for col in range(J.shape[1]):
            trial = chosen + [col]
            if np.linalg.matrix_rank(J[:, trial]) == len(trial):
                chosen = trial
            if len(chosen) == k:
                return chosen
        return None

    def _alternating(self, raw: Sequence[MPoly], point: Dict[str, Fraction], rho2: float,
                     ratio: float) -> Optional[List[int]]:
        values = [float(r.evaluate({v: point[v] for v in r.variables()})) for r in raw]
        signs = [1 if v > 0 else -1 if v < 0 else 0 for v in values]
        if 0 in signs or any(a == b for a, b in zip(signs, signs[1:])):
            return None
        for j in range(len(values) - 1):
            if abs(values[j]) > ratio * abs(values[j + 1]) * rho2:
                return None
        return signs


def residual_I6(p6: Optional[MPoly] = None, config: Optional[AnalysisConfig] = None) -> Tuple[Fraction, Fraction]:
    """(x, y) with p6 = (x + y sqrt(721)) b20^6 on b30 = (10 a02^2 + 10 b20^2)/9,
    a02^2 = (35 + 3 sqrt(721))/94 b20^2."""
    if p6 is None:
        restriction = restrict(center_condition("I6"))
        p6 = PeriodComputer(config).compute(restriction.system, 3).p[2]
    ring = make_ring(('a02', 'b20', 'b30', 's'), extensions=(Extension('s', 721),))
    f = p6.to_ring(ring)
    a02, b20 = ring.gen('a02'), ring.gen('b20')
    f = f.subs({'b30': (a02 ** 2 + b20 ** 2) * Fraction(10, 9)})
    ratio = (ring.constant(35) + ring.gen('s') * 3) / 94
    result = ring.poly()
    for (ea, eb), c in f.coefficients_in(('a02', 'b20')).items():
        if ea % 2:
            raise ValueError("p6 is not even in a02")
        result = result + c * ratio ** (ea // 2) * b20 ** (ea + eb)
    parts = result.coefficients_in(('b20',))
    if set(parts) - {(6,)}:
        raise ValueError(f"Residual is not homogeneous of degree 6 in b20: {result}")
    c = parts.get((6,), ring.poly())
    x = c.coefficient({'s': 0}).constant_coefficient()
    y = c.coefficient({'s': 1}).constant_coefficient()
    return (Fraction(int(ring.domain.numer(x)), int(ring.domain.denom(x))),
            Fraction(int(ring.domain.numer(y)), int(ring.domain.denom(y))))


def weak_center_order(cc: CenterCondition, K: int, config: Optional[AnalysisConfig] = None) -> WeakCenterReport:
    return BifurcationAnalyzer(config).weak_center_order(cc, K)


def verify_obstruction_poly(cc: CenterCondition, config: Optional[AnalysisConfig] = None) -> MPoly:
    """The degree-10 obstruction in (a02, b11) on V(I1)."""
    if cc.name != "I1":
        raise ValueError(f"The obstruction polynomial is defined for I1, not {cc.name}")
    report = BifurcationAnalyzer(config).weak_center_order(cc, 3)
    if report.obstruction is None:
        raise EliminationError("Elimination chain produced no resultant", "; ".join(report.p))
    return report.obstruction


def alternating_sign_search(cc: CenterCondition, report: Optional[WeakCenterReport] = None,
                            config: Optional[AnalysisConfig] = None,
                            ratio: Optional[float] = None) -> SignSearchResult:
    return BifurcationAnalyzer(config).alternating_sign_search(cc, report, ratio=ratio)
