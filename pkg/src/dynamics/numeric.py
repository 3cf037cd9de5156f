"""Numeric period of closed orbits by direct integration."""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from ..config import AnalysisConfig
from ..errors import IntegrationError
from .systems import PolynomialField

logger = logging.getLogger(__name__)


class PeriodOracle:
    """First-return time to the positive x-axis for orbits starting at (r0, 0)."""

    def __init__(self, system: PolynomialField, values: Optional[Dict[str, float]] = None,
                 config: Optional[AnalysisConfig] = None):
        self.config = config or AnalysisConfig()
        self.logger = logging.getLogger(__name__)
        self.system = system
        self.rhs = system.vector_field(values)

    def _escape_event(self):
        radius = self.config.escape_radius

        def escape(t, state):
            return radius - math.hypot(state[0], state[1])
        escape.terminal = True
        return escape

    def _crossing(self, t0: float, state: Sequence[float], direction: int) -> Tuple[float, np.ndarray]:
        def section(t, s):
            return s[1]
        section.terminal = True
        section.direction = direction
        escape = self._escape_event()
        result = solve_ivp(self.rhs, (t0, t0 + self.config.max_time), list(state), method='DOP853',
                           events=(section, escape), rtol=self.config.rtol, atol=self.config.atol)
        if result.status == -1:
            raise IntegrationError(result.message)
        if len(result.t_events[1]):
            raise IntegrationError(f"orbit left the radius {self.config.escape_radius}")
        if not len(result.t_events[0]):
            raise IntegrationError(f"no return within time {self.config.max_time}")
        return result.t_events[0][0], result.y_events[0][0]

    def period(self, r0: float) -> float:
        """Half turn to the negative x-axis, then back to the positive one."""
        if r0 <= 0:
            raise ValueError(f"Initial radius must be positive: {r0}")
        t_half, state = self._crossing(0.0, (r0, 0.0), -1)
        if state[0] >= 0:
            raise IntegrationError("first crossing is not on the negative x-axis")
        state = (state[0], 0.0)
        t_full, state = self._crossing(t_half, state, 1)
        if state[0] <= 0:
            raise IntegrationError("orbit does not return to the positive x-axis")
        return float(t_full)

    def derivative(self, r0: float, h: Optional[float] = None) -> float:
        """Central difference T'(r0)."""
        h = h if h is not None else max(r0 * 1e-3, 1e-6)
        return (self.period(r0 + h) - self.period(r0 - h)) / (2 * h)

    def quadratic_coefficient(self, r0: float) -> float:
        """Richardson estimate of lim (T(r) - 2 pi) / r^2 from radii r0 and r0 / 2."""
        coarse = (self.period(r0) - 2 * math.pi) / r0 ** 2
        fine = (self.period(r0 / 2) - 2 * math.pi) / (r0 / 2) ** 2
        return (4 * fine - coarse) / 3

    def derivative_sign_changes(self, radii: Sequence[float], tol: float = 1e-9) -> List[float]:
        """Radii where T' changes sign between consecutive grid points, refined by bisection."""
        radii = sorted(radii)
        values = [self.derivative(r) for r in radii]
        roots = []
        for (a, fa), (b, fb) in zip(zip(radii, values), zip(radii[1:], values[1:])):
            if fa == 0 or fa * fb > 0:
                continue
            lo, hi, flo = a, b, fa
            while hi - lo > tol * max(1.0, hi):
                mid = 0.5 * (lo + hi)
                fm = self.derivative(mid)
                if fm * flo > 0:
                    lo, flo = mid, fm
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
        self.logger.info(f"{len(roots)} sign changes of T' on [{radii[0]:.4g}, {radii[-1]:.4g}]")
        return roots


def numeric_period(system: PolynomialField, r0: float, values: Optional[Dict[str, float]] = None,
                   config: Optional[AnalysisConfig] = None) -> float:
    return PeriodOracle(system, values, config).period(r0)


def log_grid(lo: float, hi: float, count: int) -> List[float]:
    return [float(r) for r in np.geomspace(lo, hi, count)]
