"""Numeric phase portraits on the Poincare disc, written as SVG and CSV."""

import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from ..config import AnalysisConfig
from ..dynamics.systems import PolynomialField

logger = logging.getLogger(__name__)

CSV_COLUMNS = ('seed_index', 't', 'x', 'y', 'X_disc', 'Y_disc')
DISC_LIMIT = 0.999


def to_disc(x: float, y: float) -> Tuple[float, float]:
    """Central projection of the plane onto the open unit disc."""
    scale = 1.0 / math.sqrt(1.0 + x * x + y * y)
    return x * scale, y * scale


def to_chart(chart: str, x: float, y: float) -> Tuple[float, float]:
    """Plane point in the coordinates of chart U1, U2 or U3."""
    if chart == 'U1':
        return y / x, 1.0 / x
    if chart == 'U2':
        return x / y, 1.0 / y
    if chart == 'U3':
        return x, y
    raise ValueError(f"No plane coordinates for chart {chart}")


def from_chart(chart: str, u: float, v: float) -> Tuple[float, float]:
    if chart == 'U1':
        return 1.0 / v, u / v
    if chart == 'U2':
        return u / v, 1.0 / v
    if chart == 'U3':
        return u, v
    raise ValueError(f"No plane coordinates for chart {chart}")


@dataclass
class Trajectory:
    seed_index: int
    seed: Tuple[float, float]
    samples: List[Tuple[float, float, float, float, float]] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


class PortraitRenderer:
    """Integrates seeds of a numeric planar field in rescaled time and draws them on the disc."""

    def __init__(self, system: PolynomialField, values: Optional[Dict[str, float]] = None,
                 config: Optional[AnalysisConfig] = None):
        self.config = config or AnalysisConfig()
        self.logger = logging.getLogger(__name__)
        self.system = system
        self.rhs = system.vector_field(values)
        self.exponent = (system.degree - 1) / 2

    def _rescaled(self, t, state):
        dx, dy = self.rhs(t, state)
        factor = (1.0 + state[0] ** 2 + state[1] ** 2) ** self.exponent
        return [dx / factor, dy / factor]

    def _integrate(self, seed: Tuple[float, float], span: float) -> np.ndarray:
        def leaves_disc(t, s):
            X, Y = to_disc(s[0], s[1])
            return DISC_LIMIT - math.hypot(X, Y)
        leaves_disc.terminal = True
        result = solve_ivp(self._rescaled, (0.0, span), list(seed), method='DOP853', events=(leaves_disc,),
                           rtol=self.config.rtol, atol=self.config.atol, dense_output=False, max_step=0.05)
        if result.status == -1:
            raise RuntimeError(result.message)
        return np.vstack([result.t, result.y])

    def trajectory(self, index: int, seed: Sequence[float]) -> Trajectory:
        seed = (float(seed[0]), float(seed[1]))
        traj = Trajectory(index, seed)
        if math.hypot(*to_disc(*seed)) >= DISC_LIMIT:
            traj.error = "seed outside the disc"
            return traj
        try:
            backward = self._integrate(seed, -self.config.portrait_time)
            forward = self._integrate(seed, self.config.portrait_time)
        except Exception as e:
            self.logger.warning(f"Seed {index} at {seed}: integration failed: {e}")
            traj.error = str(e)
            return traj
        columns = np.hstack([backward[:, :0:-1], forward])
        for t, x, y in columns.T:
            X, Y = to_disc(x, y)
            traj.samples.append((float(t), float(x), float(y), X, Y))
        return traj

    def trajectories(self, seeds: Sequence[Sequence[float]]) -> List[Trajectory]:
        """All seeds in parallel; the result follows seed order."""
        with ThreadPoolExecutor(max_workers=self.config.max_workers) as executor:
            futures = [executor.submit(self.trajectory, i, seed) for i, seed in enumerate(seeds)]
            results = [future.result() for future in futures]
        failed = sum(1 for r in results if not r.ok)
        self.logger.info(f"Integrated {len(results) - failed} of {len(results)} seeds")
        if failed:
            self.logger.warning(f"Failed seeds: {failed}")
        return results

    def svg(self, trajectories: Sequence[Trajectory]) -> str:
        size, radius = self.config.svg_size, self.config.svg_radius
        center = size / 2
        stride = max(1, self.config.svg_stride)
        lines = [
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
            f'  <!-- {self.system.name or "system"} -->',
            f'  <circle cx="{center:.2f}" cy="{center:.2f}" r="{radius:.2f}" fill="none" stroke="black" stroke-width="2"/>',
        ]
        for traj in trajectories:
            if not traj.ok:
                lines.append(f'  <!-- seed {traj.seed_index}: {traj.error} -->')
                continue
            picked = traj.samples[::stride]
            if traj.samples and picked[-1] is not traj.samples[-1]:
                picked.append(traj.samples[-1])
            points = " ".join(f"{center + radius * X:.2f},{center - radius * Y:.2f}" for _, _, _, X, Y in picked)
            lines.append(f'  <polyline id="seed-{traj.seed_index}" points="{points}" fill="none" '
                         f'stroke="steelblue" stroke-width="1"/>')
        lines.append('</svg>')
        return "\n".join(lines) + "\n"

    @staticmethod
    def csv(trajectories: Sequence[Trajectory]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for traj in trajectories:
            for t, x, y, X, Y in traj.samples:
                writer.writerow([traj.seed_index] + [f"{value:.10g}" for value in (t, x, y, X, Y)])
        return buffer.getvalue()


def render_portrait(system: PolynomialField, seeds: Sequence[Sequence[float]],
                    values: Optional[Dict[str, float]] = None,
                    config: Optional[AnalysisConfig] = None) -> Tuple[str, str]:
    """(SVG text, CSV text) for the seeds, integrated forward and backward."""
    renderer = PortraitRenderer(system, values, config)
    trajectories = renderer.trajectories(seeds)
    return renderer.svg(trajectories), renderer.csv(trajectories)
