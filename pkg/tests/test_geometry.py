import math
import unittest

from src.algebra.parser import parse_poly
from src.algebra.rings import make_ring
from src.config import AnalysisConfig
from src.dynamics.systems import PlanarSystem, analysis_ring, linear_system
from src.geometry.compactify import (blow_up, chart_field, divisor_equilibria, infinite_singulars,
                                     overlap_factor)
from src.geometry.portrait import (CSV_COLUMNS, PortraitRenderer, from_chart, render_portrait,
                                   to_chart, to_disc)
from src.reproduce import CHART_FIXTURES
from src.utils.file_handling import FileHandler


def load(name):
    return FileHandler.load_system(f"{name}.sys").system


class TestCharts(unittest.TestCase):
    def test_published_chart_fields(self):
        for (name, chart), (du, dv) in CHART_FIXTURES.items():
            computed = chart_field(load(name), chart)
            self.assertEqual(computed.u_dot, parse_poly(du, computed.ring), (name, chart))
            self.assertEqual(computed.v_dot, parse_poly(dv, computed.ring), (name, chart))

    def test_chart_degree_bound(self):
        system = load("sys2-2without")
        for chart in ('U1', 'U2', 'V1', 'V2'):
            computed = chart_field(system, chart)
            self.assertLessEqual(computed.u_dot.total_degree(('u', 'v')), system.degree + 1)
            self.assertLessEqual(computed.v_dot.total_degree(('u', 'v')), system.degree + 1)

    def test_opposite_chart_sign(self):
        ring = analysis_ring(())
        x, y = ring.gens(['x', 'y'])
        quadratic = PlanarSystem(-y + x ** 2, x)
        cubic = load("sys2-2without")
        self.assertEqual(chart_field(quadratic, 'V1').u_dot, -chart_field(quadratic, 'U1').u_dot)
        self.assertEqual(chart_field(cubic, 'V2').v_dot, chart_field(cubic, 'U2').v_dot)

    def test_third_chart_is_the_plane(self):
        system = load("linear")
        computed = chart_field(system, 'U3')
        u, v = computed.ring.gens(['u', 'v'])
        self.assertEqual((computed.u_dot, computed.v_dot), (-v, u))

    def test_unknown_chart(self):
        with self.assertRaises(ValueError):
            chart_field(load("linear"), 'W1')

    def test_overlap_factor(self):
        self.assertEqual(overlap_factor(load("linear")), 0)
        system = load("sys2-2without")
        self.assertEqual(overlap_factor(system), system.degree - 1)


class TestInfiniteSingularPoints(unittest.TestCase):
    def test_equator(self):
        first = infinite_singulars(load("sys2-2without"))
        self.assertEqual(first['U1'], [])
        self.assertEqual(len(first['U2']), 1)
        self.assertEqual(first['U2'][0].jacobian, [[0.0, 0.0], [0.0, 0.0]])
        second = infinite_singulars(load("sys2-3without"))
        self.assertEqual(second['U2'], [])

    def test_symbolic_parameters_rejected(self):
        with self.assertRaises(ValueError):
            infinite_singulars(FileHandler.load_system("riccati.sys").system)


class TestBlowUp(unittest.TestCase):
    def setUp(self):
        self.ring = make_ring(('u', 'v'))
        self.u, self.v = self.ring.gens(['u', 'v'])

    def test_quadratic_node(self):
        u, v = self.u, self.v
        chain = blow_up((u ** 2 - v ** 2, 2 * u * v), 'u')
        self.assertEqual(chain.u_dot, u - u * v ** 2)
        self.assertEqual(chain.v_dot, v + v ** 3)
        self.assertEqual(chain.steps[0].cancelled, {'u': 1})
        (point,) = divisor_equilibria(chain)
        self.assertEqual(point["eigenvalues"], [1.0, 1.0])
        self.assertTrue(point["hyperbolic"])

    def test_cusp_is_degenerate(self):
        chain = blow_up((self.v, self.u ** 2), 'u')
        self.assertTrue(chain.degenerate)
        self.assertEqual(len(chain.notes), 1)

    def test_regular_point_rejected(self):
        with self.assertRaises(ValueError):
            blow_up((self.u + 1, self.v), 'u')
        with self.assertRaises(ValueError):
            blow_up((self.u ** 2, self.v ** 2), 'w')

    def test_repeated_direction(self):
        chain = blow_up((self.u ** 3, self.v ** 3), 'v', times=2)
        self.assertEqual([s.direction for s in chain.steps], ['v', 'v'])

    def test_nilpotent_point_at_infinity(self):
        chain = blow_up(chart_field(load("sys2-2without"), 'U2'), ['u', 'v'])
        points = divisor_equilibria(chain)
        self.assertEqual(sorted(round(p['u'], 9) for p in points), [-6.0, -3.0, 0.0])
        self.assertTrue(all(p["hyperbolic"] for p in points))


class TestPortrait(unittest.TestCase):
    def setUp(self):
        self.config = AnalysisConfig(portrait_time=3.0, max_workers=2)

    def test_projections(self):
        X, Y = to_disc(3.0, 4.0)
        self.assertAlmostEqual(math.hypot(X, Y), 5.0 / math.sqrt(26.0))
        self.assertEqual(from_chart('U1', *to_chart('U1', 2.0, 3.0)), (2.0, 3.0))
        with self.assertRaises(ValueError):
            to_chart('V1', 1.0, 1.0)

    def test_empty_seed_list(self):
        svg, csv_text = render_portrait(linear_system(), [], config=self.config)
        self.assertIn('<circle', svg)
        self.assertNotIn('<polyline', svg)
        self.assertEqual(csv_text, ",".join(CSV_COLUMNS) + "\n")

    def test_linear_orbits_stay_on_circles(self):
        renderer = PortraitRenderer(linear_system(), config=self.config)
        (traj,) = renderer.trajectories([(0.5, 0.0)])
        self.assertTrue(traj.ok)
        self.assertLess(traj.samples[0][0], 0.0)
        self.assertGreater(traj.samples[-1][0], 0.0)
        for _, x, y, _, _ in traj.samples:
            self.assertAlmostEqual(x * x + y * y, 0.25, places=6)

    def test_failed_seed_is_reported(self):
        svg, csv_text = render_portrait(linear_system(), [(1e6, 0.0), (0.5, 0.0)], config=self.config)
        self.assertIn('<!-- seed 0: seed outside the disc -->', svg)
        self.assertIn('id="seed-1"', svg)
        self.assertFalse(any(line.startswith("0,") for line in csv_text.splitlines()))

    def test_deterministic_output(self):
        seeds = FileHandler.load_seeds("seeds.json")[:3]
        first = render_portrait(linear_system(), seeds, config=self.config)
        second = render_portrait(linear_system(), seeds, config=self.config)
        self.assertEqual(first, second)


if __name__ == '__main__':
    unittest.main()
