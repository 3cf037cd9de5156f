import math
import os
import random
import unittest
from fractions import Fraction
from unittest import mock

from src.algebra.parser import parse_poly
from src.algebra.rings import make_ring
from src.config import AnalysisConfig
from src.dynamics.bifurcation import (BifurcationAnalyzer, center_point, is_definite, quadratic_form_matrix,
                                      residual_I6, restrict, verify_obstruction_poly)
from src.dynamics.conditions import center_condition, center_conditions, condition_bindings
from src.dynamics.darboux import (LinearizationCertificate, cofactor_of, combine_factors, expand_linearization,
                                  linearization_residual, search_factors, verify_certificate)
from src.dynamics.fourier import FourierPoly
from src.dynamics.linquant import (LinearizabilityComputer, linearizability_quantities, pair_scales,
                                   specialize_condition, transform_residual)
from src.dynamics.numeric import PeriodOracle, numeric_period
from src.dynamics.period import (PeriodComputer, matches_up_to_positive_constant, period_coefficients,
                                 solve_vk, to_polar)
from src.dynamics.systems import (ComplexSystem, PlanarSystem, analysis_ring, complexify,
                                  linear_system, riccati_family)
from src.errors import CertificateError, IntegrationError, SeriesCapError
from src.reproduce import RESOLVABLE_RATIO
from src.utils.file_handling import FileHandler

SLOW = bool(os.environ.get("ISOCHRON_SLOW"))


class TestSystems(unittest.TestCase):
    def setUp(self):
        self.ring = analysis_ring(('b20',))
        self.x, self.y, self.b20 = self.ring.gens(['x', 'y', 'b20'])

    def test_family_parameters(self):
        self.assertEqual(len(riccati_family().params), 8)
        self.assertEqual(len(riccati_family(a03_zero=True).params), 7)
        self.assertEqual(riccati_family().degree, 3)

    def test_linear_part_is_checked(self):
        with self.assertRaises(ValueError):
            PlanarSystem(self.y, self.x)

    def test_bind_drops_parameters(self):
        system = PlanarSystem(-self.y, self.x + self.b20 * self.x ** 2, ('b20',))
        bound = system.bind({'b20': 2})
        self.assertEqual(bound.params, ())
        self.assertEqual(bound.Q, self.x + 2 * self.x ** 2)
        self.assertIsInstance(bound, PlanarSystem)

    def test_complexified_linear_center(self):
        cs = complexify(linear_system())
        self.assertTrue(cs.X.is_zero())
        self.assertTrue(cs.Y.is_zero())

    def test_complex_system_rejects_linear_terms(self):
        ring = analysis_ring(())
        z, w = ring.gens(['z', 'w'])
        with self.assertRaises(ValueError):
            ComplexSystem(w, z ** 2)

    def test_vector_field_needs_values(self):
        system = PlanarSystem(-self.y, self.x + self.b20 * self.x ** 2, ('b20',))
        with self.assertRaises(ValueError):
            system.vector_field({})
        rhs = system.vector_field({'b20': 1.0})
        self.assertEqual(rhs(0.0, [1.0, 2.0]), [-2.0, 2.0])


class TestConditions(unittest.TestCase):
    def test_center_conditions(self):
        self.assertEqual([cc.name for cc in center_conditions()], [f"I{k}" for k in range(1, 8)])
        self.assertEqual(center_condition("I4").literature_order, 3)
        with self.assertRaises(KeyError):
            center_condition("I9")

    def test_condition_bindings_use_imaginary_unit(self):
        ring = riccati_family().ring
        bindings = condition_bindings("1", ring)
        self.assertEqual(bindings["b11"], parse_poly("2*I*b20", ring))


class TestLinearizability(unittest.TestCase):
    def setUp(self):
        self.computer = LinearizabilityComputer()
        self.fixtures = FileHandler.load_json("fixtures.json")["linearizability"]

    def test_first_pair_matches_fixture(self):
        quantities, _ = self.computer.compute(riccati_family(), 1)
        ring = quantities.i(1).ring
        self.assertEqual(quantities.i(1).primitive(), parse_poly(self.fixtures["i1"], ring).primitive())
        self.assertEqual(quantities.j(1).primitive(), parse_poly(self.fixtures["j1"], ring).primitive())

    def test_one_scale_for_every_order(self):
        s_re, s_im = pair_scales()
        self.assertGreater(s_re, 0)
        self.assertGreater(s_im, 0)
        quantities, _ = self.computer.compute(riccati_family(), 2)
        unscaled, _ = self.computer.compute(riccati_family(), 2, scales=(Fraction(1), Fraction(1)))
        self.assertEqual(quantities.i(1), quantities.i(1).primitive())
        self.assertEqual(quantities.j(1), quantities.j(1).primitive())
        for k in (1, 2):
            self.assertEqual(quantities.i(k), unscaled.i(k) * s_re)
            self.assertEqual(quantities.j(k), unscaled.j(k) * s_im)

    def test_linear_center_has_no_obstructions(self):
        quantities, transform = self.computer.compute(linear_system(), 2)
        self.assertTrue(quantities.is_zero())
        self.assertEqual(transform.order, 5)

    def test_condition_two_is_linearizable(self):
        family = riccati_family()
        system = family.bind(condition_bindings("2", family.ring), name="condition-2")
        quantities, transform = self.computer.compute(system, 2)
        self.assertTrue(quantities.is_zero())
        first, second = transform_residual(system, transform)
        self.assertTrue(first.is_zero())
        self.assertTrue(second.is_zero())

    def test_specialized_quantities_vanish(self):
        quantities, _ = linearizability_quantities(riccati_family(), 2)
        ring = quantities.i(1).ring
        specialized = specialize_condition(quantities, condition_bindings("2", ring))
        self.assertEqual(len(specialized), 4)
        self.assertTrue(all(q.is_zero() for q in specialized))

    def test_series_cap(self):
        with self.assertRaises(SeriesCapError):
            self.computer.compute(linear_system(), 11)
        with self.assertRaises(ValueError):
            self.computer.compute(linear_system(), 0)

    @unittest.skipUnless(SLOW, "set ISOCHRON_SLOW=1 for order-8 quantities")
    def test_conditions_vanish_through_order_eight(self):
        family = riccati_family()
        for name in ("1", "2", "3", "4"):
            system = family.bind(condition_bindings(name, family.ring))
            quantities, _ = self.computer.compute(system, 8)
            self.assertTrue(quantities.is_zero(), name)


class TestDarboux(unittest.TestCase):
    def setUp(self):
        self.ring = analysis_ring(())
        self.z, self.w = self.ring.gens(['z', 'w'])
        # z' = z + z^2, w' = -w
        self.system = ComplexSystem.from_equations(self.z + self.z ** 2, -self.w, (), "toy")
        one = self.ring.constant(1)
        self.cert = LinearizationCertificate([(self.z, Fraction(1)), (one + self.z, Fraction(-1))],
                                             [(self.w, Fraction(1))], "toy")

    def test_cofactor(self):
        self.assertEqual(cofactor_of(self.z, self.system), self.z + 1)
        self.assertEqual(cofactor_of(self.w, self.system), self.ring.constant(-1))
        self.assertIsNone(cofactor_of(self.z + self.w, self.system))

    def test_certificate(self):
        report = verify_certificate(self.cert, self.system)
        self.assertTrue(report.valid, report.failures)
        self.assertFalse(verify_certificate(self.cert.perturbed('z', 1), self.system).valid)

    def test_expansion_linearizes(self):
        transform = expand_linearization(self.cert, self.system, 4)
        self.assertEqual(transform.U[2], -self.z ** 2)
        first, second = linearization_residual(transform, self.system)
        self.assertTrue(first.is_zero())
        self.assertTrue(second.is_zero())

    def test_expansion_refuses_bad_certificate(self):
        with self.assertRaises(CertificateError):
            expand_linearization(self.cert.perturbed('w', 0), self.system, 3)

    def test_factor_search(self):
        factors = {d.f: d.K for d in search_factors(self.system, 1)}
        self.assertEqual(factors.get(self.z + 1), self.z)
        self.assertEqual(factors.get(self.z), self.z + 1)
        self.assertEqual(factors.get(self.w), self.ring.constant(-1))

    def test_factor_search_needs_numeric_parameters(self):
        loaded = FileHandler.load_system("sys2-1.sys")
        with self.assertRaises(ValueError):
            search_factors(loaded.system, 1)

    def certificate_factors(self, name, bindings):
        loaded = FileHandler.load_system(f"sys{name}-1.sys")
        cert = FileHandler.load_certificate(f"certificate-{name}.json", loaded.system)
        expected = []
        for f, _ in cert.z_factors + cert.w_factors:
            f = f.subs(bindings)
            if f not in expected:
                expected.append(f)
        return loaded.system.bind(bindings), expected

    def assertFactorsRecovered(self, system, expected, degree):
        found = search_factors(system, degree)
        for d in found:
            self.assertEqual(cofactor_of(d.f, system), d.K, str(d.f))
        polys = [d.f for d in found]
        for f in expected:
            self.assertIn(f, polys)
        return found

    def test_factor_search_on_condition_two(self):
        system, expected = self.certificate_factors("2", {'b11': 6})
        self.assertEqual(len(expected), 4)
        found = self.assertFactorsRecovered(system, expected, 2)
        ring = system.ring
        l1 = parse_poly("1/2*z^2*I + z*w*I + 1/2*w^2*I + z", ring)
        self.assertEqual({d.f: d.K for d in found}[l1], parse_poly("-z*I - w*I + 1", ring))
        first, second = found[0], found[1]
        product = combine_factors(first, second)
        self.assertEqual(product.f, first.f * second.f)
        self.assertEqual(cofactor_of(product.f, system), product.K)

    def test_factor_search_on_condition_four(self):
        system, expected = self.certificate_factors("4", {'b20': 16})
        self.assertEqual(len(expected), 4)
        found = self.assertFactorsRecovered(system, expected, 2)
        extra = parse_poly("12*z + 4*w + 1", system.ring)
        self.assertIn(extra, [d.f for d in found])
        self.assertIn(extra ** 2, expected)

    def test_bundled_certificates(self):
        for name in ("2", "3", "4"):
            loaded = FileHandler.load_system(f"sys{name}-1.sys")
            cert = FileHandler.load_certificate(f"certificate-{name}.json", loaded.system)
            self.assertTrue(verify_certificate(cert, loaded.system).valid, name)


class TestFourier(unittest.TestCase):
    def setUp(self):
        self.ring = make_ring(('b', 'pi'))
        self.pi = self.ring.gen('pi')

    def test_period_integrals(self):
        cos, sin = FourierPoly.cos(self.ring), FourierPoly.sin(self.ring)
        self.assertEqual((cos * cos).integral_over_period(), self.pi)
        self.assertTrue(sin.integral_over_period().is_zero())
        theta_sin = FourierPoly(self.ring, {(1, 1, 's'): self.ring.constant(1)})
        self.assertEqual(theta_sin.integral_over_period(), -2 * self.pi)

    def test_integrate_then_differentiate(self):
        f = FourierPoly.sin(self.ring) * FourierPoly.cos(self.ring, 2)
        self.assertEqual(f.integrate().derivative(), f)


class TestPeriodConstants(unittest.TestCase):
    def setUp(self):
        self.computer = PeriodComputer()
        self.fixtures = FileHandler.load_json("fixtures.json")["period"]
        ring = analysis_ring(('b20',))
        x, y, self.b20 = ring.gens(['x', 'y', 'b20'])
        self.oscillator = PlanarSystem(-y, x + self.b20 * x ** 2, ('b20',), name="oscillator")

    def test_odd_integrals_vanish_on_reversible_centers(self):
        rng = random.Random(17)
        ring = analysis_ring(())
        x, y = ring.gens(['x', 'y'])

        def coefficient():
            return Fraction(rng.randint(-5, 5), rng.randint(1, 3))

        for _ in range(8):
            # odd in y for x', even in y for y': symmetric under (x, y, t) -> (x, -y, -t)
            P = -y + coefficient() * x * y + coefficient() * y ** 3 + coefficient() * x ** 2 * y
            Q = x + coefficient() * x ** 2 + coefficient() * y ** 2 + coefficient() * x * y ** 2
            system = PlanarSystem(P, Q, name="reversible")
            polar = to_polar(system)
            integrals = self.computer.period_integrals(polar, self.computer.solve_vk(polar, 4))
            self.assertTrue(integrals[1].is_zero(), (P, Q))
            self.assertTrue(integrals[3].is_zero(), (P, Q))
            self.assertEqual(len(self.computer.compute(system, 2).p), 2)

    def test_calibration(self):
        coefficients = self.computer.compute(self.oscillator, 1)
        self.assertEqual(coefficients.p2k(1), 10 * self.b20 ** 2)

    def test_linear_center_is_isochronous(self):
        coefficients = self.computer.compute(linear_system(), 2)
        self.assertTrue(all(p.is_zero() for p in coefficients.p))
        self.assertAlmostEqual(coefficients.series_period({}, 0.3), 2 * math.pi)

    def test_first_constants_on_components(self):
        for variety in ("I2", "I6"):
            restriction = restrict(center_condition(variety))
            coefficients = self.computer.compute(restriction.system, 1, restriction.ideal)
            expected = parse_poly(self.fixtures[variety]["p2"], coefficients.p2k(1).ring)
            self.assertTrue(matches_up_to_positive_constant(coefficients.p2k(1), expected), variety)

    def test_polar_form_and_radial_series(self):
        self.assertEqual((to_polar(linear_system()).H, to_polar(linear_system()).G), ({}, {}))
        polar = to_polar(self.oscillator)
        self.assertEqual(set(polar.H), {1})
        self.assertEqual(set(polar.G), {1})
        series = solve_vk(polar, 3)
        self.assertEqual(series.order, 3)
        self.assertEqual(len(series.v), 4)
        self.assertFalse(series.v[2].is_zero())
        flat = solve_vk(to_polar(linear_system()), 3)
        self.assertTrue(all(v.is_zero() for v in flat.v[2:]))

    def test_module_level_period_coefficients(self):
        coefficients = period_coefficients(self.oscillator, 1)
        self.assertEqual(coefficients.p2k(1), 10 * self.b20 ** 2)

    def test_positive_constant_matching(self):
        ring = make_ring(('x',))
        x = ring.gen('x')
        self.assertTrue(matches_up_to_positive_constant(4 * x, x))
        self.assertFalse(matches_up_to_positive_constant(-x, x))

    def test_series_cap(self):
        with self.assertRaises(SeriesCapError):
            self.computer.compute(linear_system(), 11)

    def test_series_agrees_with_integration(self):
        coefficients = self.computer.compute(self.oscillator, 1)
        r0 = 0.05
        numeric = numeric_period(self.oscillator, r0, {'b20': 1.0})
        self.assertAlmostEqual(coefficients.series_period({'b20': 1.0}, r0), numeric, delta=1e-4)
        self.assertGreater(numeric, 2 * math.pi)

    @unittest.skipUnless(SLOW, "set ISOCHRON_SLOW=1 for order-6 constants")
    def test_third_constant_on_I6(self):
        restriction = restrict(center_condition("I6"))
        coefficients = self.computer.compute(restriction.system, 3)
        expected = parse_poly(self.fixtures["I6"]["p6"], coefficients.p2k(3).ring)
        self.assertTrue(matches_up_to_positive_constant(coefficients.p2k(3), expected))


class TestNumericPeriod(unittest.TestCase):
    def test_linear_period(self):
        self.assertAlmostEqual(numeric_period(linear_system(), 0.5), 2 * math.pi, places=7)

    def test_isochronous_system(self):
        system = FileHandler.load_system("sys2-2without.sys").system
        for r0 in (0.1, 0.4):
            self.assertAlmostEqual(numeric_period(system, r0), 2 * math.pi, places=6)

    def test_radius_must_be_positive(self):
        with self.assertRaises(ValueError):
            PeriodOracle(linear_system()).period(0.0)


class TestBifurcation(unittest.TestCase):
    def setUp(self):
        self.analyzer = BifurcationAnalyzer()
        self.ring = make_ring(('a', 'b'))
        self.a, self.b = self.ring.gens(['a', 'b'])

    def test_definite_forms(self):
        a, b = self.a, self.b
        self.assertTrue(is_definite(a ** 2 + b ** 2))
        self.assertTrue(is_definite(-a ** 2 + a * b - b ** 2))
        self.assertFalse(is_definite(a ** 2 - b ** 2))
        self.assertIsNone(quadratic_form_matrix(a ** 3 + b ** 2))

    def test_restriction_binds_linear_generators(self):
        restriction = restrict(center_condition("I6"))
        self.assertIsNone(restriction.ideal)
        self.assertEqual(set(restriction.system.free_parameters()), {'a02', 'b20', 'b30'})

    def test_point_variety_is_isochronous(self):
        report = self.analyzer.weak_center_order(center_condition("I7"), 1)
        self.assertEqual(report.order, "isochronous")
        self.assertEqual(report.free_parameters, ())

    def test_definite_first_constant(self):
        report = self.analyzer.weak_center_order(center_condition("I2"), 1)
        self.assertEqual(report.order, 0)
        self.assertEqual(report.critical_period_count, 0)

    def test_jacobian_rank(self):
        rank = BifurcationAnalyzer.jacobian_rank([self.a, self.a * 2], ('a', 'b'), {'a': 1.0, 'b': 1.0})
        self.assertEqual(rank, 1)

    def test_search_on_order_zero(self):
        report = self.analyzer.weak_center_order(center_condition("I2"), 1)
        result = self.analyzer.alternating_sign_search(center_condition("I2"), report)
        self.assertIsNone(result.point)

    def test_default_sign_ratio(self):
        self.assertEqual(AnalysisConfig().sign_ratio, 1e-3)
        with self.assertRaises(ValueError):
            AnalysisConfig(sign_ratio=1.0)

    def test_kukles_varieties_are_spot_checked(self):
        for name, order in (("I4", 3), ("I5", 2)):
            report = self.analyzer.weak_center_order(center_condition(name), 3)
            self.assertEqual(report.order, order, name)
            self.assertTrue(report.passed, report.notes)
            (check,) = report.spot_checks
            self.assertTrue(check["agrees"], check)
            self.assertNotAlmostEqual(check["numeric"], 2 * math.pi, places=9)
            self.assertTrue(report.to_dict()["passed"])

    def test_sample_point_lies_on_I5(self):
        restriction = restrict(center_condition("I5"))
        self.assertTrue(restriction.leftover)
        point = center_point(restriction)
        self.assertIsNotNone(point)
        for g in restriction.leftover:
            self.assertEqual(g.evaluate({v: point[v] for v in g.variables()}), 0)

    def test_kukles_mismatch_fails_the_report(self):
        zero = riccati_family(a03_zero=True).ring.poly()
        with mock.patch.object(BifurcationAnalyzer, "kukles_p2", return_value=zero):
            report = self.analyzer.weak_center_order(center_condition("I4"), 3)
        self.assertFalse(report.passed)
        self.assertIn("p2 on the reduced Kukles family differs", report.notes)
        self.assertFalse(report.to_dict()["passed"])

    def test_failed_integration_fails_the_spot_check(self):
        with mock.patch("src.dynamics.bifurcation.numeric_period", side_effect=IntegrationError("escaped")):
            report = self.analyzer.weak_center_order(center_condition("I4"), 3)
        self.assertFalse(report.passed)
        self.assertFalse(report.spot_checks[0]["agrees"])

    @unittest.skipUnless(SLOW, "set ISOCHRON_SLOW=1 for the I6 sign search")
    def test_sign_search_on_I6(self):
        cc = center_condition("I6")
        report = self.analyzer.weak_center_order(cc, 3)
        result = self.analyzer.alternating_sign_search(cc, report, ratio=RESOLVABLE_RATIO)
        self.assertEqual(len(result.critical_radii), 2)
        self.assertEqual(len(result.signs), report.order + 1)
        self.assertTrue(all(a == -b for a, b in zip(result.signs, result.signs[1:])))
        self.assertTrue(all(r > 0 for r in result.critical_radii))

    def test_sign_ratio_override_is_checked(self):
        report = self.analyzer.weak_center_order(center_condition("I2"), 1)
        with self.assertRaises(ValueError):
            self.analyzer.alternating_sign_search(center_condition("I2"), report, ratio=2.0)

    def test_obstruction_polynomial_is_defined_on_I1_only(self):
        with self.assertRaises(ValueError):
            verify_obstruction_poly(center_condition("I2"))

    @unittest.skipUnless(SLOW, "set ISOCHRON_SLOW=1 for the degree-10 obstruction")
    def test_obstruction_polynomial(self):
        obstruction = verify_obstruction_poly(center_condition("I1"))
        self.assertEqual(obstruction.total_degree(('a02', 'b11')), 10)
        lead = obstruction.coefficient({'a02': 10}).constant_coefficient()
        tail = obstruction.coefficient({'b11': 10}).constant_coefficient()
        self.assertEqual(lead * 125, tail * -128966505300)

    @unittest.skipUnless(SLOW, "set ISOCHRON_SLOW=1 for the I6 elimination chain")
    def test_weak_center_I6(self):
        fixture = FileHandler.load_json("fixtures.json")["period"]["I6"]
        report = self.analyzer.weak_center_order(center_condition("I6"), 3)
        self.assertEqual(report.order, fixture["order"])
        self.assertEqual(report.rank, fixture["rank"])
        x, y = residual_I6()
        expected = fixture["residual"]
        self.assertEqual(x * expected[1], y * expected[0])
        self.assertGreater(x * y, 0)


if __name__ == '__main__':
    unittest.main()
