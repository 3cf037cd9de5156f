import random
import unittest
from fractions import Fraction

import sympy

from src.algebra.bridge import from_sympy, to_sympy
from src.algebra.groebner import GroebnerSolver, Ideal, normal_form
from src.algebra.modular import ModularGroebner, rat_reconstruct, verify_decomposition
from src.algebra.parser import parse_poly, render
from src.algebra.poly import divide, exact_divide, monomial_content, resultant
from src.algebra.rings import IMAGINARY_UNIT, TermOrder, make_ring
from src.config import AnalysisConfig
from src.errors import (GroebnerLimitError, PolynomialSyntaxError, UnknownVariableError,
                        UnluckyPrimeError)


class TestPolynomials(unittest.TestCase):
    def setUp(self):
        self.ring = make_ring(('x', 'y'))
        self.x, self.y = self.ring.gens(['x', 'y'])

    def test_arithmetic(self):
        x, y = self.x, self.y
        self.assertEqual((x + y) ** 2, x ** 2 + 2 * x * y + y ** 2)
        self.assertTrue((x - x).is_zero())
        self.assertEqual((x * y - 1).constant_coefficient(), -1)

    def test_degrees_and_components(self):
        f = self.x ** 3 * self.y + self.x * self.y + 5
        self.assertEqual(f.degree(), 4)
        self.assertEqual(f.degree('y'), 1)
        self.assertEqual(f.total_degree(('x',)), 3)
        components = f.homogeneous_components(('x', 'y'))
        self.assertEqual(sorted(components), [0, 2, 4])
        self.assertEqual(f.truncate(2, ('x', 'y')), self.x * self.y + 5)
        self.assertEqual(f.coefficient({'x': 3}), self.y)

    def test_diff_and_subs(self):
        x, y = self.x, self.y
        self.assertEqual((x ** 3 * y).diff('x'), 3 * x ** 2 * y)
        self.assertEqual((x ** 2 + y).subs({'x': y + 1}), y ** 2 + 3 * y + 1)
        self.assertEqual((x ** 2 + y).subs({'x': 2}), y + 4)

    def test_evaluate_exact(self):
        f = self.x ** 2 + 1
        self.assertEqual(f.evaluate({'x': Fraction(1, 2)}), Fraction(5, 4))

    def test_primitive_keeps_sign(self):
        x = self.x
        self.assertEqual((6 * x + 4).primitive(), 3 * x + 2)
        self.assertEqual((Fraction(1, 2) * x - Fraction(1, 3)).primitive(), 3 * x - 2)
        self.assertEqual((-4 * x).primitive(), -x)

    def test_division(self):
        x, y = self.x, self.y
        q, r = divide(x ** 2 - y ** 2, x - y)
        self.assertEqual(q, x + y)
        self.assertTrue(r.is_zero())
        with self.assertRaises(ValueError):
            exact_divide(x ** 2 + 1, x)

    def test_monomial_content(self):
        f = self.x ** 2 * self.y + self.x ** 3 * self.y ** 2
        self.assertEqual(monomial_content(f, ('x', 'y')), {'x': 2, 'y': 1})

    def test_resultant(self):
        x, y = self.x, self.y
        self.assertEqual(resultant(x ** 2 - y, x - 1, 'x'), 1 - y)

    def test_reduce_mod_p(self):
        image = (Fraction(1, 2) * self.x).reduce_mod_p(7)
        (c,) = image.terms.values()
        self.assertEqual(int(c) % 7, 4)
        with self.assertRaises(UnluckyPrimeError):
            (self.x / 7).reduce_mod_p(7)

    def test_imaginary_unit(self):
        ring = make_ring(('x', 'I'), extensions=(IMAGINARY_UNIT,))
        x, i = ring.gens(['x', 'I'])
        self.assertEqual(i * i, ring.constant(-1))
        self.assertEqual((x + i).evaluate({'x': 1}), 1 + 1j)

    def random_poly(self, rng, terms=4, degree=3):
        x, y = self.x, self.y
        f = self.ring.poly()
        for _ in range(terms):
            a, b = rng.randint(0, degree), rng.randint(0, degree)
            f = f + Fraction(rng.randint(-9, 9), rng.randint(1, 5)) * x ** a * y ** b
        return f

    def test_random_identities(self):
        rng = random.Random(2024)
        zero, one = self.ring.poly(), self.ring.constant(1)
        for _ in range(1000):
            f, g, h = (self.random_poly(rng, terms=3, degree=2) for _ in range(3))
            self.assertEqual(f + g, g + f)
            self.assertEqual(f * g, g * f)
            self.assertEqual((f + g) + h, f + (g + h))
            self.assertEqual((f * g) * h, f * (g * h))
            self.assertEqual(f * (g + h), f * g + f * h)
            self.assertEqual(f + zero, f)
            self.assertEqual(f * one, f)
            self.assertTrue((f + (-f)).is_zero())
            self.assertEqual((f * g).diff('x'), f.diff('x') * g + f * g.diff('x'))
            if not g.is_zero():
                self.assertEqual(exact_divide(f * g, g), f)

    def test_sympy_bridge(self):
        X, Y = sympy.symbols('x y')
        self.assertEqual(from_sympy((X + Y) ** 2, self.ring), (self.x + self.y) ** 2)
        self.assertEqual(sympy.expand(to_sympy(self.x * self.y - 1) - (X * Y - 1)), 0)


class TestParser(unittest.TestCase):
    def setUp(self):
        self.ring = make_ring(('x', 'y'))

    def test_canonical_rendering(self):
        self.assertEqual(render(parse_poly("y^2 - 2*x*y + x^2", self.ring)), "x^2 - 2*x*y + y^2")
        self.assertEqual(str(parse_poly("-3 + 1/2*x", self.ring)), "1/2*x - 3")
        self.assertEqual(str(parse_poly("2/4*x", self.ring)), "1/2*x")

    def test_parentheses_and_unary_minus(self):
        f = parse_poly("-(x - y)^2", self.ring)
        x, y = self.ring.gens(['x', 'y'])
        self.assertEqual(f, -(x - y) ** 2)

    def test_render_then_parse(self):
        rng = random.Random(7)
        ring = make_ring(('x', 'y', 'z'))
        x, y, z = ring.gens(['x', 'y', 'z'])
        for _ in range(300):
            f = ring.poly()
            for _ in range(rng.randint(0, 5)):
                c = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
                f = f + c * x ** rng.randint(0, 4) * y ** rng.randint(0, 3) * z ** rng.randint(0, 2)
            text = render(f)
            self.assertEqual(parse_poly(text, ring), f, text)
            self.assertEqual(render(parse_poly(text, ring)), text)

    def test_missing_operator(self):
        with self.assertRaises(PolynomialSyntaxError) as cm:
            parse_poly("2x", self.ring)
        self.assertEqual(cm.exception.offset, 1)

    def test_unknown_variable(self):
        with self.assertRaises(UnknownVariableError) as cm:
            parse_poly("x + q", self.ring)
        self.assertEqual(cm.exception.offset, 4)

    def test_bad_exponent_and_empty_input(self):
        with self.assertRaises(PolynomialSyntaxError):
            parse_poly("x^-1", self.ring)
        with self.assertRaises(PolynomialSyntaxError):
            parse_poly("", self.ring)
        with self.assertRaises(PolynomialSyntaxError):
            parse_poly("1/0*x", self.ring)


class TestGroebner(unittest.TestCase):
    def setUp(self):
        self.solver = GroebnerSolver()
        self.ring = make_ring(('x', 'y'), order=TermOrder('lex'))
        self.x, self.y = self.ring.gens(['x', 'y'])

    def test_reduced_basis(self):
        x, y = self.x, self.y
        basis = self.solver.buchberger(Ideal([x ** 2 + y ** 2 - 1, x - y]))
        self.assertEqual(set(basis.basis), {x - y, y ** 2 - Fraction(1, 2)})

    def test_unit_ideal(self):
        basis = self.solver.buchberger(Ideal([self.x, self.x - 1]))
        self.assertTrue(basis.is_unit())

    def test_normal_form(self):
        x, y = self.x, self.y
        self.assertEqual(normal_form(x ** 2, [x - y]), y ** 2)

    def test_radical_membership(self):
        ideal = Ideal([self.x ** 2])
        self.assertTrue(self.solver.radical_membership(self.x, ideal))
        self.assertFalse(self.solver.radical_membership(self.y, ideal))

    def test_intersection(self):
        x, y = self.x, self.y
        meet = self.solver.ideal_intersect(Ideal([x]), Ideal([y]))
        basis = self.solver.buchberger(meet)
        self.assertTrue(basis.contains(x * y))
        self.assertFalse(basis.contains(x))

    def test_elimination(self):
        ring = make_ring(('t', 'x', 'y'))
        t, x, y = ring.gens(['t', 'x', 'y'])
        eliminated = self.solver.eliminate(Ideal([x - t ** 2, y - t ** 3]), ['t'])
        basis = self.solver.buchberger(eliminated)
        self.assertTrue(basis.contains(x ** 3 - y ** 2))
        self.assertTrue(all(g.degree('t') <= 0 for g in eliminated.generators))

    def test_basis_ignores_generator_order(self):
        rng = random.Random(11)
        x, y = self.x, self.y
        monomials = [x ** 2, x * y, y ** 2, x, y, self.ring.constant(1)]
        for _ in range(12):
            generators = []
            for _ in range(2):
                f = self.ring.poly()
                for m in monomials:
                    f = f + rng.randint(-3, 3) * m
                if not f.is_zero():
                    generators.append(f)
            if not generators:
                continue
            expected = set(self.solver.buchberger(Ideal(generators, self.ring)).basis)
            shuffled = list(generators)
            rng.shuffle(shuffled)
            for order in (generators[::-1], shuffled):
                self.assertEqual(set(self.solver.buchberger(Ideal(order, self.ring)).basis), expected)

    def test_coefficient_limit(self):
        ring = make_ring(('x', 'y'))
        x, y = ring.gens(['x', 'y'])
        solver = GroebnerSolver(AnalysisConfig(max_coeff_bits=1))
        with self.assertRaises(GroebnerLimitError):
            solver.buchberger(Ideal([x ** 2 + 3 * y, x * y + 5]))


class TestModular(unittest.TestCase):
    def setUp(self):
        self.ring = make_ring(('x', 'y'), order=TermOrder('lex'))
        self.x, self.y = self.ring.gens(['x', 'y'])

    def test_rational_reconstruction(self):
        self.assertEqual(rat_reconstruct(51, 101), sympy.QQ(1, 2))
        self.assertIsNone(rat_reconstruct(4, 7))

    def test_random_rational_reconstruction(self):
        rng = random.Random(32452843)
        p = 32452843
        for _ in range(500):
            q = Fraction(rng.randint(-999, 999), rng.randint(1, 999))
            residue = q.numerator * pow(q.denominator, -1, p) % p
            self.assertEqual(rat_reconstruct(residue, p), sympy.QQ(q.numerator, q.denominator), q)

    def test_modular_basis_matches_rational_basis(self):
        x, y = self.x, self.y
        ideal = Ideal([x ** 2 + y ** 2 - 1, x - y])
        basis = ModularGroebner().modular_gb(ideal)
        self.assertEqual(set(basis.basis), {x - y, y ** 2 - Fraction(1, 2)})

    def test_decomposition_passes(self):
        x, y = self.x, self.y
        report = verify_decomposition(Ideal([x * y]), [Ideal([x]), Ideal([y])], "Q")
        self.assertTrue(report.passed())
        report = verify_decomposition(Ideal([x * y]), [Ideal([x]), Ideal([y])], 101)
        self.assertTrue(report.passed())
        self.assertEqual(report.fields, ["F_101"])

    def test_missing_component_fails_backward(self):
        x, y = self.x, self.y
        report = verify_decomposition(Ideal([x * y]), [Ideal([x])], "Q")
        self.assertEqual(report.forward, [True])
        self.assertEqual(report.backward, [False])
        self.assertFalse(report.passed())


if __name__ == '__main__':
    unittest.main()
