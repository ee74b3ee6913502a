# test_acceptance.py
"""
End-to-end checks across modules: both index routes on randomized instances,
calibration values, the zero-index cases, the Fock identity, the nilmanifold
oracle and gamma invariance under frame rotations.
"""

import unittest

import numpy as np

from hypoindex.chern_pairing import chern_index
from hypoindex.config import DEFAULTS
from hypoindex.contact_data import ContactInstance, GammaLoop, relevant_odd_integers
from hypoindex.field_parser import parse_field
from hypoindex.fock_rep import ModelOperatorSpec, is_rockland, model_diagonal, model_rep_matrix
from hypoindex.frame_calculus import (ComplexField, LocalPresentation, RotationField, VectorFieldExpr,
                                      bracket_span_check, gamma_residuals, grid_points, heisenberg_frame,
                                      lie_bracket, polynomial_bracket)
from hypoindex.generators import calibration_instance, circle_loop, imaginary_loop, random_trig_instance
from hypoindex.nilmanifold_oracle import NotFredholm, Truncation, analytic_index, decompose, kernel_dimensions
from hypoindex.winding_index import fredholm_index, winding_number, winding_quadrature_oracle

INSTANCES = 200
DENSE = DEFAULTS["quadrature_points"]


def random_polynomial(rng, terms=4):
    monomials = []
    for _ in range(terms):
        powers = rng.integers(0, 4, size=3)
        factors = [repr(round(float(rng.uniform(-2, 2)), 3))]
        factors += [f"{v}^{int(p)}" for v, p in zip("xyz", powers) if p]
        monomials.append("*".join(factors))
    return " + ".join(monomials)


def random_rotation(rng):
    a, b, c, d = (repr(round(float(v), 4)) for v in rng.uniform(-1, 1, 4))
    return parse_field(f"{a}*x + {b}*y*z + {c}*sin(x*y) + {d}*z^2")


class TestIndexRoutes(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        rng = np.random.default_rng(2024)
        cls.samples = [random_trig_instance(rng, label=f"random-{i}") for i in range(INSTANCES)]

    def test_routes_agree(self):
        for inst, _ in self.samples:
            report = chern_index(inst)
            self.assertEqual(report.total_rounded, fredholm_index(inst).index)
            self.assertLess(abs(report.total_real - report.total_rounded), 1e-6)

    def test_quadrature_oracle(self):
        checked = 0
        for inst, polys in self.samples:
            if checked >= 200:
                break
            for loop, poly in zip(inst.loops, polys):
                dense = poly.dense_loop(loop.name)
                for k in relevant_odd_integers(inst):
                    oracle = winding_quadrature_oracle(dense, k)
                    self.assertEqual(winding_number(loop, k), round(oracle.real))
                    self.assertLess(abs(oracle.imag), 1e-3)
                checked += 1
        self.assertGreaterEqual(checked, 200)

    def test_reversal_negates(self):
        for inst, _ in self.samples[:50]:
            reversed_inst = ContactInstance(inst.manifold_label, tuple(l.reversed() for l in inst.loops),
                                            inst.clearance)
            forward, backward = fredholm_index(inst), fredholm_index(reversed_inst)
            self.assertEqual(backward.index, -forward.index)
            self.assertEqual(backward.nonzero(), {k: -w for k, w in forward.nonzero().items()})

    def test_small_perturbations(self):
        rng = np.random.default_rng(99)
        for inst, _ in self.samples:
            radius = 0.5 * inst.clearance
            loops = []
            for loop in inst.loops:
                values = loop.values()
                shift = rng.uniform(0, 0.99 * radius, len(values)) * np.exp(2j * np.pi * rng.uniform(size=len(values)))
                loops.append(GammaLoop.from_values(loop.name, values + shift))
            moved = ContactInstance(inst.manifold_label, tuple(loops), inst.clearance)
            before, after = fredholm_index(inst), fredholm_index(moved)
            self.assertEqual(after.index, before.index)
            self.assertEqual(after.nonzero(), before.nonzero())


class TestCalibration(unittest.TestCase):

    def test_values(self):
        for center, clockwise, expected in ((1, False, 1), (3, False, 3), (1, True, -1), (3, True, -3)):
            with self.subTest(center=center, clockwise=clockwise):
                inst = ContactInstance("calibration", (circle_loop("L0", center, 0.5, 64, clockwise),))
                self.assertEqual(fredholm_index(inst).index, expected)
                self.assertEqual(chern_index(inst).total_rounded, expected)
                dense = circle_loop("L0", center, 0.5, DENSE, clockwise)
                self.assertLess(abs(winding_quadrature_oracle(dense, center) - expected // center), 1e-3)

    def test_negative_centers(self):
        self.assertEqual(fredholm_index(calibration_instance(center=-1.0)).index, -1)
        self.assertEqual(fredholm_index(calibration_instance(center=-3.0)).index, -3)


class TestZeroIndex(unittest.TestCase):

    def test_imaginary_loops(self):
        rng = np.random.default_rng(31)
        for i in range(1000):
            inst = ContactInstance("imaginary", (imaginary_loop(rng, name=f"L{i}"),))
            self.assertEqual(fredholm_index(inst).index, 0)

    def test_imaginary_loops_chern(self):
        rng = np.random.default_rng(32)
        for _ in range(50):
            inst = ContactInstance("imaginary", (imaginary_loop(rng), imaginary_loop(rng, name="L1")))
            self.assertEqual(chern_index(inst).total_rounded, 0)

    def test_empty_link(self):
        inst = ContactInstance("S3")
        self.assertEqual(fredholm_index(inst).index, 0)
        self.assertEqual(chern_index(inst).total_rounded, 0)


class TestFockIdentity(unittest.TestCase):

    def test_grid(self):
        for t in (0.5, 1.0, 2.0, 7.0):
            for gamma in (0, 2, -4, 1.5 + 0.7j):
                for opposite in (False, True):
                    spec = ModelOperatorSpec(gamma, opposite)
                    assembled = model_rep_matrix(spec, t, 64).interior()
                    closed = model_diagonal(spec, t, 64).interior()
                    tol = 1e-9 * (1 + t) * (1 + abs(gamma))
                    self.assertLess(np.max(np.abs(assembled - closed)), tol)

    def test_homogeneity(self):
        spec = ModelOperatorSpec(1.5 + 0.7j)
        unit = model_rep_matrix(spec, 1.0, 64).matrix
        for t in (0.5, 2.0, 7.0):
            np.testing.assert_allclose(model_rep_matrix(spec, t, 64).matrix, t * unit, rtol=1e-12, atol=1e-12)

    def test_rockland_boundary(self):
        for k in range(-11, 12, 2):
            self.assertFalse(is_rockland(k))
            if k > 0:
                diagonal = model_rep_matrix(ModelOperatorSpec(k), 1.0, 64).interior_diagonal()
                self.assertLess(abs(diagonal[(k - 1) // 2]), 1e-9)
        grid = [complex(x, y) for x in np.linspace(-11, 11, 20) for y in np.linspace(0.1, 2.0, 10)]
        self.assertEqual(len(grid), 200)
        self.assertTrue(all(is_rockland(g) for g in grid))


class TestNilmanifoldOracle(unittest.TestCase):

    def test_admissible_grid(self):
        axis = np.linspace(-6, 6, 10)
        for re in axis:
            for im in axis:
                self.assertEqual(analytic_index(complex(re, im)), 0)

    def test_odd_integers(self):
        for gamma in (1, 3, 5):
            verdict = analytic_index(gamma)
            self.assertIsInstance(verdict, NotFredholm)
            self.assertEqual(verdict.zero_modes, {n: n for n in range(1, 21)})

    def test_doubling(self):
        trunc = Truncation(n_max=10, q_max=20, lattice_max=10)
        for gamma in (2, -4 + 1j, 0.3j):
            self.assertEqual(kernel_dimensions(decompose(gamma, truncation=trunc)),
                             kernel_dimensions(decompose(gamma, truncation=trunc.doubled())))


class TestFrames(unittest.TestCase):

    def test_heisenberg_model(self):
        X, Y = heisenberg_frame()
        points = grid_points()
        self.assertTrue(bracket_span_check(X, Y, points))
        np.testing.assert_allclose(lie_bracket(X, Y, points), np.tile([0, 0, 1], (27, 1)), atol=1e-8)

    def test_random_rotations(self):
        rng = np.random.default_rng(5)
        X, Y = heisenberg_frame()
        zero = ComplexField.from_strings("0")
        for _ in range(50):
            gamma = ComplexField.from_strings(random_polynomial(rng, 2), random_polynomial(rng, 2))
            pres = LocalPresentation(X, Y, zero, zero, gamma, zero)
            points = rng.uniform(-1, 1, (20, 3))
            residuals = gamma_residuals(pres, RotationField(random_rotation(rng)), points)
            self.assertLess(residuals.max(), 1e-5)

    def test_polynomial_brackets(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            V = VectorFieldExpr.from_strings(*(random_polynomial(rng) for _ in range(3)))
            W = VectorFieldExpr.from_strings(*(random_polynomial(rng) for _ in range(3)))
            points = rng.uniform(-1, 1, (10, 3))
            np.testing.assert_allclose(lie_bracket(V, W, points), polynomial_bracket(V, W).evaluate(points),
                                       atol=1e-8)


if __name__ == '__main__':
    unittest.main()
