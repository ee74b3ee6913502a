# test_winding_index.py
"""
Unit tests for the winding_index module.
Test cases include the discrete winding primitive, the index table and the
quadrature oracle.
"""

import unittest

import numpy as np
from hypothesis import assume, given, seed, settings
from hypothesis import strategies as st

from hypoindex.config import DEFAULTS
from hypoindex.contact_data import ContactInstance, GammaLoop
from hypoindex.errors import AmbiguousWindingError, WindingError
from hypoindex.generators import TrigPolynomial, calibration_instance, circle_loop, random_trig_polynomial
from hypoindex.winding_index import (discrete_winding, fredholm_index, winding_number,
                                     winding_quadrature_oracle)


def circle(center, radius, n=64, clockwise=False):
    return circle_loop("L0", center, radius, n, clockwise).values()


class TestDiscreteWinding(unittest.TestCase):

    def test_circle_around_target(self):
        self.assertEqual(discrete_winding(circle(0, 1), 0), 1)
        self.assertEqual(discrete_winding(circle(0, 1, clockwise=True), 0), -1)
        self.assertEqual(discrete_winding(circle(0, 1), 3), 0)

    def test_double_cover(self):
        s = np.arange(128) / 128
        self.assertEqual(discrete_winding(np.exp(4j * np.pi * s), 0), 2)

    def test_sample_on_target(self):
        with self.assertRaises(WindingError):
            discrete_winding([1, 1j, -1, -1j], 1)

    def test_ambiguous_step(self):
        with self.assertRaises(AmbiguousWindingError):
            discrete_winding([1, -1, 1j], 0)

    def test_error_names_loop(self):
        loop = GammaLoop.from_values("left", [1, 1j, -1, -1j])
        with self.assertRaises(WindingError) as ctx:
            winding_number(loop, 1)
        self.assertIn("loop 'left', k=1", str(ctx.exception))
        self.assertEqual(ctx.exception.loop, "left")

    @seed(7)
    @settings(max_examples=200, deadline=None)
    @given(center=st.floats(-5, 5), radius=st.floats(0.2, 3.0), k=st.sampled_from([-5, -3, -1, 1, 3, 5]))
    def test_circles(self, center, radius, k):
        assume(abs(abs(center - k) - radius) > 0.05)
        expected = 1 if abs(center - k) < radius else 0
        self.assertEqual(discrete_winding(circle(center, radius, n=256), k), expected)


class TestFredholmIndex(unittest.TestCase):

    def test_empty_link(self):
        table = fredholm_index(ContactInstance("S3"))
        self.assertEqual(table.index, 0)
        self.assertEqual(table.entries, {})

    def test_calibration(self):
        table = fredholm_index(calibration_instance())
        self.assertEqual(table.entries, {-1: 0, 1: 1})
        self.assertEqual(table.nonzero(), {1: 1})
        self.assertEqual(table.index, 1)

    def test_center_three(self):
        table = fredholm_index(calibration_instance(center=3.0))
        self.assertEqual(table.nonzero(), {3: 1})
        self.assertEqual(table.index, 3)

    def test_reversed_orientation(self):
        for center, expected in ((1.0, -1), (3.0, -3), (-1.0, 1)):
            inst = calibration_instance(center=center)
            reversed_inst = ContactInstance(inst.manifold_label, tuple(l.reversed() for l in inst.loops))
            with self.subTest(center=center):
                self.assertEqual(fredholm_index(reversed_inst).index, expected)

    def test_components_add(self):
        loops = (circle_loop("A", 1, 0.5, 64), circle_loop("B", 3, 0.5, 64), circle_loop("C", -3, 0.5, 64, True))
        table = fredholm_index(ContactInstance("S3", loops))
        self.assertEqual(table.nonzero(), {-3: -1, 1: 1, 3: 1})
        self.assertEqual(table.index, 1 + 3 + 3)

    def test_workers_match_serial(self):
        rng = np.random.default_rng(3)
        loops = tuple(random_trig_polynomial(rng).loop(f"L{i}", 512) for i in range(3))
        inst = ContactInstance("S3", loops)
        try:
            serial = fredholm_index(inst, workers=1)
        except WindingError:
            self.skipTest("random loop touched an odd integer")
        self.assertEqual(fredholm_index(inst, workers=4), serial)

    def test_to_dict(self):
        payload = fredholm_index(calibration_instance()).to_dict()
        self.assertEqual(payload, {"index": 1, "windings": {"-1": 0, "1": 1}})


class TestQuadratureOracle(unittest.TestCase):

    def test_calibration_circle(self):
        dense = circle_loop("L0", 1, 0.5, 10000)
        value = winding_quadrature_oracle(dense, 1)
        self.assertLess(abs(value - 1), 1e-3)
        self.assertLess(abs(winding_quadrature_oracle(dense, -1)), 1e-3)

    def test_ellipse_two_resolutions(self):
        def ellipse(n):
            theta = 2 * np.pi * np.arange(n) / n
            return GammaLoop.from_values("E", 1 + 2 * np.cos(theta) + 0.3j * np.sin(theta))

        coarse = winding_quadrature_oracle(ellipse(1000), 1)
        fine = winding_quadrature_oracle(ellipse(10000), 1)
        self.assertLess(abs(fine - 1), 1e-3)
        self.assertLess(abs(coarse - fine), 1e-3)

    def test_random_trig_loop(self):
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 10:
            poly = random_trig_polynomial(rng)
            values = poly.sample(4096)
            if np.min(np.abs(values - 1)) < 0.2:
                continue
            expected = round(winding_quadrature_oracle(poly.dense_loop("L"), 1).real)
            self.assertEqual(discrete_winding(values, 1), expected)
            checked += 1

    def test_sample_on_target(self):
        with self.assertRaises(WindingError):
            winding_quadrature_oracle(GammaLoop.from_values("L", [1, 2, 3j]), 1)

    def test_trig_polynomial_degree(self):
        self.assertEqual(TrigPolynomial({0: 1, -3: 1, 2: 1}).degree(), 3)

    def test_dense_loop_resolution(self):
        poly = TrigPolynomial({0: 1, 1: 0.5})
        self.assertEqual(len(poly.dense_loop("L").samples), DEFAULTS["quadrature_points"])
        self.assertEqual(len(poly.dense_loop("L", 500).samples), 500)


if __name__ == '__main__':
    unittest.main()
