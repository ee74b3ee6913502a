# test_field_parser.py
"""
Unit tests for the coefficient expression language.
"""

import math
import unittest

import numpy as np
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from hypoindex.errors import FieldEvaluationError, FieldSyntaxError, UnknownIdentifierError
from hypoindex.field_parser import BinOp, Call, Const, Neg, Pow, ScalarField, Var, parse_field, serialize_field

leaves = st.one_of(
    st.builds(Const, st.floats(min_value=0.0, max_value=1e6, allow_nan=False, allow_infinity=False).map(abs)),
    st.builds(Var, st.sampled_from(['x', 'y', 'z'])),
)

trees = st.recursive(
    leaves,
    lambda children: st.one_of(
        st.builds(Neg, children),
        st.builds(BinOp, st.sampled_from(['+', '-', '*', '/']), children, children),
        st.builds(Pow, children, st.integers(0, 4)),
        st.builds(Call, st.sampled_from(['sin', 'cos', 'exp']), children),
    ),
    max_leaves=12,
)


class TestParseField(unittest.TestCase):

    def test_constant(self):
        f = parse_field("2")
        self.assertEqual(f.tree, Const(2.0))
        self.assertEqual(f((0.3, -0.1, 0.9)), 2.0)

    def test_structure(self):
        f = parse_field("sin(x)*z + 3")
        expected = BinOp('+', BinOp('*', Call('sin', Var('x')), Var('z')), Const(3.0))
        self.assertEqual(f.tree, expected)
        self.assertEqual(f.node_count(), 6)
        self.assertEqual(f((1, 0, 0)), 3.0)

    def test_precedence(self):
        self.assertEqual(parse_field("1 + 2*3^2")((0, 0, 0)), 19.0)
        self.assertEqual(parse_field("8/2/2")((0, 0, 0)), 2.0)
        self.assertEqual(parse_field("1 - 2 - 3")((0, 0, 0)), -4.0)

    def test_negation_binds_to_base(self):
        # '-' base is itself a base, so the power applies to the negated value
        self.assertEqual(parse_field("-x^2").tree, parse_field("(-x)^2").tree)
        self.assertEqual(parse_field("-x^2")((3, 0, 0)), 9.0)

    def test_numbers(self):
        for text, value in (("0.5", 0.5), (".25", 0.25), ("3.", 3.0), ("1e-3", 1e-3), ("2.5E+2", 250.0)):
            with self.subTest(text=text):
                self.assertEqual(parse_field(text).tree, Const(value))

    def test_functions(self):
        point = (0.4, -1.2, 0.7)
        f = parse_field("exp(y) + cos(x*z) - sin(z)")
        self.assertAlmostEqual(f(point), math.exp(-1.2) + math.cos(0.28) - math.sin(0.7))

    def test_syntax_error_column(self):
        with self.assertRaises(FieldSyntaxError) as ctx:
            parse_field("x +* y")
        self.assertEqual(ctx.exception.column, 3)
        self.assertIn("column 3", str(ctx.exception))

    def test_malformed(self):
        for text in ("", "2x", "sin x", "(x + y", "x ^ 1.5", "x ** 2"):
            with self.subTest(text=text):
                with self.assertRaises(FieldSyntaxError):
                    parse_field(text)

    def test_unknown_identifiers(self):
        with self.assertRaises(UnknownIdentifierError) as ctx:
            parse_field("w + 1")
        self.assertEqual(ctx.exception.column, 0)
        with self.assertRaises(UnknownIdentifierError):
            parse_field("tan(x)")
        with self.assertRaises(UnknownIdentifierError):
            parse_field("x + xy")


class TestEvaluation(unittest.TestCase):

    def test_vectorized(self):
        points = np.array([[0, 0, 0], [1, 2, 3], [-1, 0.5, 2]])
        values = parse_field("x*y + z^2").evaluate(points)
        np.testing.assert_allclose(values, [0, 11, 3.5])

    def test_division_guard(self):
        f = parse_field("1/x")
        self.assertEqual(f((2, 0, 0)), 0.5)
        with self.assertRaises(FieldEvaluationError):
            f((0, 1, 1))
        with self.assertRaises(FieldEvaluationError):
            f.evaluate(np.array([[1, 0, 0], [0, 0, 0]]))

    def test_deterministic(self):
        f = parse_field("exp(sin(x*y)) / (2 + cos(z))")
        points = np.random.default_rng(0).uniform(-1, 1, (50, 3))
        np.testing.assert_array_equal(f.evaluate(points), f.evaluate(points))

    def test_constant_factory(self):
        self.assertEqual(ScalarField.constant(4)((1, 1, 1)), 4.0)


class TestRoundTrip(unittest.TestCase):

    def test_known_expressions(self):
        for text in ("sin(x)*z + 3", "-y/2", "x/2", "(x - y)^3 * exp(-z)", "1e-05 * x"):
            with self.subTest(text=text):
                f = parse_field(text)
                self.assertEqual(parse_field(serialize_field(f)), f)

    @seed(3)
    @settings(max_examples=200, deadline=None)
    @given(tree=trees)
    def test_generated_trees(self, tree):
        f = ScalarField(tree)
        self.assertEqual(parse_field(serialize_field(f)), f)


if __name__ == '__main__':
    unittest.main()
