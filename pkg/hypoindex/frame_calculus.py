# frame_calculus.py
"""
Local frames on a chart of a contact 3-manifold.

A frame is a pair of vector fields X, Y whose coefficients are expressions in
x, y, z (see field_parser). Lie brackets are taken numerically with central
differences plus one Richardson step; polynomial frames also get an exact
sympy bracket that serves as the test oracle.

The operator in a local presentation is
    P = -X^2 - Y^2 + i alpha X + i beta Y + i gamma Z + delta,   Z = [X, Y].
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
import scipy.linalg
import sympy

from .config import DEFAULTS
from .errors import FrameError
from .field_parser import BinOp, Call, Const, Neg, Pow, ScalarField, Var, parse_field
from .logs import log_message


def _as_points(points) -> Tuple[np.ndarray, bool]:
    """(n, 3) float array plus whether a single point was given"""
    points = np.asarray(points, dtype=float)
    single = points.ndim == 1
    points = np.atleast_2d(points)
    if points.shape[-1] != 3:
        raise FrameError(f"points must have 3 coordinates, got shape {points.shape}")
    return points, single


class VectorField:
    """Anything evaluable to a (n, 3) array of components at (n, 3) points"""

    def evaluate(self, points) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, point) -> np.ndarray:
        return self.evaluate(np.atleast_2d(np.asarray(point, dtype=float)))[0]


@dataclass(frozen=True)
class VectorFieldExpr(VectorField):
    """Components along d/dx, d/dy, d/dz"""
    components: Tuple[ScalarField, ScalarField, ScalarField]

    def __post_init__(self):
        if len(self.components) != 3:
            raise FrameError("a vector field has exactly 3 components")
        object.__setattr__(self, 'components', tuple(self.components))

    @classmethod
    def from_strings(cls, x: str, y: str, z: str):
        return cls((parse_field(x), parse_field(y), parse_field(z)))

    def evaluate(self, points) -> np.ndarray:
        points, _ = _as_points(points)
        return np.stack([c.evaluate(points) for c in self.components], axis=-1)

    def serialize(self) -> Tuple[str, str, str]:
        return tuple(c.serialize() for c in self.components)


@dataclass(frozen=True)
class NumericVectorField(VectorField):
    """Vector field given by a vectorized function of points"""
    func: Callable[[np.ndarray], np.ndarray]
    label: str = ""

    def evaluate(self, points) -> np.ndarray:
        points, _ = _as_points(points)
        return np.asarray(self.func(points), dtype=float)


@dataclass(frozen=True)
class SymbolicVectorField(VectorField):
    """Exact polynomial vector field; evaluation through sympy.lambdify"""
    components: Tuple[sympy.Expr, sympy.Expr, sympy.Expr]

    def evaluate(self, points) -> np.ndarray:
        points, _ = _as_points(points)
        x, y, z = _SYMBOLS
        columns = []
        for expr in self.components:
            values = sympy.lambdify((x, y, z), expr, 'numpy')(points[:, 0], points[:, 1], points[:, 2])
            columns.append(np.broadcast_to(np.asarray(values, dtype=float), (len(points),)))
        return np.stack(columns, axis=-1)


def heisenberg_frame() -> Tuple[VectorFieldExpr, VectorFieldExpr]:
    """X = d/dx - (y/2) d/dz,  Y = d/dy + (x/2) d/dz;  [X, Y] = d/dz"""
    return (VectorFieldExpr.from_strings("1", "0", "-y/2"),
            VectorFieldExpr.from_strings("0", "1", "x/2"))


def grid_points(n_per_axis: int = 3, half_width: Optional[float] = None) -> np.ndarray:
    """n^3 points of the cube [-w, w]^3, z varying fastest"""
    half_width = DEFAULTS['chart_half_width'] if half_width is None else half_width
    axis = np.linspace(-half_width, half_width, n_per_axis)
    xs, ys, zs = np.meshgrid(axis, axis, axis, indexing='ij')
    return np.stack([xs.ravel(), ys.ravel(), zs.ravel()], axis=-1)


# ==========================================
# NUMERICAL DIFFERENTIATION
# ==========================================

def _central_jacobian(F: VectorField, points: np.ndarray, h: float) -> np.ndarray:
    n = len(points)
    J = np.empty((n, 3, 3))
    for j in range(3):
        step = np.zeros(3)
        step[j] = h
        J[:, :, j] = (F.evaluate(points + step) - F.evaluate(points - step)) / (2 * h)
    return J


def jacobian(F: VectorField, points, h: Optional[float] = None) -> np.ndarray:
    """J[n, i, j] = dF_i/dx_j, Richardson-combined from steps h and h/2"""
    h = DEFAULTS['fd_step'] if h is None else h
    points, _ = _as_points(points)
    coarse = _central_jacobian(F, points, h)
    fine = _central_jacobian(F, points, h / 2)
    return (4 * fine - coarse) / 3


def directional_derivative(V: VectorField, W: VectorField, points, h: Optional[float] = None) -> np.ndarray:
    """(V . grad) W at each point, shape (n, 3)"""
    points, _ = _as_points(points)
    return np.einsum('nij,nj->ni', jacobian(W, points, h), V.evaluate(points))


def lie_bracket(V: VectorField, W: VectorField, p, h: Optional[float] = None) -> np.ndarray:
    """[V, W] = (V . grad) W - (W . grad) V at p (a point or an (n, 3) array)"""
    points, single = _as_points(p)
    bracket = directional_derivative(V, W, points, h) - directional_derivative(W, V, points, h)
    return bracket[0] if single else bracket


def bracket_field(V: VectorField, W: VectorField, h: Optional[float] = None) -> NumericVectorField:
    return NumericVectorField(lambda points: lie_bracket(V, W, points, h), label="[V,W]")


def span_determinants(X: VectorField, Y: VectorField, points, h: Optional[float] = None) -> np.ndarray:
    """det of the rows X(p), Y(p), [X,Y](p) at each point"""
    points, _ = _as_points(points)
    rows = np.stack([X.evaluate(points), Y.evaluate(points), lie_bracket(X, Y, points, h)], axis=1)
    return np.linalg.det(rows)


def bracket_span_check(X: VectorField, Y: VectorField, points, tol: Optional[float] = None,
                       h: Optional[float] = None) -> bool:
    """Hormander condition on the sample points: X, Y, [X,Y] span at every one"""
    tol = DEFAULTS['span_tol'] if tol is None else tol
    dets = np.abs(span_determinants(X, Y, points, h))
    spans = bool(np.all(dets > tol))
    if spans:
        log_message("INFO", "FRAMES", f"bracket condition holds on {len(dets)} point(s), min |det| {dets.min():.3g}")
    else:
        log_message("WARNING", "FRAMES", f"bracket condition fails at {int(np.sum(dets <= tol))} of {len(dets)} point(s)")
    return spans


# ==========================================
# PRESENTATIONS AND ROTATIONS
# ==========================================

@dataclass(frozen=True)
class ComplexField:
    """Complex coefficient as a pair of real expression fields"""
    re: ScalarField
    im: ScalarField = field(default_factory=lambda: ScalarField.constant(0.0))

    @classmethod
    def from_strings(cls, re: str, im: str = "0"):
        return cls(parse_field(re), parse_field(im))

    def evaluate(self, points) -> np.ndarray:
        return self.re.evaluate(points) + 1j * self.im.evaluate(points)


@dataclass(frozen=True)
class LocalPresentation:
    X: VectorFieldExpr
    Y: VectorFieldExpr
    alpha: ComplexField
    beta: ComplexField
    gamma: ComplexField
    delta: ComplexField


@dataclass(frozen=True)
class RotationField:
    """Pointwise SO(2) matrix [[cos t, sin t], [-sin t, cos t]] with t = theta(p)"""
    theta: ScalarField

    def coefficients(self, points) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        t = self.theta.evaluate(points)
        return np.cos(t), np.sin(t), -np.sin(t), np.cos(t)

    def rotate(self, X: VectorField, Y: VectorField) -> Tuple[NumericVectorField, NumericVectorField]:
        """A = aX + bY, B = cX + dY"""
        def A(points):
            a, b, _, _ = self.coefficients(points)
            return a[:, None] * X.evaluate(points) + b[:, None] * Y.evaluate(points)

        def B(points):
            _, _, c, d = self.coefficients(points)
            return c[:, None] * X.evaluate(points) + d[:, None] * Y.evaluate(points)

        return NumericVectorField(A, label="A"), NumericVectorField(B, label="B")


@dataclass(frozen=True)
class RotatedCoefficients:
    alpha: complex
    beta: complex
    gamma: complex
    delta: complex
    # max |A(x)A + B(x)B - X(x)X - Y(x)Y| at the point
    second_order_residual: float

    def to_dict(self):
        def pair(z):
            return [z.real, z.imag]
        return {
            "alpha": pair(self.alpha),
            "beta": pair(self.beta),
            "gamma": pair(self.gamma),
            "delta": pair(self.delta),
            "second_order_residual": self.second_order_residual,
        }


def rotate_presentation(pres: LocalPresentation, rot: RotationField, p,
                        h: Optional[float] = None) -> RotatedCoefficients:
    """
    Coefficients of the same operator in the frame A = aX + bY, B = cX + dY.

    Writing V^2 = V (x) V : grad^2 + ((V . grad) V) . grad, the first-order
    part of P in coordinates is
        F = -(X.grad)X - (Y.grad)Y + i alpha X + i beta Y + i gamma Z,
    and after replacing -X^2 - Y^2 by -A^2 - B^2 it becomes
        G = F + (A.grad)A + (B.grad)B,
    which is then solved against the columns A(p), B(p), C(p) with C = [A, B].
    """
    point, _ = _as_points(p)
    X, Y = pres.X, pres.Y
    A, B = rot.rotate(X, Y)

    Xp, Yp, Ap, Bp = (V.evaluate(point)[0] for V in (X, Y, A, B))
    Zp = lie_bracket(X, Y, point, h)[0]
    Cp = lie_bracket(A, B, point, h)[0]

    alpha, beta, gamma, delta = (c.evaluate(point)[0] for c in (pres.alpha, pres.beta, pres.gamma, pres.delta))
    first_order = 1j * (alpha * Xp + beta * Yp + gamma * Zp)
    correction = (directional_derivative(A, A, point, h)[0] - directional_derivative(X, X, point, h)[0]) \
        + (directional_derivative(B, B, point, h)[0] - directional_derivative(Y, Y, point, h)[0])
    G = first_order + correction

    frame = np.column_stack([Ap, Bp, Cp])
    if abs(np.linalg.det(frame)) <= DEFAULTS['span_tol']:
        raise FrameError(f"rotated frame is singular at {point[0].tolist()}")
    coefficients = scipy.linalg.solve(frame, G)

    residual = np.outer(Ap, Ap) + np.outer(Bp, Bp) - np.outer(Xp, Xp) - np.outer(Yp, Yp)
    return RotatedCoefficients(
        alpha=complex(coefficients[0] / 1j),
        beta=complex(coefficients[1] / 1j),
        gamma=complex(coefficients[2] / 1j),
        delta=complex(delta),
        second_order_residual=float(np.max(np.abs(residual))),
    )


def gamma_residuals(pres: LocalPresentation, rot: RotationField, points,
                    h: Optional[float] = None) -> np.ndarray:
    """|gamma' - gamma| at each point"""
    points, _ = _as_points(points)
    original = pres.gamma.evaluate(points)
    residuals = np.array([abs(rotate_presentation(pres, rot, p, h).gamma - g) for p, g in zip(points, original)])
    log_message("INFO", "FRAMES", f"gamma invariance on {len(points)} point(s): max residual {residuals.max():.3g}")
    return residuals


# ==========================================
# EXACT POLYNOMIAL BRACKET
# ==========================================

_SYMBOLS = sympy.symbols('x y z')

_SYMPY_FUNCTIONS = {'sin': sympy.sin, 'cos': sympy.cos, 'exp': sympy.exp}


def to_sympy(node) -> sympy.Expr:
    if isinstance(node, ScalarField):
        node = node.tree
    if isinstance(node, Const):
        return sympy.Rational(node.value)
    if isinstance(node, Var):
        return _SYMBOLS['xyz'.index(node.name)]
    if isinstance(node, Neg):
        return -to_sympy(node.operand)
    if isinstance(node, Pow):
        return to_sympy(node.base) ** node.exponent
    if isinstance(node, Call):
        return _SYMPY_FUNCTIONS[node.func](to_sympy(node.arg))

    left, right = to_sympy(node.left), to_sympy(node.right)
    if node.op == '+':
        return left + right
    if node.op == '-':
        return left - right
    if node.op == '*':
        return left * right
    return left / right


def _polynomial_components(V: VectorFieldExpr):
    components = []
    for c in V.components:
        expr = sympy.expand(to_sympy(c))
        if not expr.is_polynomial(*_SYMBOLS):
            raise FrameError(f"coefficient {c.serialize()} is not a polynomial")
        components.append(expr)
    return components


def polynomial_bracket(V: VectorFieldExpr, W: VectorFieldExpr) -> SymbolicVectorField:
    """Exact [V, W]_i = sum_j V_j d_j W_i - W_j d_j V_i for polynomial coefficients"""
    v, w = _polynomial_components(V), _polynomial_components(W)
    components = tuple(
        sympy.expand(sum(v[j] * sympy.diff(w[i], s) - w[j] * sympy.diff(v[i], s) for j, s in enumerate(_SYMBOLS)))
        for i in range(3)
    )
    return SymbolicVectorField(components)
