# fock_rep.py
"""
Representation theory of the Heisenberg group for the model operator
P_m = -X^2 - Y^2 + i gamma Z: scalar representations, truncated
Bargmann-Fock matrices for pi_t, the opposite operator, the Rockland test
and the K^1 cocycle terms of the symbol class.

Basis vectors are z^q / sqrt(q!), so creation (multiplication by z) and
annihilation (d/dz) are exact mutual adjoints with entries sqrt(q+1).
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg
from scipy.sparse import diags

from .contact_data import ComplexSample, GammaLoop, nearest_odd_distance
from .errors import FockError
from .logs import log_message
from .winding_index import discrete_winding


@dataclass(frozen=True)
class ModelOperatorSpec:
    gamma: complex
    opposite: bool = False

    def __post_init__(self):
        gamma = self.gamma.value if isinstance(self.gamma, ComplexSample) else complex(self.gamma)
        if not (math.isfinite(gamma.real) and math.isfinite(gamma.imag)):
            raise FockError("gamma must be finite")
        object.__setattr__(self, 'gamma', gamma)

    @property
    def signed_gamma(self) -> complex:
        """gamma as it enters pi_{+1}: P^op flips the sign of Z, hence of gamma"""
        return -self.gamma if self.opposite else self.gamma


@dataclass(frozen=True)
class FockTruncation:
    t: float
    N: int
    matrix: np.ndarray

    def interior(self) -> np.ndarray:
        """Rows/cols 0..N-3, the block untouched by truncation"""
        return self.matrix[:self.N - 2, :self.N - 2]

    def interior_diagonal(self) -> np.ndarray:
        return np.diag(self.interior()).copy()


@dataclass(frozen=True)
class KCocycleTerm:
    """One term [(xi^{1,0})^{q}, (2q+1-gamma)/(2q+1+gamma)] sampled along a loop"""
    q: int
    automorphism_samples: Tuple[complex, ...]
    loop_name: str = ""

    def values(self) -> np.ndarray:
        return np.array(self.automorphism_samples, dtype=complex)

    def winding(self) -> int:
        """Winding of u_q around 0"""
        return discrete_winding(self.values(), 0)


def ladder_matrices(N: int) -> Tuple[np.ndarray, np.ndarray]:
    """Truncated creation (subdiagonal sqrt(q+1)) and annihilation (its adjoint)"""
    if N < 2:
        raise FockError(f"truncation size must be at least 2, got {N}")

    creation = diags(np.sqrt(np.arange(1, N, dtype=float)), -1, shape=(N, N)).toarray().astype(complex)
    annihilation = creation.conj().T.copy()
    return creation, annihilation


def scalar_symbol(x: float, y: float) -> float:
    """pi_(x,y)(P_m) = x^2 + y^2; invertible away from the trivial representation"""
    return x * x + y * y


def _check_t(t):
    if not t > 0:
        raise FockError(f"representation parameter t must be positive, got {t}; use opposite=True for t < 0")


def model_rep_matrix(spec: ModelOperatorSpec, t: float, N: int) -> FockTruncation:
    """
    Assemble pi_t(P) = -pi_t(X)^2 - pi_t(Y)^2 + i gamma pi_t(Z) from
    pi_t(X) = i sqrt(t/2)(z + d/dz), pi_t(Y) = sqrt(t/2)(z - d/dz), pi_t(Z) = i t.
    """
    _check_t(t)
    if N < 4:
        raise FockError(f"assembled matrices need N >= 4, got {N}")

    creation, annihilation = ladder_matrices(N)
    scale = math.sqrt(t / 2.0)
    X = 1j * scale * (creation + annihilation)
    Y = scale * (creation - annihilation)
    Z = 1j * t * np.eye(N, dtype=complex)

    matrix = -(X @ X) - (Y @ Y) + 1j * spec.signed_gamma * Z
    return FockTruncation(t, N, matrix)


def model_diagonal(spec: ModelOperatorSpec, t: float, N: int) -> FockTruncation:
    """Closed form t(2q+1 -/+ gamma), the oracle for model_rep_matrix"""
    _check_t(t)
    if N < 2:
        raise FockError(f"truncation size must be at least 2, got {N}")

    q = np.arange(N)
    return FockTruncation(t, N, np.diag(t * (2 * q + 1 - spec.signed_gamma)))


def interior_spectrum(spec: ModelOperatorSpec, t: float, N: int) -> np.ndarray:
    """Eigenvalues of the interior block of the assembled matrix, ordered by real part"""
    block = model_rep_matrix(spec, t, N).interior()
    eigenvalues = scipy.linalg.eigvals(block)
    return eigenvalues[np.argsort(eigenvalues.real, kind='stable')]


def symbol_quotient(gamma, N: int) -> np.ndarray:
    """Interior block of pi_1(P) pi_1(P^op)^{-1}; diagonal (2q+1-gamma)/(2q+1+gamma)"""
    if not is_rockland(gamma):
        raise FockError(f"gamma={complex(gamma)} is an odd integer; the opposite operator is not invertible")
    direct = model_rep_matrix(ModelOperatorSpec(gamma), 1.0, N).interior()
    opposite = model_rep_matrix(ModelOperatorSpec(gamma, opposite=True), 1.0, N).interior()
    # A B^{-1} = (B^T \ A^T)^T
    return scipy.linalg.solve(opposite.T, direct.T).T


def rockland_margin(gamma) -> float:
    """min over q >= 0 of |2q+1-gamma| and |2q+1+gamma|"""
    gamma = gamma.value if isinstance(gamma, ComplexSample) else complex(gamma)
    q = np.arange(math.ceil(abs(gamma) / 2.0) + 2)
    odd = 2 * q + 1
    return float(min(np.min(np.abs(odd - gamma)), np.min(np.abs(odd + gamma))))


def is_rockland(gamma) -> bool:
    """pi_{+1}(P_m) and pi_{+1}(P_m^op) both invertible, i.e. gamma is not an odd integer"""
    return rockland_margin(gamma) > 0


def term_cutoff(max_abs: float) -> int:
    """Smallest Q with 2Q+1 > max |gamma|"""
    Q = 0
    while 2 * Q + 1 <= max_abs:
        Q += 1
    return Q


def k1_class_terms(loop: GammaLoop, q_max: Optional[int] = None) -> List[KCocycleTerm]:
    """
    Terms q = 0..Q of the K^1 symbol class along `loop`. With q_max=None, Q is
    the smallest integer with 2Q+1 > max|gamma|; beyond it every u_q is
    homotopic to the trivial automorphism. An explicit q_max overrides Q.
    """
    values = loop.values()
    if np.any(nearest_odd_distance(values) == 0):
        raise FockError(f"loop '{loop.name}' touches an odd integer")

    Q = term_cutoff(loop.max_abs()) if q_max is None else q_max
    terms = []
    for q in range(Q + 1):
        numerator = 2 * q + 1 - values
        denominator = 2 * q + 1 + values
        u = numerator / denominator
        terms.append(KCocycleTerm(q, tuple(complex(v) for v in u), loop.name))

    log_message("INFO", "FOCK", f"loop '{loop.name}': {len(terms)} K1 term(s) up to q={Q}")
    return terms
