# nilmanifold_oracle.py
"""
Analytic index of P = -X^2 - Y^2 + i gamma Z (constant gamma) on the compact
Heisenberg nilmanifold, block by block.

L^2 of the nilmanifold splits into characters (j, k) of the lattice torus,
where P acts by 4 pi^2 (j^2 + k^2), and Fock representations with parameter
t = 2 pi n for every nonzero integer n, each occurring |n| times. In fock(n)
the operator is diagonal with entries 2 pi |n| (2q + 1 -/+ gamma), the sign
flipping with the sign of n.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import DEFAULTS
from .fock_rep import rockland_margin
from .logs import log_message

NORMALIZATION_C = 2 * math.pi

SCALAR = "scalar"
FOCK = "fock"


@dataclass(frozen=True)
class Truncation:
    n_max: int = DEFAULTS['n_max']
    q_max: int = DEFAULTS['q_max']
    lattice_max: int = DEFAULTS['lattice_max']

    def __post_init__(self):
        for name in ('n_max', 'q_max', 'lattice_max'):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1, got {getattr(self, name)}")

    def doubled(self):
        return Truncation(2 * self.n_max, 2 * self.q_max, 2 * self.lattice_max)

    def to_dict(self):
        return {"n_max": self.n_max, "q_max": self.q_max, "lattice_max": self.lattice_max}


@dataclass(frozen=True)
class BlockLabel:
    kind: str
    j: int = 0
    k: int = 0
    n: int = 0

    def __str__(self):
        if self.kind == SCALAR:
            return f"scalar({self.j},{self.k})"
        return f"fock({self.n})"


@dataclass(frozen=True)
class SpectralBlock:
    label: BlockLabel
    eigenvalues: Tuple[complex, ...]
    multiplicity: int

    def zero_count(self, tol: float) -> int:
        """Zero eigenvalues of the block, counted with multiplicity"""
        return self.multiplicity * int(np.sum(np.abs(np.array(self.eigenvalues)) < tol))


@dataclass(frozen=True)
class SpectralDecomposition:
    gamma: complex
    blocks: Tuple[SpectralBlock, ...]
    truncation: Truncation
    normalization_c: float = NORMALIZATION_C

    def block(self, label: BlockLabel) -> SpectralBlock:
        for b in self.blocks:
            if b.label == label:
                return b
        raise KeyError(str(label))


@dataclass(frozen=True)
class NotFredholm:
    gamma: complex
    # signed n -> zero modes contributed by fock(n), multiplicity included
    zero_modes: Dict[int, int]

    def to_dict(self):
        return {
            "verdict": "not-fredholm",
            "gamma": [self.gamma.real, self.gamma.imag],
            "zero_modes": {str(n): m for n, m in sorted(self.zero_modes.items())},
        }


@dataclass(frozen=True)
class SweepRow:
    gamma: complex
    verdict: str
    dim_ker: int
    dim_coker: int

    def csv(self) -> str:
        gamma = complex(self.gamma)
        return f"{gamma.real!r},{gamma.imag!r},{self.verdict},{self.dim_ker},{self.dim_coker}"


def _resolve(truncation, n_max, q_max, lattice_max) -> Truncation:
    if truncation is not None:
        return truncation
    base = Truncation()
    return Truncation(
        base.n_max if n_max is None else n_max,
        base.q_max if q_max is None else q_max,
        base.lattice_max if lattice_max is None else lattice_max,
    )


def decompose(gamma, n_max: Optional[int] = None, q_max: Optional[int] = None,
              lattice_max: Optional[int] = None, truncation: Optional[Truncation] = None) -> SpectralDecomposition:
    """
    All truncated blocks: scalar (j, k) with |j|, |k| <= lattice_max in
    lexicographic order, then fock(n) for 1 <= |n| <= n_max ordered by |n|
    with the positive block first.
    """
    gamma = complex(gamma)
    trunc = _resolve(truncation, n_max, q_max, lattice_max)
    c = NORMALIZATION_C
    blocks = []

    lattice = range(-trunc.lattice_max, trunc.lattice_max + 1)
    for j in lattice:
        for k in lattice:
            value = complex(4 * math.pi ** 2 * (j * j + k * k))
            blocks.append(SpectralBlock(BlockLabel(SCALAR, j=j, k=k), (value,), 1))

    odd = 2 * np.arange(trunc.q_max + 1) + 1
    for n in range(1, trunc.n_max + 1):
        for signed, sign in ((n, -1), (-n, 1)):
            eigenvalues = c * n * (odd + sign * gamma)
            blocks.append(SpectralBlock(BlockLabel(FOCK, n=signed), tuple(complex(v) for v in eigenvalues), n))

    return SpectralDecomposition(gamma, tuple(blocks), trunc, c)


def kernel_dimensions(dec: SpectralDecomposition, tol: Optional[float] = None) -> Tuple[int, int]:
    """
    (dim ker, dim coker). The adjoint acts on each block by the conjugate
    spectrum, so both counts scan |lambda| < tol.
    """
    tol = DEFAULTS['zero_tol'] if tol is None else tol
    dim_ker = sum(b.zero_count(tol) for b in dec.blocks)
    dim_coker = sum(
        b.multiplicity * int(np.sum(np.abs(np.conj(np.array(b.eigenvalues))) < tol))
        for b in dec.blocks
    )
    return dim_ker, dim_coker


def zero_mode_table(dec: SpectralDecomposition, tol: Optional[float] = None) -> Dict[int, int]:
    tol = DEFAULTS['zero_tol'] if tol is None else tol
    table = {}
    for b in dec.blocks:
        if b.label.kind == FOCK:
            count = b.zero_count(tol)
            if count:
                table[b.label.n] = count
    return table


def analytic_index(gamma, truncation: Optional[Truncation] = None,
                   tol: Optional[float] = None) -> Union[int, NotFredholm]:
    tol = DEFAULTS['zero_tol'] if tol is None else tol
    gamma = complex(gamma)
    dec = decompose(gamma, truncation=truncation)

    if rockland_margin(gamma) > tol:
        dim_ker, dim_coker = kernel_dimensions(dec, tol)
        index = dim_ker - dim_coker
        log_message("INFO", "ORACLE", f"gamma={gamma}: ker {dim_ker}, coker {dim_coker}, index {index}")
        return index

    table = zero_mode_table(dec, tol)
    log_message("WARNING", "ORACLE", f"gamma={gamma} is an odd integer: {sum(table.values())} zero mode(s) in Fock blocks")
    return NotFredholm(gamma, table)


def sweep(gammas: Sequence[complex], truncation: Optional[Truncation] = None,
          tol: Optional[float] = None) -> List[SweepRow]:
    tol = DEFAULTS['zero_tol'] if tol is None else tol
    rows = []
    for gamma in gammas:
        gamma = complex(gamma)
        dim_ker, dim_coker = kernel_dimensions(decompose(gamma, truncation=truncation), tol)
        verdict = "fredholm" if rockland_margin(gamma) > tol else "not-fredholm"
        rows.append(SweepRow(gamma, verdict, dim_ker, dim_coker))
    log_message("INFO", "ORACLE", f"swept {len(rows)} value(s) of gamma")
    return rows
