# generators.py
"""
Instance builders: trigonometric gamma loops sampled through the inverse FFT,
the calibration instance, and seeded random instances for sweeps.
"""

import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from .config import DEFAULTS
from .contact_data import ContactInstance, GammaLoop, nearest_odd_distance
from .logs import log_message

CALIBRATION_SAMPLES = 64
RANDOM_SAMPLES = 256
# dense resampling factor for the clearance test of the smooth curve
DENSE_FACTOR = 8


@dataclass(frozen=True)
class TrigPolynomial:
    """gamma(s) = sum_m c_m e^{2 pi i m s}, s in [0, 1)"""
    coefficients: Dict[int, complex]

    def degree(self) -> int:
        return max((abs(m) for m in self.coefficients), default=0)

    def sample(self, n: int) -> np.ndarray:
        """Values at s = j/n, j = 0..n-1"""
        if n <= 2 * self.degree():
            raise ValueError(f"{n} samples alias a degree-{self.degree()} loop")
        spectrum = np.zeros(n, dtype=complex)
        for m, c in self.coefficients.items():
            spectrum[m % n] += c
        return np.fft.ifft(spectrum) * n

    def loop(self, name: str, n: int) -> GammaLoop:
        return GammaLoop.from_values(name, self.sample(n))

    def dense_loop(self, name: str, n: Optional[int] = None) -> GammaLoop:
        """Resampling for the quadrature oracle, DEFAULTS['quadrature_points'] unless given"""
        return self.loop(name, n or DEFAULTS['quadrature_points'])


def circle_loop(name: str, center, radius: float, n: int, clockwise: bool = False) -> GammaLoop:
    m = -1 if clockwise else 1
    return TrigPolynomial({0: complex(center), m: complex(radius)}).loop(name, n)


def calibration_instance(center=1.0, samples: int = CALIBRATION_SAMPLES) -> ContactInstance:
    """gamma = center + 0.5 e^{2 pi i s}; index `center` for odd real centers"""
    return ContactInstance("calibration", (circle_loop("L0", center, 0.5, samples),))


def _segment_distance(values: np.ndarray, k: float) -> np.ndarray:
    """Distance from k to each closed-polygon edge values[j] -> values[j+1]"""
    start = values
    edge = np.roll(values, -1) - values
    length2 = np.abs(edge) ** 2
    t = np.zeros(len(values))
    nonzero = length2 > 0
    t[nonzero] = np.clip(((k - start[nonzero]) * np.conj(edge[nonzero])).real / length2[nonzero], 0.0, 1.0)
    return np.abs(start + t * edge - k)


def loop_clearance(poly: TrigPolynomial, samples: int) -> float:
    """Smallest distance from an odd integer to the polygon or to the densely sampled curve"""
    values = poly.sample(samples)
    dense = poly.sample(DENSE_FACTOR * samples)
    limit = math.ceil(np.max(np.abs(dense))) + 1
    odds = [k for k in range(-limit, limit + 1) if k % 2 != 0]
    edges = min(float(np.min(_segment_distance(values, k))) for k in odds)
    return min(edges, float(np.min(nearest_odd_distance(dense))))


def random_trig_polynomial(rng: np.random.Generator, degree: int = 3, center_bound: float = 7.0,
                           scale_bound: float = 2.5) -> TrigPolynomial:
    coefficients = {0: complex(rng.uniform(-center_bound, center_bound), rng.uniform(-1.0, 1.0))}
    scale = rng.uniform(0.3, scale_bound)
    for m in range(-degree, degree + 1):
        if m == 0:
            continue
        c = complex(rng.normal(), rng.normal()) * scale / abs(m) ** 1.5
        coefficients[m] = c
    return TrigPolynomial(coefficients)


def random_trig_instance(rng: np.random.Generator, max_loops: int = 3, samples: int = RANDOM_SAMPLES,
                         max_abs: float = 9.0, clearance: float = 0.1, degree: int = 3,
                         max_tries: int = 10000, label: Optional[str] = None):
    """
    Rejection sampler for valid instances. Returns (instance, polynomials) so
    callers can resample each loop densely for the quadrature oracle.
    """
    count = int(rng.integers(1, max_loops + 1))
    polys = []
    tries = 0
    while len(polys) < count:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"no admissible loop found in {max_tries} tries")
        poly = random_trig_polynomial(rng, degree)
        if np.max(np.abs(poly.sample(DENSE_FACTOR * samples))) > max_abs:
            continue
        if loop_clearance(poly, samples) < clearance:
            continue
        polys.append(poly)

    loops = tuple(p.loop(f"L{i}", samples) for i, p in enumerate(polys))
    inst = ContactInstance(label or "random", loops, clearance)
    log_message("INFO", "INSTANCE", f"sampled {count} loop(s) after {tries} draw(s)")
    return inst, polys


def imaginary_trig_polynomial(rng: np.random.Generator, degree: int = 3, scale: float = 4.0) -> TrigPolynomial:
    """c_{-m} = -conj(c_m) and imaginary c_0 make every value purely imaginary"""
    coefficients = {0: 1j * rng.uniform(-scale, scale) / 2}
    for m in range(1, degree + 1):
        c = complex(rng.normal(), rng.normal()) * scale / (2 * m ** 1.5)
        coefficients[m] = c
        coefficients[-m] = -np.conj(c)
    return TrigPolynomial(coefficients)


def imaginary_loop(rng: np.random.Generator, name: str = "L0", samples: int = RANDOM_SAMPLES,
                   degree: int = 3, scale: float = 4.0) -> GammaLoop:
    values = imaginary_trig_polynomial(rng, degree, scale).sample(samples)
    # drop the rounding residue of the inverse FFT
    return GammaLoop.from_values(name, 1j * values.imag)
