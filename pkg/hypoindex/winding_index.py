# winding_index.py
"""
Winding-number route to the Fredholm index: discrete windings of the gamma
loops around odd integers, combined as  Index P = sum_k k * Ind(k).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict

import numpy as np

from .config import DEFAULTS
from .contact_data import ContactInstance, GammaLoop, relevant_odd_integers
from .errors import AmbiguousWindingError, WindingError
from .logs import log_message

# slack allowed on the summed principal arguments before they are called non-integral
INTEGRALITY_SLACK = 1e-9


@dataclass(frozen=True)
class WindingTable:
    entries: Dict[int, int]
    index: int

    def nonzero(self):
        return {k: w for k, w in self.entries.items() if w != 0}

    def to_dict(self):
        return {
            "index": self.index,
            "windings": {str(k): w for k, w in sorted(self.entries.items())},
        }


def discrete_winding(values, target) -> int:
    """
    Winding of the closed polygon through `values` around `target`,
    counterclockwise positive. Each step must stay strictly below pi in angle.
    """
    shifted = np.asarray(values, dtype=complex) - complex(target)
    if np.any(shifted == 0):
        raise WindingError(f"sample coincides with the target {complex(target)}")

    steps = np.angle(np.roll(shifted, -1) / shifted)
    if np.any(np.abs(steps) >= np.pi):
        j = int(np.flatnonzero(np.abs(steps) >= np.pi)[0])
        raise AmbiguousWindingError(f"angular step at sample {j} is not below pi")

    turns = steps.sum() / (2 * np.pi)
    winding = int(round(turns))
    if abs(turns - winding) > INTEGRALITY_SLACK:
        raise WindingError(f"summed arguments {float(turns)!r} are not an integer number of turns")
    return winding


def winding_number(loop: GammaLoop, k: int) -> int:
    try:
        return discrete_winding(loop.values(), k)
    except AmbiguousWindingError as e:
        raise AmbiguousWindingError(str(e), loop=loop.name, k=k)
    except WindingError as e:
        raise WindingError(str(e), loop=loop.name, k=k)


def fredholm_index(inst: ContactInstance, workers=None) -> WindingTable:
    """Windings summed over link components, weighted by k"""
    workers = workers or DEFAULTS['workers']
    odds = relevant_odd_integers(inst)
    jobs = [(k, loop) for k in odds for loop in inst.loops]

    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            windings = list(pool.map(lambda job: winding_number(job[1], job[0]), jobs))
    else:
        windings = [winding_number(loop, k) for k, loop in jobs]

    # merge in fixed (k, loop) order
    entries = {k: 0 for k in odds}
    for (k, _), w in zip(jobs, windings):
        entries[k] += w

    index = sum(k * w for k, w in entries.items())
    log_message("INFO", "WINDING", f"'{inst.manifold_label}': windings {dict((k, w) for k, w in entries.items() if w)}, index {index}")
    return WindingTable(entries, index)


def winding_quadrature_oracle(dense_loop: GammaLoop, k: int) -> complex:
    """
    Trapezoid value of (1/2 pi i) \\oint dgamma / (gamma - k) over the closed
    sample sequence. Test oracle only; callers compare against the nearest integer.
    """
    values = dense_loop.values()
    shifted = values - k
    if np.any(shifted == 0):
        raise WindingError("sample coincides with the target", loop=dense_loop.name, k=k)

    inverse = 1.0 / shifted
    following = np.roll(values, -1)
    integral = np.sum((following - values) * 0.5 * (inverse + np.roll(inverse, -1)))
    return complex(integral / (2j * np.pi))
