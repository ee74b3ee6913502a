# contact_data.py
"""
Input data model: a contact instance is an oriented link (half the Poincare
dual of the Euler class) stored only through the sampled Z-coefficient gamma
along each component. Parsing, serialization and semantic validation live here.
"""

import hashlib
import json
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .config import DEFAULTS
from .errors import InstanceFormatError
from .logs import log_message

ORIENTATION_CCW = "counterclockwise-positive"

RULE_CLEARANCE = "odd-integer clearance"
RULE_ADEQUACY = "sampling adequacy"

_TOP_KEYS = {"manifold", "clearance", "loops"}
_LOOP_KEYS = {"name", "samples"}


@dataclass(frozen=True)
class ComplexSample:
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise InstanceFormatError("non-finite numeric literal")

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def of(cls, z):
        z = complex(z)
        return cls(z.real, z.imag)


@dataclass(frozen=True)
class GammaLoop:
    """Closed loop of gamma samples; sample len(samples) wraps to sample 0"""
    name: str
    samples: Tuple[ComplexSample, ...]

    def __post_init__(self):
        object.__setattr__(self, 'samples', tuple(self.samples))
        if len(self.samples) < 3:
            raise InstanceFormatError(f"loop '{self.name}' needs at least 3 samples, got {len(self.samples)}")

    @classmethod
    def from_values(cls, name, values):
        return cls(name, tuple(ComplexSample.of(z) for z in np.asarray(values, dtype=complex)))

    def values(self) -> np.ndarray:
        return np.array([s.value for s in self.samples], dtype=complex)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values())))

    def reversed(self):
        return GammaLoop(self.name, self.samples[::-1])


@dataclass(frozen=True)
class ContactInstance:
    manifold_label: str
    loops: Tuple[GammaLoop, ...] = ()
    clearance: float = DEFAULTS['clearance']
    orientation_convention: str = ORIENTATION_CCW

    def __post_init__(self):
        object.__setattr__(self, 'loops', tuple(self.loops))
        if not (math.isfinite(self.clearance) and self.clearance > 0):
            raise InstanceFormatError(f"clearance must be a positive number, got {self.clearance}")
        if self.orientation_convention != ORIENTATION_CCW:
            raise InstanceFormatError(f"unsupported orientation convention: {self.orientation_convention}")

    def max_abs_gamma(self) -> float:
        if not self.loops:
            return 0.0
        return max(loop.max_abs() for loop in self.loops)


@dataclass(frozen=True)
class Violation:
    loop: str
    index: int
    rule: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...]
    max_abs_gamma: float
    relevant_odds: Tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {
            "ok": self.ok,
            "max_abs_gamma": self.max_abs_gamma,
            "relevant_odds": list(self.relevant_odds),
            "violations": [
                {"loop": v.loop, "index": v.index, "rule": v.rule, "message": v.message}
                for v in self.violations
            ],
        }


def _reject_constant(token):
    raise InstanceFormatError(f"non-finite numeric literal: {token}")


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InstanceFormatError(f"{where}: expected a number, got {type(value).__name__}")
    try:
        value = float(value)
    except OverflowError:
        raise InstanceFormatError(f"{where}: non-finite numeric literal")
    if not math.isfinite(value):
        raise InstanceFormatError(f"{where}: non-finite numeric literal")
    return value


def _check_keys(obj, expected, where):
    if not isinstance(obj, dict):
        raise InstanceFormatError(f"{where}: expected an object")
    missing = sorted(expected - obj.keys())
    if missing:
        raise InstanceFormatError(f"{where}: missing required field '{missing[0]}'")
    unknown = sorted(obj.keys() - expected)
    if unknown:
        raise InstanceFormatError(f"{where}: unknown key '{unknown[0]}'")


def parse_instance(text) -> ContactInstance:
    """
    Parse an instance document (JSON text or a readable stream).
    Only structure is checked here; call validate_instance for the admission rules.
    """
    if hasattr(text, 'read'):
        text = text.read()
    if isinstance(text, bytes):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError as e:
            raise InstanceFormatError(f"invalid UTF-8 at byte {e.start}")

    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"syntax error: {e.msg}", line=e.lineno, column=e.colno)

    _check_keys(doc, _TOP_KEYS, "instance")
    if not isinstance(doc["manifold"], str):
        raise InstanceFormatError("instance: 'manifold' must be a string")
    if not isinstance(doc["loops"], list):
        raise InstanceFormatError("instance: 'loops' must be a list")
    clearance = _number(doc["clearance"], "clearance")

    loops = []
    for i, raw in enumerate(doc["loops"]):
        where = f"loops[{i}]"
        _check_keys(raw, _LOOP_KEYS, where)
        if not isinstance(raw["name"], str):
            raise InstanceFormatError(f"{where}: 'name' must be a string")
        if not isinstance(raw["samples"], list):
            raise InstanceFormatError(f"{where}: 'samples' must be a list")
        samples = []
        for j, pair in enumerate(raw["samples"]):
            if not isinstance(pair, list) or len(pair) != 2:
                raise InstanceFormatError(f"{where}.samples[{j}]: expected [re, im]")
            samples.append(ComplexSample(_number(pair[0], f"{where}.samples[{j}]"),
                                         _number(pair[1], f"{where}.samples[{j}]")))
        loops.append(GammaLoop(raw["name"], tuple(samples)))

    return ContactInstance(doc["manifold"], tuple(loops), clearance)


def serialize_instance(inst: ContactInstance) -> str:
    doc = {
        "manifold": inst.manifold_label,
        "clearance": inst.clearance,
        "loops": [
            {"name": loop.name, "samples": [[s.re, s.im] for s in loop.samples]}
            for loop in inst.loops
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_instance(path) -> ContactInstance:
    with open(path, 'rb') as fh:
        return parse_instance(fh.read())


def instance_digest(data) -> str:
    if isinstance(data, str):
        data = data.encode('utf-8')
    return hashlib.sha256(data).hexdigest()


def nearest_odd_distance(values) -> np.ndarray:
    """Distance from each sample to the closest odd integer on the real axis"""
    values = np.asarray(values, dtype=complex)
    nearest = 2.0 * np.round((values.real - 1.0) / 2.0) + 1.0
    return np.abs(values - nearest)


def _odds_up_to(bound: float) -> List[int]:
    limit = math.ceil(bound)
    return [k for k in range(-limit, limit + 1) if k % 2 != 0]


def relevant_odd_integers(inst: ContactInstance) -> List[int]:
    """All odd k with |k| <= ceil(max |gamma|); every k with nonzero winding is among them"""
    if not inst.loops:
        return []
    return _odds_up_to(inst.max_abs_gamma())


def validate_instance(inst: ContactInstance) -> ValidationReport:
    violations = []
    odds = relevant_odd_integers(inst)

    for loop in inst.loops:
        values = loop.values()

        distances = nearest_odd_distance(values)
        for j in np.flatnonzero(distances < inst.clearance):
            violations.append(Violation(
                loop.name, int(j), RULE_CLEARANCE,
                f"sample {values[j]} lies {distances[j]:.3g} from an odd integer (clearance {inst.clearance:g})"))

        following = np.roll(values, -1)
        for k in odds:
            here, there = values - k, following - k
            usable = (here != 0) & (there != 0)
            steps = np.zeros(len(values))
            steps[usable] = np.abs(np.angle(there[usable] / here[usable]))
            for j in np.flatnonzero(steps >= np.pi):
                violations.append(Violation(
                    loop.name, int(j), RULE_ADEQUACY,
                    f"angular step around k={k} between samples {j} and {(j + 1) % len(values)} is not below pi"))

    report = ValidationReport(tuple(violations), inst.max_abs_gamma(), tuple(odds))
    if report.ok:
        log_message("SUCCESS", "INSTANCE", f"'{inst.manifold_label}' valid: {len(inst.loops)} loop(s), odds {odds}")
    else:
        log_message("WARNING", "INSTANCE", f"'{inst.manifold_label}' has {len(violations)} violation(s)")
    return report
