# chern_pairing.py
"""
Cohomological route to the index: Ch of the K^1 symbol class paired with
Td(M) on a closed contact 3-manifold, reduced to line integrals along the link.

Per term q the integrand is Ch((xi^{1,0})^q) ^ Ch(u_q) ^ Td(M). On a
3-manifold e(xi)^2 = 0 and Ch(u_q) = (1/2 pi i) dlog u_q has degree 1, so only
the degree-2 coefficient of Ch((xi^{1,0})^q) ^ Td(M), namely q + 1/2, pairs
with Ch(u_q). The Euler class is evaluated through 2[L] = PD(e(xi)).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple

from .config import DEFAULTS
from .contact_data import ContactInstance, GammaLoop
from .errors import AmbiguousWindingError, WindingError
from .fock_rep import term_cutoff
from .logs import log_message
from .winding_index import discrete_winding, fredholm_index

# 2[L] is Poincare dual to e(xi); instances store L itself
EULER_FACTOR = 2


class ChernCoefficients(NamedTuple):
    degree0: Fraction
    degree2: Fraction


@dataclass(frozen=True)
class QContribution:
    q: int
    value: float


@dataclass(frozen=True)
class CohomologicalIndexReport:
    per_q_contributions: List[QContribution]
    total_real: float
    total_rounded: int
    agreement: bool
    winding_index: int

    def to_dict(self):
        return {
            "index": self.total_rounded,
            "total_real": self.total_real,
            "agreement": self.agreement,
            "winding_index": self.winding_index,
            "per_q": [{"q": c.q, "value": c.value} for c in self.per_q_contributions],
        }


def chern_of_line_power(q: int) -> ChernCoefficients:
    """Ch((xi^{1,0})^q) = (1 + e(xi))^q = 1 + q e(xi) on a 3-manifold"""
    if q < 0:
        raise ValueError(f"tensor power must be non-negative, got {q}")
    return ChernCoefficients(Fraction(1), Fraction(q))


def todd_coefficients() -> ChernCoefficients:
    """Td(M) = Td(xi^{1,0}) = 1 + e(xi)/2"""
    return ChernCoefficients(Fraction(1), Fraction(1, 2))


def pairing_weight(q: int) -> Fraction:
    """Degree-2 coefficient of Ch((xi^{1,0})^q) ^ Td(M); the e^2 term vanishes"""
    ch, td = chern_of_line_power(q), todd_coefficients()
    return ch.degree0 * td.degree2 + ch.degree2 * td.degree0


def odd_chern_integral(loop: GammaLoop, shift: complex) -> float:
    """(1/2 pi i) \\oint_L dlog(shift + gamma): winding of gamma around -shift"""
    try:
        return float(discrete_winding(loop.values(), -complex(shift)))
    except AmbiguousWindingError as e:
        raise AmbiguousWindingError(str(e), loop=loop.name, k=-complex(shift))
    except WindingError as e:
        raise WindingError(str(e), loop=loop.name, k=-complex(shift))


def chern_contribution(inst: ContactInstance, q: int) -> Fraction:
    """
    Term q of  sum_q \\int_M (2q+1)/2 e ^ dlog(2q+1-gamma) - (2q+1)/2 e ^ dlog(2q+1+gamma),
    with \\int_M e ^ w = 2 \\oint_L w.
    """
    k = 2 * q + 1
    numerator = sum(int(odd_chern_integral(loop, -k)) for loop in inst.loops)
    denominator = sum(int(odd_chern_integral(loop, k)) for loop in inst.loops)
    sign = DEFAULTS['orientation_sign']
    return sign * EULER_FACTOR * pairing_weight(q) * (numerator - denominator)


def chern_index(inst: ContactInstance) -> CohomologicalIndexReport:
    if inst.loops:
        Q = term_cutoff(inst.max_abs_gamma())
        exact = [(q, chern_contribution(inst, q)) for q in range(Q + 1)]
    else:
        # e(xi) = 0 kills every term
        exact = []

    total = sum((value for _, value in exact), Fraction(0))
    total_real = float(total)
    total_rounded = round(total_real)
    if abs(total_real - total_rounded) >= DEFAULTS['integrality_tol']:
        raise WindingError(f"cohomological total {total_real!r} is not an integer")

    winding = fredholm_index(inst).index
    agreement = total_rounded == winding
    if agreement:
        log_message("SUCCESS", "CHERN", f"'{inst.manifold_label}': Chern pairing {total_rounded} matches winding index")
    else:
        log_message("WARNING", "CHERN", f"'{inst.manifold_label}': Chern pairing {total_rounded} != winding index {winding}")

    return CohomologicalIndexReport(
        per_q_contributions=[QContribution(q, float(value)) for q, value in exact],
        total_real=total_real,
        total_rounded=total_rounded,
        agreement=agreement,
        winding_index=winding,
    )
