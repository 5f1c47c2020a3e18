"""Geometric apparent power and its scalar/bivector anatomy.

The product of voltage and current phasors splits into a scalar part (the
active power) and a bivector part.  In-plane bivector coefficients are the
per-harmonic reactive powers; bivectors straddling two frequencies are
cross-frequency terms with no classical counterpart, reported verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Multivector, blade_indices, geometric_product, grade_of
from .errors import PowerAnalysisError
from .phasor import BasisLayout, GeometricPhasor

# Shape of the JSON report emitted for a voltage/current pair.
POWER_REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["p_w", "apparent_va", "pf", "per_harmonic", "cross_terms"],
    "additionalProperties": False,
    "properties": {
        "p_w": {"type": "number"},
        "apparent_va": {"type": "number", "minimum": 0},
        "pf": {"type": ["number", "null"], "minimum": -1, "maximum": 1},
        "per_harmonic": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["order", "p_w", "q_var"],
                "additionalProperties": False,
                "properties": {
                    "order": {"type": "number", "exclusiveMinimum": 0},
                    "p_w": {"type": "number"},
                    "q_var": {"type": "number"},
                },
            },
        },
        "cross_terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["blade_indices", "va"],
                "additionalProperties": False,
                "properties": {
                    "blade_indices": {
                        "type": "array",
                        "items": {"type": "integer", "minimum": 0},
                        "minItems": 2,
                        "maxItems": 2,
                    },
                    "va": {"type": "number"},
                },
            },
        },
    },
}


@dataclass(frozen=True)
class GeometricPower:
    """Product of a voltage and a current phasor (scalar + bivector)."""

    mv: Multivector
    layout: BasisLayout

    def __post_init__(self):
        if not self.mv.grades() <= {0, 2}:
            raise PowerAnalysisError(
                "geometric power must hold scalar and bivector grades only"
            )

    @property
    def active(self) -> float:
        """Total active power, the scalar part."""
        return self.mv.scalar_part

    @property
    def nonactive(self) -> Multivector:
        """The bivector remainder."""
        return self.mv.grade(2)


@dataclass(frozen=True)
class HarmonicPQ:
    """Classical P and signed Q of one order."""

    order: float
    p: float
    q: float


def geometric_power(u: GeometricPhasor, i: GeometricPhasor) -> GeometricPower:
    """Apparent power multivector M = u i of two phasors on one layout."""
    u._check_compatible(i)
    return GeometricPower(geometric_product(u.mv, i.mv), u.layout)


def apparent(mpower: GeometricPower) -> float:
    """Apparent power: the multivector norm, equal to ||u|| * ||i||."""
    return mpower.mv.norm()


def power_factor(mpower: GeometricPower) -> float:
    """Active power over apparent power."""
    s = apparent(mpower)
    if s == 0.0:
        raise PowerAnalysisError("power factor undefined at zero apparent power")
    return mpower.active / s


def harmonic_pq(u: GeometricPhasor, i: GeometricPhasor) -> list[HarmonicPQ]:
    """Per-order P and Q for every order occupied by either phasor.

    With slot pairs (a, b) = (odd, even) the order-k entry is
    ``p = a_u a_i + b_u b_i`` and ``q = a_u b_i - b_u a_i``: q is the
    coefficient the wedge u_k ^ i_k puts on the order's plane, positive
    for a lagging (inductive) current.
    """
    u._check_compatible(i)
    orders = sorted(set(u.occupied_orders()) | set(i.occupied_orders()))
    out = []
    for order in orders:
        au, bu = u.pair(order)
        ai, bi = i.pair(order)
        out.append(HarmonicPQ(order, au * ai + bu * bi, au * bi - bu * ai))
    return out


@dataclass(frozen=True)
class PowerReport:
    """Flat, JSON-ready summary of a geometric power computation.

    ``pf`` is None when the apparent power is zero.
    """

    p_w: float
    apparent_va: float
    pf: float | None
    per_harmonic: tuple[HarmonicPQ, ...]
    cross_terms: tuple[tuple[tuple[int, int], float], ...]

    def to_dict(self) -> dict:
        return {
            "p_w": self.p_w,
            "apparent_va": self.apparent_va,
            "pf": self.pf,
            "per_harmonic": [
                {"order": pq.order, "p_w": pq.p, "q_var": pq.q}
                for pq in self.per_harmonic
            ],
            "cross_terms": [
                {"blade_indices": list(idx), "va": va}
                for idx, va in self.cross_terms
            ],
        }


def cross_frequency_terms(
    mpower: GeometricPower,
) -> tuple[tuple[tuple[int, int], float], ...]:
    """Bivector terms that do not lie in any single order's plane."""
    layout = mpower.layout
    plane_masks = {layout.plane_mask(o) for o in layout.orders()}
    out = [
        (blade_indices(mask), coeff)
        for mask, coeff in mpower.mv.terms.items()
        if grade_of(mask) == 2 and mask not in plane_masks
    ]
    return tuple(sorted(out))


def power_report(u: GeometricPhasor, i: GeometricPhasor) -> PowerReport:
    """Full report for a voltage/current pair: totals, per-order P/Q and
    cross-frequency terms."""
    m = geometric_power(u, i)
    s = apparent(m)
    pf = m.active / s if s > 0.0 else None
    return PowerReport(
        p_w=m.active,
        apparent_va=s,
        pf=pf,
        per_harmonic=tuple(harmonic_pq(u, i)),
        cross_terms=cross_frequency_terms(m),
    )
