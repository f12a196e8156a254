"""Engine result record."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..dyadic import DyadicOmega

METHODS = ("projector", "canonical", "dense")


@dataclass
class EngineResult:
    """Value of a multi-invariant from one engine.

    Attributes:
        method: ``projector``, ``canonical`` or ``dense``.
        value: exact scalar (projector only; None otherwise).
        magnitude_log2: log2 |Z| as a Fraction, None when Z = 0. For the
            dense engine it is the nearest half-integer and ``exact`` is False.
        complex_value: floating value (magnitude only for canonical).
        exact: whether ``magnitude_log2`` is exact.
        wall_time_us: elapsed time of the engine call.
    """

    method: str
    value: DyadicOmega | None
    magnitude_log2: Fraction | None
    complex_value: complex | None = None
    exact: bool = True
    wall_time_us: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def is_zero(self):
        return self.magnitude_log2 is None

    @property
    def magnitude(self):
        return 0.0 if self.magnitude_log2 is None else 2.0 ** float(self.magnitude_log2)

    @property
    def exactness(self):
        if self.method == "dense":
            return "floating"
        return "exact-ring" if self.value is not None else "exact-rational"

    def to_record(self, timing=True):
        rec = {
            "method": self.method,
            "exactness": self.exactness,
            "value": list(self.value.to_tuple()) if self.value is not None else None,
            "magnitude_log2": format_rational(self.magnitude_log2),
        }
        if self.method == "dense" and self.complex_value is not None:
            rec["complex"] = [self.complex_value.real, self.complex_value.imag]
        if self.extra:
            rec.update(self.extra)
        if timing:
            rec["wall_time_us"] = self.wall_time_us
        return rec


def format_rational(x):
    """``"p/q"`` string (``"-inf"`` for None)."""
    if x is None:
        return "-inf"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s):
    return None if s == "-inf" else Fraction(s)
