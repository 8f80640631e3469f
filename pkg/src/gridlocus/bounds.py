"""Closed-form order and diameter bounds for locally n x n grid graphs.

The diameter bound needs ``ceil(f(n))`` with
``f(n) = ln(n^2 (n-1)) / (2 ln((n+1)/(n-1)))``.  It is evaluated in interval
arithmetic so the ceiling is exact whenever the enclosure misses every
integer; otherwise the report is flagged.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import mpmath

from .errors import InvalidParameterError

_DPS = 40
INTEGER_TOLERANCE = 1e-12


class Regime(str, enum.Enum):
    MU_AT_LEAST_N_MINUS_1 = "n-1"
    MU_AT_LEAST_2N_MINUS_2 = ">=2(n-1)"
    MU_EQUALS_2N_MINUS_2 = "2(n-1)"

    @classmethod
    def parse(cls, text: "str | Regime") -> "Regime":
        if isinstance(text, Regime):
            return text
        aliases = {
            "n-1": cls.MU_AT_LEAST_N_MINUS_1, ">=n-1": cls.MU_AT_LEAST_N_MINUS_1,
            ">=2(n-1)": cls.MU_AT_LEAST_2N_MINUS_2, "2(n-1)+": cls.MU_AT_LEAST_2N_MINUS_2,
            "2(n-1)": cls.MU_EQUALS_2N_MINUS_2, "=2(n-1)": cls.MU_EQUALS_2N_MINUS_2,
        }
        key = text.strip().replace(" ", "")
        if key not in aliases:
            raise InvalidParameterError(f"unknown regime {text!r}; use one of {sorted(aliases)}")
        return aliases[key]


@dataclass(frozen=True)
class FInterval:
    lower: float
    upper: float
    contains_integer: bool
    ceiling: int | None  # exact when the enclosure misses every integer


@dataclass(frozen=True)
class BoundsReport:
    n: int
    regime: str
    order_bound: int
    diam_bound: int
    f_n: float
    f_interval: FInterval
    f_near_integer: bool
    sandwich_lower: float
    sandwich_upper: float
    sandwich_holds: bool

    def to_dict(self) -> dict:
        return asdict(self)


def f_interval(n: int) -> FInterval:
    """Rigorous enclosure of f(n) for n >= 2."""
    if n < 2:
        raise InvalidParameterError("f(n) needs n >= 2")
    with mpmath.workdps(_DPS):
        iv = mpmath.iv
        iv.dps = _DPS
        num = iv.log(iv.mpf(n) ** 2 * (n - 1))
        den = 2 * iv.log(iv.mpf(n + 1) / (n - 1))
        val = num / den
        lo, hi = val.a, val.b
        lo_f = mpmath.mpf(lo)
        hi_f = mpmath.mpf(hi)
        fl_lo = int(mpmath.floor(lo_f))
        contains = fl_lo + 1 <= hi_f or lo_f == fl_lo
        ceiling = None if contains else fl_lo + 1
        # round outward so the float endpoints still enclose f(n)
        lo_out, hi_out = float(lo_f), float(hi_f)
        if lo_out > lo_f:
            lo_out = math.nextafter(lo_out, -math.inf)
        if hi_out < hi_f:
            hi_out = math.nextafter(hi_out, math.inf)
        return FInterval(lo_out, hi_out, bool(contains), ceiling)


def f_value(n: int) -> float:
    return math.log(n * n * (n - 1)) / (2 * math.log1p(2 / (n - 1)))


def order_bound_weak(n: int) -> int:
    return n**3 * (n + 5) // 4


def order_bound_strong(n: int) -> int:
    return (n * n + 1) * (n + 1) // 2


def theorem_bounds(n: int, regime: "Regime | str") -> BoundsReport:
    if not isinstance(n, int) or n < 2:
        raise InvalidParameterError(f"n must be an integer >= 2, got {n!r}")
    regime = Regime.parse(regime)
    fi = f_interval(n)
    fv = f_value(n)
    if regime is Regime.MU_AT_LEAST_N_MINUS_1:
        order = order_bound_weak(n)
        ceiling = fi.ceiling if fi.ceiling is not None else math.ceil(fi.upper)
        diam = 2 + ceiling
    else:
        order = order_bound_strong(n)
        diam = 3
    sand_lo = 0.75 * (n - 1) * math.log(n - 1)
    sand_hi = 0.75 * n * math.log(n)
    near = abs(fv - round(fv)) < INTEGER_TOLERANCE or fi.contains_integer
    return BoundsReport(n, regime.value, order, diam, fv, fi, near, sand_lo, sand_hi,
                        sand_lo < fi.lower and fi.upper < sand_hi)


def f_integrality_scan(n_max: int = 10_000) -> list[int]:
    """Values 2 <= n <= n_max whose f(n) enclosure contains an integer."""
    return [n for n in range(2, n_max + 1) if f_interval(n).contains_integer]


def applicable_regimes(n: int, mu_min: int, mu_max: int) -> list[Regime]:
    """Regimes whose hypotheses hold for a locally n x n graph with mu orders in ``[mu_min, mu_max]``."""
    out = []
    if mu_min >= n - 1:
        out.append(Regime.MU_AT_LEAST_N_MINUS_1)
    if mu_min >= 2 * (n - 1):
        out.append(Regime.MU_AT_LEAST_2N_MINUS_2)
    if mu_min == mu_max == 2 * (n - 1):
        out.append(Regime.MU_EQUALS_2N_MINUS_2)
    return out
