"""Deterministic ownership-cost formulas.

Covers depreciation, replacement accounting, the inflation-corrected
interest rate, capital recovery / EUAC annuities and the four per-usage-unit
cost approaches:

* ``I``     EUAC over one equipment lifetime, no replacements (base-case).
* ``II``    straight depreciation spread over the economic life, no interest.
* ``III.A`` EUAC over the whole project including replacement purchases.
* ``III.B`` project depreciation (with replacements) spread over all the
  usage delivered by every unit, escalated by ``(1 + i) ** j`` in year ``j``.

Usage units are hours for generators and effective Ah for batteries; nothing
here depends on which.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field, replace

from .errors import NegativeRealRateWarning, ValidationError

#: Replacement cost as a fraction of the capital cost when none is given.
DEFAULT_REPLACEMENT_FRACTION = 0.7

# Relative slack used when deciding whether a float ratio is a whole number.
_INTEGER_RTOL = 1e-9

HORIZON_MODES = ("strict", "round", "fractional")


class Approach(str, enum.Enum):
    I = "I"
    II = "II"
    IIIA = "III.A"
    IIIB = "III.B"

    @classmethod
    def parse(cls, text: "str | Approach") -> "Approach":
        if isinstance(text, Approach):
            return text
        key = str(text).strip().upper().replace(".", "")
        for member in cls:
            if member.name == key:
                return member
        raise ValidationError("approach", f"unknown approach {text!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class FinancialParams:
    nominal_interest: float
    inflation: float

    def __post_init__(self):
        if not math.isfinite(self.nominal_interest) or self.nominal_interest < 0:
            raise ValidationError("nominal_interest", "must be a finite value >= 0")
        if not math.isfinite(self.inflation) or self.inflation <= -1:
            raise ValidationError("inflation", "must be a finite value > -1")

    @property
    def real_rate(self) -> float:
        return real_interest_rate(self.nominal_interest, self.inflation)


@dataclass(frozen=True)
class EquipmentScenario:
    """Cost and usage data for one device over one project.

    ``replacement_cost`` defaults to 70% of ``capital_cost`` since wiring and
    housing are not paid again when the unit is swapped.
    """

    capital_cost: float
    economic_life: float
    annual_usage: float
    project_years: int
    replacement_cost: float | None = None
    salvage_value: float = 0.0

    def __post_init__(self):
        for name in ("capital_cost", "economic_life", "annual_usage", "salvage_value"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(name, "must be finite")
        if self.capital_cost < 0:
            raise ValidationError("capital_cost", "must be >= 0")
        if self.economic_life <= 0:
            raise ValidationError("economic_life", "must be > 0")
        if self.annual_usage <= 0:
            raise ValidationError("annual_usage", "must be > 0")
        if isinstance(self.project_years, bool) or int(self.project_years) != self.project_years:
            raise ValidationError("project_years", "must be an integer")
        if self.project_years < 1:
            raise ValidationError("project_years", "must be >= 1")
        object.__setattr__(self, "project_years", int(self.project_years))
        if self.salvage_value < 0:
            raise ValidationError("salvage_value", "must be >= 0")
        if self.salvage_value > self.capital_cost:
            raise ValidationError("salvage_value", "must not exceed capital_cost")
        if self.replacement_cost is None:
            object.__setattr__(
                self, "replacement_cost", DEFAULT_REPLACEMENT_FRACTION * self.capital_cost
            )
        elif not math.isfinite(self.replacement_cost) or self.replacement_cost < 0:
            raise ValidationError("replacement_cost", "must be a finite value >= 0")

    def with_usage(self, economic_life: float, annual_usage: float) -> "EquipmentScenario":
        return replace(self, economic_life=economic_life, annual_usage=annual_usage)


@dataclass(frozen=True)
class CostRate:
    value: float
    approach: Approach
    year_index: int = 0
    unit: str = field(default="usage-unit", compare=False)

    def __float__(self) -> float:
        return self.value


def real_interest_rate(nominal_interest: float, inflation: float) -> float:
    """Inflation-corrected annual rate ``(i_int - i_inf) / (1 + i_inf)``.

    A negative result is allowed but emits :class:`NegativeRealRateWarning`.
    """
    if inflation == -1:
        raise ZeroDivisionError("inflation of -100% makes the real rate undefined")
    rate = (nominal_interest - inflation) / (1 + inflation)
    if rate < 0:
        warnings.warn(
            f"real interest rate is negative ({rate:.6g})", NegativeRealRateWarning, stacklevel=2
        )
    return rate


def capital_recovery_factor(i: float, n: float) -> float:
    """Annuity factor ``i (1+i)^n / ((1+i)^n - 1)``; ``1/n`` at ``i == 0``.

    ``n`` may be fractional. The growth term is evaluated through
    ``expm1``/``log1p`` so the factor stays accurate as ``i`` approaches zero.
    """
    if n < 1:
        raise ValidationError("n", f"annuity horizon must be >= 1 year, got {n}")
    if i <= -1:
        raise ValidationError("i", f"interest rate must be > -1, got {i}")
    if i == 0:
        return 1.0 / n
    log_growth = n * math.log1p(i)
    return i * math.exp(log_growth) / math.expm1(log_growth)


def _near_integer(x: float) -> int | None:
    nearest = round(x)
    if abs(x - nearest) <= _INTEGER_RTOL * max(1.0, abs(x)):
        return int(nearest)
    return None


def replacement_count(s: EquipmentScenario) -> int:
    """Number of replacement units bought during the project.

    A lifetime that ends exactly at the end of the project does not trigger a
    purchase, so a 6-year unit in a 20-year project is replaced 3 times.
    """
    lifetimes = s.project_years * s.annual_usage / s.economic_life
    whole = _near_integer(lifetimes)
    units = whole if whole is not None else math.ceil(lifetimes)
    return max(units - 1, 0)


def purchase_cost_with_replacements(s: EquipmentScenario, no_rep: int) -> float:
    if no_rep < 0:
        raise ValidationError("no_rep", "must be >= 0")
    return s.capital_cost + s.replacement_cost * no_rep


def depreciation_cost(purchase_total: float, salvage: float) -> float:
    if salvage > purchase_total:
        raise ValidationError("salvage_value", "salvage exceeds total purchase cost")
    return purchase_total - salvage


def euac(c_dep: float, i: float, n: float) -> float:
    """Equivalent uniform annual cost of ``c_dep`` over ``n`` years."""
    return c_dep * capital_recovery_factor(i, n)


def lifetime_years(s: EquipmentScenario, mode: str = "strict") -> float:
    """Years one unit lasts, ``economic_life / annual_usage``.

    ``mode`` controls non-integer ratios: ``strict`` rejects them, ``round``
    rounds half-up to a whole year, ``fractional`` keeps the raw ratio.
    """
    if mode not in HORIZON_MODES:
        raise ValidationError("horizon_mode", f"expected one of {HORIZON_MODES}, got {mode!r}")
    ratio = s.economic_life / s.annual_usage
    if mode == "fractional":
        years: float = ratio
    elif mode == "round":
        years = math.floor(ratio + 0.5)
    else:
        whole = _near_integer(ratio)
        if whole is None:
            raise ValidationError(
                "economic_life",
                f"equipment lifetime of {ratio:.6g} years is not a whole number "
                "(use --fractional-years to allow it)",
            )
        years = whole
    if years < 1:
        raise ValidationError("economic_life", f"equipment lifetime of {ratio:.6g} years is under 1 year")
    return years


def rate_approach_I(s: EquipmentScenario, fp: FinancialParams, horizon: str = "strict") -> CostRate:
    """Base-case rate: EUAC over one lifetime divided by annual usage.

    The project horizon is replaced by the lifetime of a single unit.
    """
    n = lifetime_years(s, horizon)
    c_dep = depreciation_cost(s.capital_cost, s.salvage_value)
    return CostRate(euac(c_dep, fp.real_rate, n) / s.annual_usage, Approach.I)


def rate_approach_II(s: EquipmentScenario) -> CostRate:
    # Denominator is the economic life, not annual usage.
    c_dep = depreciation_cost(s.capital_cost, s.salvage_value)
    return CostRate(c_dep / s.economic_life, Approach.II)


def project_depreciation(s: EquipmentScenario) -> float:
    """Depreciation over the whole project, replacement purchases included."""
    purchase = purchase_cost_with_replacements(s, replacement_count(s))
    return depreciation_cost(purchase, s.salvage_value)


def rate_approach_IIIA(s: EquipmentScenario, fp: FinancialParams) -> CostRate:
    annual = euac(project_depreciation(s), fp.real_rate, s.project_years)
    return CostRate(annual / s.annual_usage, Approach.IIIA)


def rate_approach_IIIB(s: EquipmentScenario, fp: FinancialParams, j: int = 0) -> CostRate:
    """Project depreciation per unit of lifetime usage, escalated to year ``j``.

    ``j = 0`` is the first operating year and the index is not reset when a
    unit is replaced.
    """
    if not 0 <= j < s.project_years:
        raise ValidationError("year", f"must lie in [0, {s.project_years - 1}], got {j}")
    no_rep = replacement_count(s)
    base = project_depreciation(s) / (s.economic_life * (no_rep + 1))
    return CostRate(base * (1 + fp.real_rate) ** j, Approach.IIIB, j)


def rate(
    approach: "Approach | str",
    s: EquipmentScenario,
    fp: FinancialParams,
    year: int = 0,
    horizon: str = "strict",
) -> CostRate:
    """Dispatch to the rate function for ``approach``."""
    approach = Approach.parse(approach)
    if approach is Approach.I:
        return rate_approach_I(s, fp, horizon)
    if approach is Approach.II:
        return rate_approach_II(s)
    if approach is Approach.IIIA:
        return rate_approach_IIIA(s, fp)
    return rate_approach_IIIB(s, fp, year)
