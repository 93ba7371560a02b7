"""Battery adaptation: charge life, effective Ah throughput and cost per effective Ah.

Battery lifetime is a cumulative Ah throughput rather than hours. Discharges
away from rated depth of discharge (DoD) or rated capacity are converted to
rated-equivalent ("effective") Ah before they are charged against that life.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable

from .econ import (
    Approach,
    CostRate,
    EquipmentScenario,
    FinancialParams,
    project_depreciation,
    rate_approach_IIIB,
    replacement_count,
)
from .errors import ValidationError

EVENT_COLUMNS = ("timestamp", "d_act_ah", "c_act_ah", "dod_act")
DENOMINATOR_VARIANTS = ("lifetime", "annual")


@dataclass(frozen=True)
class BatterySpec:
    """Manufacturer ratings plus the two DoD curve-fit coefficients.

    ``u0`` and ``u1`` have no defaults: they are battery-specific fits.
    """

    cycle_life: float
    rated_dod: float
    rated_capacity: float
    u0: float
    u1: float

    def __post_init__(self):
        if not self.cycle_life > 0:
            raise ValidationError("cycle_life", "must be > 0")
        if not 0 < self.rated_dod <= 1:
            raise ValidationError("rated_dod", "must lie in (0, 1]")
        if not self.rated_capacity > 0:
            raise ValidationError("rated_capacity", "must be > 0")
        for name in ("u0", "u1"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(name, "must be finite")


@dataclass(frozen=True)
class DischargeEvent:
    actual_ah: float
    actual_capacity: float
    actual_dod: float
    timestamp: str = ""

    def __post_init__(self):
        if not self.actual_ah >= 0:
            raise ValidationError("d_act_ah", "must be >= 0")
        if not self.actual_capacity > 0:
            raise ValidationError("c_act_ah", "must be > 0")
        if not 0 < self.actual_dod <= 1:
            raise ValidationError("dod_act", "must lie in (0, 1]")


def charge_life(spec: BatterySpec) -> float:
    """Lifetime Ah throughput at rated conditions: cycles x DoD x capacity."""
    return spec.cycle_life * spec.rated_dod * spec.rated_capacity


def effective_discharge(event: DischargeEvent, spec: BatterySpec) -> float:
    dod_ratio = event.actual_dod / spec.rated_dod
    return (
        event.actual_ah
        * (spec.rated_capacity / event.actual_capacity)
        * dod_ratio**spec.u0
        * math.exp(spec.u1 * (dod_ratio - 1))
    )


def annual_effective_ah(events: Iterable[DischargeEvent], spec: BatterySpec) -> float:
    """Sum of effective discharge over one year's events."""
    return math.fsum(effective_discharge(e, spec) for e in events)


def battery_cost_per_effective_ah(
    scenario: EquipmentScenario,
    fp: FinancialParams,
    annual_effective_ah: float,
    j: int = 0,
    variant: str = "lifetime",
) -> CostRate:
    """Approach III.B cost per effective Ah in year ``j``.

    ``scenario.economic_life`` is the charge life in Ah; the replacement
    count uses ``annual_effective_ah`` as annual usage. The ``variant``
    picks the usage each unit is credited with:

    ``lifetime``
        the charge life (annual throughput x years per unit), which makes
        the rate identical to :func:`~dercost.econ.rate_approach_IIIB`.
    ``annual``
        the raw one-year effective Ah sum.
    """
    if variant not in DENOMINATOR_VARIANTS:
        raise ValidationError("variant", f"expected one of {DENOMINATOR_VARIANTS}, got {variant!r}")
    if not annual_effective_ah > 0:
        raise ValidationError("annual_effective_ah", "must be > 0")
    s = replace(scenario, annual_usage=annual_effective_ah)
    if variant == "lifetime":
        result = rate_approach_IIIB(s, fp, j)
        return replace(result, unit="Ah")
    if not 0 <= j < s.project_years:
        raise ValidationError("year", f"must lie in [0, {s.project_years - 1}], got {j}")
    no_rep = replacement_count(s)
    value = project_depreciation(s) / (annual_effective_ah * (no_rep + 1)) * (1 + fp.real_rate) ** j
    return CostRate(value, Approach.IIIB, j, unit="Ah")


def read_events(path: "str | Path") -> list[DischargeEvent]:
    """Load a discharge log with columns timestamp, d_act_ah, c_act_ah, dod_act."""
    events = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(row for row in fh if not row.startswith("#"))
        missing = [c for c in EVENT_COLUMNS if c not in (reader.fieldnames or ())]
        if missing:
            raise ValidationError("events", f"missing column(s) {', '.join(missing)} in {path}")
        for lineno, row in enumerate(reader, start=2):
            try:
                events.append(
                    DischargeEvent(
                        float(row["d_act_ah"]),
                        float(row["c_act_ah"]),
                        float(row["dod_act"]),
                        row["timestamp"],
                    )
                )
            except ValueError as exc:
                raise ValidationError(f"events[{lineno}]", str(exc)) from exc
    return events
