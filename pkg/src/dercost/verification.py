"""Accumulated ownership payments per approach and their error vs. the base-case.

Payments are yearly. Nominal totals add the payments as made; present-value
totals discount the payment of operating year ``j`` (``j = 0`` first) by
``(1 + i) ** (j + 1)``, i.e. payments fall at the end of each year.

Base-case (Approach I) chaining: every lifetime cycle is bought again at the
full capital cost and pays the one-lifetime EUAC each year, so its annual
payment is constant. A project that ends mid-cycle simply stops paying,
which prorates the last cycle by its year count.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .econ import (
    Approach,
    EquipmentScenario,
    FinancialParams,
    depreciation_cost,
    euac,
    lifetime_years,
    project_depreciation,
    rate_approach_II,
    rate_approach_IIIB,
)
from .errors import PartialCycleWarning, ValidationError

MODES = ("nominal", "pv")
DEFAULT_HORIZONS = (4, 8, 12, 16, 20)


@dataclass(frozen=True)
class PaymentSchedule:
    approach: Approach
    project_years: int
    annual_payments: tuple[float, ...]
    mode: str = "nominal"

    @property
    def total(self) -> float:
        return math.fsum(self.annual_payments)


@dataclass(frozen=True)
class VerificationRow:
    project_years: int
    approach: Approach
    total_payment: float
    error_vs_base: float
    mode: str


def _nominal_payments(approach: Approach, s: EquipmentScenario, fp: FinancialParams, horizon: str):
    n = s.project_years
    if approach is Approach.I:
        cycle = lifetime_years(s, horizon)
        if not float(n / cycle).is_integer():
            warnings.warn(
                f"{n}-year project is not a whole number of {cycle:g}-year cycles; "
                "the last cycle is prorated",
                PartialCycleWarning,
                stacklevel=3,
            )
        annual = euac(depreciation_cost(s.capital_cost, s.salvage_value), fp.real_rate, cycle)
        return [annual] * n
    if approach is Approach.II:
        return [rate_approach_II(s).value * s.annual_usage] * n
    if approach is Approach.IIIA:
        return [euac(project_depreciation(s), fp.real_rate, n)] * n
    return [rate_approach_IIIB(s, fp, j).value * s.annual_usage for j in range(n)]


def payment_schedule(
    approach: "Approach | str",
    scenario: EquipmentScenario,
    fp: FinancialParams,
    project_years: int,
    mode: str = "nominal",
    horizon: str = "strict",
) -> PaymentSchedule:
    """Yearly payments of ``approach`` over a ``project_years`` project."""
    if mode not in MODES:
        raise ValidationError("mode", f"expected one of {MODES}, got {mode!r}")
    approach = Approach.parse(approach)
    s = replace(scenario, project_years=project_years)
    payments = _nominal_payments(approach, s, fp, horizon)
    if mode == "pv":
        i = fp.real_rate
        payments = [p / (1 + i) ** (j + 1) for j, p in enumerate(payments)]
    return PaymentSchedule(approach, s.project_years, tuple(payments), mode)


def verification_error(schedule: PaymentSchedule, basecase: PaymentSchedule) -> float:
    """Signed relative difference of the totals, ``(total - base) / base``."""
    if schedule.project_years != basecase.project_years:
        raise ValidationError("project_years", "schedules cover different horizons")
    if schedule.mode != basecase.mode:
        raise ValidationError("mode", "schedules use different accumulation modes")
    base_total = basecase.total
    if base_total == 0:
        raise ValidationError("basecase", "base-case total payment is zero")
    return (schedule.total - base_total) / base_total


def gate_errors(
    scenario: EquipmentScenario,
    fp: FinancialParams,
    approaches: Iterable["Approach | str"] = tuple(Approach),
    mode: str = "nominal",
    horizon: str = "strict",
) -> dict[Approach, float]:
    """Verification error of each approach over the scenario's own horizon."""
    n = scenario.project_years
    base = payment_schedule(Approach.I, scenario, fp, n, mode, horizon)
    return {
        Approach.parse(a): verification_error(payment_schedule(a, scenario, fp, n, mode, horizon), base)
        for a in approaches
    }


def verification_study(
    scenario: EquipmentScenario,
    fp: FinancialParams,
    horizons: Sequence[int] = DEFAULT_HORIZONS,
    modes: Sequence[str] = MODES,
    horizon: str = "strict",
) -> list[VerificationRow]:
    """Totals and errors for every (mode, horizon, approach) combination."""
    if not horizons:
        raise ValidationError("horizons", "at least one project horizon is required")
    rows = []
    for mode in modes:
        for years in horizons:
            base = payment_schedule(Approach.I, scenario, fp, years, mode, horizon)
            for approach in Approach:
                sched = base if approach is Approach.I else payment_schedule(
                    approach, scenario, fp, years, mode, horizon
                )
                rows.append(
                    VerificationRow(years, approach, sched.total, verification_error(sched, base), mode)
                )
    return rows
