"""Expected cost, risk and approach ranking over the joint outcome grid.

The two uncertain inputs (economic lifetime, annual usage) are treated as
independent, so the joint probability of a cell is the product of the
marginals. All sums use ``math.fsum``, which is exactly rounded and hence
independent of evaluation order.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterator, Sequence

from .distributions import DiscreteDistribution
from .econ import Approach, EquipmentScenario, FinancialParams, rate, replacement_count
from .errors import EmptyRankingWarning, ValidationError

DEFAULT_GATE_TOLERANCE = 0.015

_APPROACH_ORDER = {a: k for k, a in enumerate(Approach)}


@dataclass(frozen=True)
class Surface:
    """Cost rate for every (lifetime, usage) outcome pair.

    Rows follow the lifetime outcomes, columns the usage outcomes. Indexing
    and iteration go over rows so a ``Surface`` can be used wherever a nested
    sequence of floats is expected.
    """

    approach: Approach
    lifetimes: tuple[float, ...]
    usages: tuple[float, ...]
    cells: tuple[tuple[float, ...], ...]
    replacements: tuple[tuple[int, ...], ...]
    year: int = 0

    def __len__(self) -> int:
        return len(self.cells)

    def __getitem__(self, m: int) -> tuple[float, ...]:
        return self.cells[m]

    def __iter__(self) -> Iterator[tuple[float, ...]]:
        return iter(self.cells)

    def long_rows(self) -> Iterator[tuple[float, float, float]]:
        for life, row in zip(self.lifetimes, self.cells):
            for usage, cost in zip(self.usages, row):
                yield life, usage, cost


@dataclass(frozen=True)
class RiskReport:
    approach: Approach
    expected_cost: float
    risk: float
    surface: Surface
    gate_error: float = 0.0
    gate_passed: bool = True


def sensitivity_surface(
    approach: "Approach | str",
    lifetime_dist: DiscreteDistribution,
    usage_dist: DiscreteDistribution,
    scenario: EquipmentScenario,
    fp: FinancialParams,
    year: int = 0,
    horizon: str = "round",
) -> Surface:
    """Deterministic rate on every outcome pair.

    Each cell re-derives the scenario with that lifetime and annual usage, so
    the replacement count is recomputed per cell. ``horizon`` is forwarded to
    Approach I, whose one-lifetime horizon is rarely a whole number of years
    on an outcome grid.
    """
    approach = Approach.parse(approach)
    cells = []
    reps = []
    for life in lifetime_dist.values:
        row = []
        rep_row = []
        for usage in usage_dist.values:
            cell = scenario.with_usage(life, usage)
            row.append(rate(approach, cell, fp, year=year, horizon=horizon).value)
            rep_row.append(replacement_count(cell))
        cells.append(tuple(row))
        reps.append(tuple(rep_row))
    return Surface(
        approach,
        lifetime_dist.values,
        usage_dist.values,
        tuple(cells),
        tuple(reps),
        year,
    )


def _joint(surface: Sequence[Sequence[float]], lifetime_dist, usage_dist):
    if len(surface) != len(lifetime_dist) or any(len(row) != len(usage_dist) for row in surface):
        raise ValidationError(
            "surface",
            f"expected a {len(lifetime_dist)}x{len(usage_dist)} grid of costs",
        )
    for pm, row in zip(lifetime_dist.probabilities, surface):
        for pn, cost in zip(usage_dist.probabilities, row):
            yield pm * pn, cost


def expected_cost(
    surface: Sequence[Sequence[float]],
    lifetime_dist: DiscreteDistribution,
    usage_dist: DiscreteDistribution,
) -> float:
    return math.fsum(p * c for p, c in _joint(surface, lifetime_dist, usage_dist))


def risk_std(
    surface: Sequence[Sequence[float]],
    lifetime_dist: DiscreteDistribution,
    usage_dist: DiscreteDistribution,
) -> float:
    """Standard deviation of the cost over the joint outcome distribution.

    Evaluated in the centred form ``sqrt(sum p (c - EV)^2)``, which equals
    ``sqrt(E[C^2] - EV^2)`` but cannot go negative and is exactly zero for a
    constant surface.
    """
    pairs = list(_joint(surface, lifetime_dist, usage_dist))
    costs = {c for _, c in pairs}
    if len(costs) == 1:
        return 0.0
    ev = math.fsum(p * c for p, c in pairs)
    return math.sqrt(math.fsum(p * (c - ev) ** 2 for p, c in pairs))


def risk_report(
    approach: "Approach | str",
    lifetime_dist: DiscreteDistribution,
    usage_dist: DiscreteDistribution,
    scenario: EquipmentScenario,
    fp: FinancialParams,
    gate_error: float = 0.0,
    gate_tolerance: float = DEFAULT_GATE_TOLERANCE,
    year: int = 0,
    horizon: str = "round",
) -> RiskReport:
    surface = sensitivity_surface(approach, lifetime_dist, usage_dist, scenario, fp, year, horizon)
    return RiskReport(
        surface.approach,
        expected_cost(surface, lifetime_dist, usage_dist),
        risk_std(surface, lifetime_dist, usage_dist),
        surface,
        gate_error,
        abs(gate_error) <= gate_tolerance,
    )


def rank_approaches(
    reports: Sequence[RiskReport], gate_tolerance: float = DEFAULT_GATE_TOLERANCE
) -> list[RiskReport]:
    """Order the approaches that pass the accuracy gate by ascending risk.

    An approach passes when its total payment differs from the base-case by
    at most ``gate_tolerance`` (relative). Ties are broken by expected cost
    and then by approach id.
    """
    base = [r for r in reports if r.approach is Approach.I]
    if not base:
        raise ValidationError("reports", "the base-case (Approach I) report is required")
    survivors = [r for r in reports if abs(r.gate_error) <= gate_tolerance]
    if not survivors:
        warnings.warn("no approach passed the accuracy gate; keeping the base-case", EmptyRankingWarning)
        return base[:1]
    return sorted(survivors, key=lambda r: (r.risk, r.expected_cost, _APPROACH_ORDER[r.approach]))
