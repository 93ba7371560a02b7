"""Ownership-cost, uncertainty and risk analysis for distributed energy resources."""

__version__ = "0.1.0"

from .battery import (
    BatterySpec,
    DischargeEvent,
    annual_effective_ah,
    battery_cost_per_effective_ah,
    charge_life,
    effective_discharge,
)
from .distributions import (
    DiscreteDistribution,
    ExtremeValueParams,
    HypergeometricParams,
    build_distribution,
    extreme_value_density,
    hypergeometric_pmf,
)
from .econ import (
    Approach,
    CostRate,
    EquipmentScenario,
    FinancialParams,
    capital_recovery_factor,
    depreciation_cost,
    euac,
    purchase_cost_with_replacements,
    rate,
    rate_approach_I,
    rate_approach_II,
    rate_approach_IIIA,
    rate_approach_IIIB,
    real_interest_rate,
    replacement_count,
)
from .errors import ValidationError
from .risk import RiskReport, expected_cost, rank_approaches, risk_std, sensitivity_surface
from .verification import PaymentSchedule, payment_schedule, verification_error, verification_study

__all__ = [
    "Approach",
    "BatterySpec",
    "CostRate",
    "DiscreteDistribution",
    "DischargeEvent",
    "EquipmentScenario",
    "ExtremeValueParams",
    "FinancialParams",
    "HypergeometricParams",
    "PaymentSchedule",
    "RiskReport",
    "ValidationError",
    "annual_effective_ah",
    "battery_cost_per_effective_ah",
    "build_distribution",
    "capital_recovery_factor",
    "charge_life",
    "depreciation_cost",
    "effective_discharge",
    "euac",
    "expected_cost",
    "extreme_value_density",
    "hypergeometric_pmf",
    "payment_schedule",
    "purchase_cost_with_replacements",
    "rank_approaches",
    "rate",
    "rate_approach_I",
    "rate_approach_II",
    "rate_approach_IIIA",
    "rate_approach_IIIB",
    "real_interest_rate",
    "replacement_count",
    "risk_std",
    "sensitivity_surface",
    "verification_error",
    "verification_study",
]
