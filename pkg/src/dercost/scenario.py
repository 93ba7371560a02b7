"""Scenario files: TOML documents describing one device and its uncertainty.

Layout::

    kind = "generator"            # or "battery"

    [equipment]                   # EquipmentScenario fields
    capital_cost = 6750.0
    ...

    [financial]                   # FinancialParams fields
    nominal_interest = 0.035
    inflation = 0.015

    [distributions.lifetime]      # type = hypergeometric | extreme_value | discrete
    [distributions.usage]

    [battery]                     # kind = "battery" only
    cycle_life = ...
    u0 = ...
    u1 = ...
    events = "events.csv"         # relative to the scenario file

    [options]                     # defaults for CLI flags
    gate_tolerance = 0.015
    pv = false
    year = 0
    horizons = [4, 8, 12, 16, 20]
    fractional_years = false

See ``docs/scenario_schema.md`` in the repository for every key.
"""
from __future__ import annotations

import hashlib
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .battery import BatterySpec, charge_life
from .distributions import (
    DiscreteDistribution,
    ExtremeValueParams,
    HypergeometricParams,
    build_distribution,
)
from .econ import EquipmentScenario, FinancialParams
from .errors import ValidationError
from .risk import DEFAULT_GATE_TOLERANCE
from .verification import DEFAULT_HORIZONS

SEED_DIR_ENV = "DERCOST_SEED_DIR"
BUNDLED_DIR = Path(__file__).with_name("scenarios")
KINDS = ("generator", "battery")


class ScenarioIOError(OSError):
    """A scenario or a file it references cannot be read."""


@dataclass(frozen=True)
class Options:
    gate_tolerance: float = DEFAULT_GATE_TOLERANCE
    pv: bool = False
    year: int = 0
    horizons: tuple[int, ...] = DEFAULT_HORIZONS
    fractional_years: bool = False


@dataclass(frozen=True)
class Scenario:
    kind: str
    equipment: EquipmentScenario
    financial: FinancialParams
    lifetime: DiscreteDistribution
    usage: DiscreteDistribution
    options: Options = field(default_factory=Options)
    battery: BatterySpec | None = None
    events_path: Path | None = None
    lifetime_params: Any = None
    usage_params: Any = None
    source: str = "<memory>"
    digest: str = ""

    @property
    def unit(self) -> str:
        return "Ah" if self.kind == "battery" else "h"

    @property
    def uses_reconstructed_usage_grid(self) -> bool:
        return self.usage_params == ExtremeValueParams()


def resolve(name: "str | os.PathLike[str]") -> Path:
    """Find a scenario by path, or by name in the seed directory.

    The seed directory is ``$DERCOST_SEED_DIR`` when set, otherwise the
    scenarios bundled with the package. ``.toml`` may be omitted.
    """
    path = Path(name)
    if path.is_file():
        return path
    seed = Path(os.environ.get(SEED_DIR_ENV) or BUNDLED_DIR)
    for candidate in (seed / path.name, seed / f"{path.name}.toml"):
        if candidate.is_file():
            return candidate
    raise ScenarioIOError(f"scenario not found: {name}")


def _section(doc: dict, key: str, required: bool = True) -> dict:
    value = doc.get(key)
    if value is None:
        if required:
            raise ValidationError(key, "section is missing")
        return {}
    if not isinstance(value, dict):
        raise ValidationError(key, "must be a table")
    return value


def _number(table: dict, key: str, prefix: str, default: Any = ..., integer: bool = False):
    if key not in table:
        if default is ...:
            raise ValidationError(f"{prefix}.{key}", "is required")
        return default
    value = table[key]
    ok = isinstance(value, int) if integer else isinstance(value, (int, float))
    if isinstance(value, bool) or not ok:
        kind = "an integer" if integer else "a number"
        raise ValidationError(f"{prefix}.{key}", f"must be {kind}, got {value!r}")
    return value


def _list(table: dict, key: str, prefix: str, default: Any = ..., integer: bool = False) -> tuple:
    if key not in table:
        if default is ...:
            raise ValidationError(f"{prefix}.{key}", "is required")
        return tuple(default)
    value = table[key]
    if not isinstance(value, list):
        raise ValidationError(f"{prefix}.{key}", "must be a list")
    return tuple(_number({key: v}, key, prefix, integer=integer) for v in value)


def _check_keys(table: dict, allowed: set[str], prefix: str) -> None:
    unknown = sorted(set(table) - allowed)
    if unknown:
        raise ValidationError(f"{prefix}.{unknown[0]}", "unknown key")


def _qualified(prefix: str, build, *args, **kwargs):
    try:
        return build(*args, **kwargs)
    except ValidationError as exc:
        if exc.field.startswith(prefix + "."):
            raise
        raise exc.qualified(prefix) from None


def _distribution(table: dict, prefix: str, default):
    if not table:
        return default, build_distribution(default)
    kind = table.get("type")
    if kind == "hypergeometric":
        _check_keys(table, {"type", "population", "successes", "draws", "k_values", "values"}, prefix)
        d = HypergeometricParams()
        params = _qualified(
            prefix,
            HypergeometricParams,
            _number(table, "population", prefix, d.population, integer=True),
            _number(table, "successes", prefix, d.successes, integer=True),
            _number(table, "draws", prefix, d.draws, integer=True),
            _list(table, "k_values", prefix, d.k_values, integer=True),
            _list(table, "values", prefix, d.values),
        )
    elif kind == "extreme_value":
        _check_keys(table, {"type", "location", "scale", "indices", "values"}, prefix)
        d = ExtremeValueParams()
        params = _qualified(
            prefix,
            ExtremeValueParams,
            _number(table, "location", prefix, d.location),
            _number(table, "scale", prefix, d.scale),
            _list(table, "indices", prefix, d.indices),
            _list(table, "values", prefix, d.values),
        )
    elif kind == "discrete":
        _check_keys(table, {"type", "values", "probabilities"}, prefix)
        dist = _qualified(
            prefix,
            DiscreteDistribution,
            _list(table, "values", prefix),
            _list(table, "probabilities", prefix),
        )
        return None, dist
    else:
        raise ValidationError(
            f"{prefix}.type", f"expected hypergeometric, extreme_value or discrete, got {kind!r}"
        )
    return params, _qualified(prefix, build_distribution, params)


def parse_scenario(doc: dict, base_dir: Path = Path("."), source: str = "<memory>", digest: str = "") -> Scenario:
    """Validate a decoded scenario document and build the domain objects."""
    _check_keys(doc, {"kind", "name", "description", "equipment", "financial", "distributions", "battery", "options"}, "scenario")
    kind = doc.get("kind", "generator")
    if kind not in KINDS:
        raise ValidationError("kind", f"expected one of {KINDS}, got {kind!r}")

    battery = None
    events_path = None
    if kind == "battery":
        bt = _section(doc, "battery")
        _check_keys(bt, {"cycle_life", "rated_dod", "rated_capacity", "u0", "u1", "events"}, "battery")
        battery = _qualified(
            "battery",
            BatterySpec,
            _number(bt, "cycle_life", "battery"),
            _number(bt, "rated_dod", "battery"),
            _number(bt, "rated_capacity", "battery"),
            _number(bt, "u0", "battery"),
            _number(bt, "u1", "battery"),
        )
        if "events" in bt:
            if not isinstance(bt["events"], str):
                raise ValidationError("battery.events", "must be a file path")
            events_path = (base_dir / bt["events"]).resolve()

    eq = _section(doc, "equipment")
    _check_keys(
        eq,
        {"capital_cost", "replacement_cost", "salvage_value", "economic_life", "annual_usage", "project_years"},
        "equipment",
    )
    if battery is not None:
        life_default = charge_life(battery)
        usage_default = 1.0 if events_path is not None else ...
    else:
        life_default = usage_default = ...
    equipment = _qualified(
        "equipment",
        EquipmentScenario,
        capital_cost=_number(eq, "capital_cost", "equipment"),
        economic_life=_number(eq, "economic_life", "equipment", life_default),
        annual_usage=_number(eq, "annual_usage", "equipment", usage_default),
        project_years=_number(eq, "project_years", "equipment", integer=True),
        replacement_cost=_number(eq, "replacement_cost", "equipment", None),
        salvage_value=_number(eq, "salvage_value", "equipment", 0.0),
    )

    fin = _section(doc, "financial")
    _check_keys(fin, {"nominal_interest", "inflation"}, "financial")
    financial = _qualified(
        "financial",
        FinancialParams,
        _number(fin, "nominal_interest", "financial"),
        _number(fin, "inflation", "financial"),
    )

    dists = _section(doc, "distributions", required=False)
    _check_keys(dists, {"lifetime", "usage"}, "distributions")
    lifetime_params, lifetime = _distribution(
        _section(dists, "lifetime", required=False), "distributions.lifetime", HypergeometricParams()
    )
    usage_params, usage = _distribution(
        _section(dists, "usage", required=False), "distributions.usage", ExtremeValueParams()
    )

    opt = _section(doc, "options", required=False)
    _check_keys(opt, {"gate_tolerance", "pv", "year", "horizons", "fractional_years"}, "options")
    for flag in ("pv", "fractional_years"):
        if flag in opt and not isinstance(opt[flag], bool):
            raise ValidationError(f"options.{flag}", "must be true or false")
    options = Options(
        gate_tolerance=_number(opt, "gate_tolerance", "options", DEFAULT_GATE_TOLERANCE),
        pv=opt.get("pv", False),
        year=_number(opt, "year", "options", 0, integer=True),
        horizons=_list(opt, "horizons", "options", DEFAULT_HORIZONS, integer=True),
        fractional_years=opt.get("fractional_years", False),
    )
    if options.gate_tolerance < 0:
        raise ValidationError("options.gate_tolerance", "must be >= 0")

    return Scenario(
        kind,
        equipment,
        financial,
        lifetime,
        usage,
        options,
        battery,
        events_path,
        lifetime_params,
        usage_params,
        source,
        digest,
    )


def load_scenario(name: "str | os.PathLike[str]") -> Scenario:
    """Resolve, read and validate a scenario file.

    Raises :class:`ScenarioIOError` when the file cannot be read and
    :class:`~dercost.errors.ValidationError` when its content is invalid.
    """
    path = resolve(name)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ScenarioIOError(f"cannot read scenario {path}: {exc.strerror}") from exc
    try:
        doc = tomllib.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ValidationError("scenario", f"{path} is not valid TOML: {exc}") from exc
    digest = hashlib.sha256(raw).hexdigest()[:16]
    return parse_scenario(doc, path.parent, str(path), digest)
