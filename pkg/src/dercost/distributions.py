"""Discrete probability distributions for equipment lifetime and annual usage.

Lifetime outcomes are weighted by a hypergeometric pmf and annual usage by a
minimum-type (type 1) extreme value density. Each weight is attached to a
value on a usage grid, and the truncated weights are renormalized to a proper
distribution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import ValidationError

MAX_OUTCOMES = 12
_SUM_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteDistribution:
    values: tuple[float, ...]
    probabilities: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        probs = tuple(float(p) for p in self.probabilities)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probabilities", probs)
        if not values:
            raise ValidationError("values", "distribution needs at least one outcome")
        if len(values) != len(probs):
            raise ValidationError("probabilities", "must have one entry per value")
        if len(values) > MAX_OUTCOMES:
            raise ValidationError("values", f"at most {MAX_OUTCOMES} outcomes are supported")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValidationError("values", "must be strictly increasing")
        if any(not (0 < p <= 1) for p in probs):
            raise ValidationError("probabilities", "each probability must lie in (0, 1]")
        if abs(math.fsum(probs) - 1) > _SUM_TOL:
            raise ValidationError("probabilities", "must sum to 1")

    @classmethod
    def degenerate(cls, value: float) -> "DiscreteDistribution":
        return cls((value,), (1.0,))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return iter(zip(self.values, self.probabilities))

    @property
    def mode(self) -> float:
        best = max(range(len(self)), key=lambda k: self.probabilities[k])
        return self.values[best]

    @property
    def mean(self) -> float:
        return math.fsum(v * p for v, p in self)


@dataclass(frozen=True)
class HypergeometricParams:
    """Hypergeometric weights on ``k_values`` mapped onto ``values``.

    Defaults reproduce the generator lifetime grid: ``k = 0..5`` drawn from
    ``N = 70, K = 14, n = 10`` mapped to 15000..20000 h, peaking at 17000 h.
    """

    population: int = 70
    successes: int = 14
    draws: int = 10
    k_values: tuple[int, ...] = (0, 1, 2, 3, 4, 5)
    values: tuple[float, ...] = (15000.0, 16000.0, 17000.0, 18000.0, 19000.0, 20000.0)

    def __post_init__(self):
        object.__setattr__(self, "k_values", tuple(int(k) for k in self.k_values))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.population < 0:
            raise ValidationError("population", "must be >= 0")
        if not 0 <= self.successes <= self.population:
            raise ValidationError("successes", "must lie in [0, population]")
        if not 0 <= self.draws <= self.population:
            raise ValidationError("draws", "must lie in [0, population]")
        if not self.k_values:
            raise ValidationError("k_values", "grid is empty")
        if len(self.k_values) != len(self.values):
            raise ValidationError("values", "must have one entry per k value")


@dataclass(frozen=True)
class ExtremeValueParams:
    """Minimum-Gumbel weights on ``indices`` mapped onto ``values``.

    The default grid (indices 1..5 onto 7300..8100 h around a 7700 h anchor)
    is a reconstruction; override it in the scenario file when better data
    exists.
    """

    location: float = 3.0
    scale: float = 1.5
    indices: tuple[float, ...] = (1.0, 2.0, 3.0, 4.0, 5.0)
    values: tuple[float, ...] = (7300.0, 7500.0, 7700.0, 7900.0, 8100.0)

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(float(x) for x in self.indices))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.scale > 0:
            raise ValidationError("scale", "must be > 0")
        if not self.indices:
            raise ValidationError("indices", "grid is empty")
        if len(self.indices) != len(self.values):
            raise ValidationError("values", "must have one entry per index")


def hypergeometric_pmf_exact(N: int, K: int, n: int, k: int) -> Fraction:
    """``C(K,k) C(N-K,n-k) / C(N,n)`` as an exact fraction; zero off-support."""
    if not (0 <= K <= N and 0 <= n <= N):
        raise ValidationError("population", f"invalid hypergeometric parameters N={N}, K={K}, n={n}")
    if k < max(0, n + K - N) or k > min(n, K):
        return Fraction(0)
    return Fraction(math.comb(K, k) * math.comb(N - K, n - k), math.comb(N, n))


def hypergeometric_pmf(N: int, K: int, n: int, k: int) -> float:
    return float(hypergeometric_pmf_exact(N, K, n, k))


def extreme_value_density(x: float, mu: float, sigma: float) -> float:
    """Minimum-type Gumbel density ``exp(z - exp(z)) / sigma``, ``z = (x-mu)/sigma``."""
    if not sigma > 0:
        raise ValidationError("scale", "must be > 0")
    z = (x - mu) / sigma
    # Combined exponent avoids inf * 0 far in the right tail.
    return math.exp(z - math.exp(z)) / sigma if z < 700 else 0.0


def _from_weights(values: Sequence[float], weights: Sequence[float]) -> DiscreteDistribution:
    total = math.fsum(weights)
    if total <= 0:
        raise ValidationError("values", "all probability mass lies outside the grid")
    kept = [(v, w / total) for v, w in zip(values, weights) if w > 0]
    order = sorted(kept)
    return DiscreteDistribution(tuple(v for v, _ in order), tuple(p for _, p in order))


def build_distribution(params: "HypergeometricParams | ExtremeValueParams") -> DiscreteDistribution:
    """Evaluate the weights on the grid and renormalize the truncated mass.

    Mass outside the grid is dropped, i.e. the result is the distribution
    conditioned on landing on the grid. Grid points carrying zero weight are
    dropped too.
    """
    if isinstance(params, HypergeometricParams):
        exact = [
            hypergeometric_pmf_exact(params.population, params.successes, params.draws, k)
            for k in params.k_values
        ]
        total = sum(exact, Fraction(0))
        if total == 0:
            raise ValidationError("k_values", "all probability mass lies outside the grid")
        return _from_weights(params.values, [float(w / total) for w in exact])
    if isinstance(params, ExtremeValueParams):
        weights = [extreme_value_density(x, params.location, params.scale) for x in params.indices]
        return _from_weights(params.values, weights)
    raise TypeError(f"unsupported distribution parameters: {type(params).__name__}")
