"""Optimization over variable orders.

Exhaustive sweeps enumerate permutations in lexicographic order and keep the
first minimizer, so results are deterministic; random sampling draws uniform
permutations from an explicitly seeded generator and reports the seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator

from .domains import GF, QQ, Domain
from .exterior import VariableOrder
from .matroid import Matroid
from .osideal import graded_dims

EXHAUSTIVE_LIMIT = 8  # 8! = 40320 orders; beyond this demand random sampling


@dataclass(frozen=True)
class Exhaustive:
    def describe(self) -> str:
        return "exhaustive"


@dataclass(frozen=True)
class RandomSampling:
    seed: int
    samples: int

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("sample count must be positive")

    def describe(self) -> str:
        return f"random(seed={self.seed}, samples={self.samples})"


Strategy = Exhaustive | RandomSampling


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a sweep over variable orders.

    ``histogram`` maps an objective value to the number of examined orders
    attaining it, as sorted (value, count) pairs.
    """

    degree: int | None
    best_order: VariableOrder
    best_count: int
    orders_examined: int
    strategy: str
    histogram: tuple[tuple[int, int], ...]

    def histogram_dict(self) -> dict[int, int]:
        return dict(self.histogram)


def _length_census(matroid: Matroid, sequence: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    order = VariableOrder.from_sequence(sequence)
    census: dict[int, int] = {}
    for c in matroid.forge_circuits(order):
        size = c.bit_count()
        census[size] = census.get(size, 0) + 1
    return tuple(sorted(census.items()))


@lru_cache(maxsize=4)
def _exhaustive_censuses(matroid: Matroid):
    return tuple(
        (seq, _length_census(matroid, seq))
        for seq in permutations(range(1, matroid.n + 1))
    )


def _sweep(matroid: Matroid, strategy: Strategy) -> Iterator[tuple[tuple[int, ...], dict[int, int]]]:
    if isinstance(strategy, Exhaustive):
        if matroid.n > EXHAUSTIVE_LIMIT:
            raise ValueError(
                f"exhaustive search over {matroid.n}! orders refused (n > "
                f"{EXHAUSTIVE_LIMIT}); use RandomSampling(seed, samples) instead"
            )
        for seq, census in _exhaustive_censuses(matroid):
            yield seq, dict(census)
    elif isinstance(strategy, RandomSampling):
        rng = random.Random(strategy.seed)
        population = list(range(1, matroid.n + 1))
        for _ in range(strategy.samples):
            seq = tuple(rng.sample(population, len(population)))
            yield seq, dict(_length_census(matroid, seq))
    else:
        raise TypeError(f"unknown strategy {strategy!r}")


def _minimize(matroid: Matroid, strategy: Strategy, objective, degree):
    best_seq = None
    best = None
    histogram: dict[int, int] = {}
    examined = 0
    for seq, census in _sweep(matroid, strategy):
        value = objective(census)
        histogram[value] = histogram.get(value, 0) + 1
        examined += 1
        if best is None or value < best:
            best, best_seq = value, seq
    if best_seq is None:
        raise ValueError("no orders examined")
    return SearchResult(
        degree=degree,
        best_order=VariableOrder.from_sequence(best_seq),
        best_count=best,
        orders_examined=examined,
        strategy=strategy.describe(),
        histogram=tuple(sorted(histogram.items())),
    )


def minimize_forge_count(
    matroid: Matroid, degree: int, strategy: Strategy = Exhaustive()
) -> SearchResult:
    """Order minimizing the number of (degree+1)-circuits in the forge basis."""
    return _minimize(
        matroid, strategy, lambda census: census.get(degree + 1, 0), degree
    )


def minimize_total_gb_size(
    matroid: Matroid, strategy: Strategy = Exhaustive()
) -> SearchResult:
    """Order minimizing the total reduced Groebner basis cardinality."""
    return _minimize(
        matroid, strategy, lambda census: sum(census.values()), None
    )


def verify_proposition(
    matroid: Matroid,
    degree: int,
    fields: Iterable[Domain] = (QQ, GF(2), GF(3)),
) -> bool:
    """Check the counting isomorphism for one degree, exhaustively.

    True iff the exhaustive minimum of the (degree+1)-circuit count equals
    dim (I/Lambda^+ I)^degree over every requested field, and no examined
    order dips below that dimension.
    """
    result = minimize_forge_count(matroid, degree, Exhaustive())
    for field in fields:
        if degree > matroid.n:
            dim = 0
        else:
            dim = graded_dims(matroid, field, max_degree=degree).quotient_dim(degree)
        if result.best_count != dim:
            return False
        if any(value < dim for value, _ in result.histogram):
            return False
    return True


__all__ = [
    "Exhaustive",
    "RandomSampling",
    "SearchResult",
    "minimize_forge_count",
    "minimize_total_gb_size",
    "verify_proposition",
    "EXHAUSTIVE_LIMIT",
]
