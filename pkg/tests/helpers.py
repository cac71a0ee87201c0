"""Independent oracles and random generators shared by the test modules.

Everything here deliberately avoids the code paths under test: ranks come
from exhaustive subset enumeration or Fraction elimination written inline,
chordless cycles come from networkx, and ideal membership is a rank check.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import networkx as nx

from osa import ExtElement, Matroid, VariableOrder
from osa.domains import Domain


def random_mask(rng: random.Random, n: int) -> int:
    return rng.randrange(1 << n)


def random_element(
    rng: random.Random, domain: Domain, n: int, max_terms: int = 4
) -> ExtElement:
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        coeff = rng.randint(-6, 6)
        terms.append((random_mask(rng, n), coeff))
    return ExtElement(domain, terms)


def random_homogeneous(
    rng: random.Random, domain: Domain, n: int, degree: int, max_terms: int = 4
) -> ExtElement:
    population = list(combinations(range(1, n + 1), degree))
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        combo = rng.choice(population)
        mask = 0
        for e in combo:
            mask |= 1 << (e - 1)
        terms.append((mask, rng.randint(-6, 6)))
    return ExtElement(domain, terms)


def random_order(rng: random.Random, n: int) -> VariableOrder:
    return VariableOrder.from_sequence(rng.sample(range(1, n + 1), n))


def brute_force_rank(matroid: Matroid, subset_mask: int) -> int:
    """Max size of an independent subset, by enumerating all subsets."""
    elements = [e for e in range(1, matroid.n + 1) if subset_mask >> (e - 1) & 1]
    best = 0
    for size in range(len(elements), 0, -1):
        if size <= best:
            break
        for combo in combinations(elements, size):
            mask = 0
            for e in combo:
                mask |= 1 << (e - 1)
            if all(c & ~mask for c in matroid.circuits):
                best = size
                break
    return best


def fraction_matrix_rank(rows) -> int:
    """Gaussian elimination over Fraction, written out independently."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def chordless_cycle_census(vertices: int, edges) -> dict[int, int]:
    """Sizes of chordless cycles, via networkx (independent of the matroid code)."""
    graph = nx.Graph()
    graph.add_nodes_from(range(1, vertices + 1))
    graph.add_edges_from(edges)
    census: dict[int, int] = {}
    for cycle in nx.chordless_cycles(graph):
        census[len(cycle)] = census.get(len(cycle), 0) + 1
    return census


def element_vector(f: ExtElement, cols: list[int]):
    index = {m: i for i, m in enumerate(cols)}
    row = [0] * len(cols)
    for m, c in f.terms.items():
        row[index[m]] = c
    return row


def in_rational_span(rows, vec) -> bool:
    """Membership of vec in the row space, by a rank comparison over Q."""
    if not rows:
        return all(v == 0 for v in vec)
    base = fraction_matrix_rank(rows)
    return fraction_matrix_rank(list(rows) + [vec]) == base
