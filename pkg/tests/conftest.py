import os
from itertools import combinations

import pytest

from osa import Arrangement, Matroid

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")

PAPER_NORMALS = [
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (0, 0, 0, 1),
    (1, 1, 1, 1),
    (1, -1, -1, 1),
]

# Elements 1..6 are x, y, z, t, H, P in that order.
PAPER_LABELS = ("x", "y", "z", "t", "H", "P")

K4_EDGES = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
C5_CHORDS_EDGES = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3), (1, 4)]


def uniform_matroid(rank: int, n: int) -> Matroid:
    return Matroid.from_circuits(n, combinations(range(1, n + 1), rank + 1))


@pytest.fixture(scope="session")
def paper_matroid() -> Matroid:
    return Matroid.from_matrix(Arrangement(PAPER_NORMALS))


@pytest.fixture(scope="session")
def k4_matroid() -> Matroid:
    return Matroid.from_graph(4, K4_EDGES)


@pytest.fixture(scope="session")
def c5_chords_matroid() -> Matroid:
    return Matroid.from_graph(5, C5_CHORDS_EDGES)


@pytest.fixture(scope="session")
def corpus(paper_matroid, k4_matroid, c5_chords_matroid):
    """All corpus matroids keyed by name; n <= 6 except the chorded 5-cycle."""
    return {
        "u23": uniform_matroid(2, 3),
        "u34": uniform_matroid(3, 4),
        "u35": uniform_matroid(3, 5),
        "u46": uniform_matroid(4, 6),
        "k4": k4_matroid,
        "paper": paper_matroid,
        "c5chords": c5_chords_matroid,
    }


@pytest.fixture(scope="session")
def small_corpus(corpus):
    """The n <= 6 matroids used for the all-orders oracle equivalence."""
    return {k: m for k, m in corpus.items() if m.n <= 6}


def data_path(name: str) -> str:
    return os.path.join(DATA_DIR, name)


def golden_path(name: str) -> str:
    return os.path.join(GOLDEN_DIR, name)
