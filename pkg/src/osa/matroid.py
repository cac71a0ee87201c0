"""Simple matroids presented by circuits, exact rational matrices, or graphs.

Ground sets are [n] and subsets are int bitmasks throughout (see
:mod:`osa.exterior`).  Circuit lists are kept canonical: sorted by length,
then lexicographically by element tuple.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from . import linalg
from .exterior import VariableOrder, elements_of, mask_from


class MatroidError(ValueError):
    pass


class NonSimpleError(MatroidError):
    """Input has loops, parallel elements, or circuits of size < 3."""


class AntichainViolationError(MatroidError):
    """One listed circuit contains another."""


class IncompleteCircuitsError(MatroidError):
    """Weak circuit elimination produced a dependent set with no listed circuit."""


def as_mask(subset) -> int:
    """Accept either a bitmask or an iterable of 1-based elements."""
    if isinstance(subset, int):
        return subset
    return mask_from(subset)


def _circuit_sort_key(mask: int):
    return (mask.bit_count(), elements_of(mask))


class Matroid:
    """A simple matroid on [n], presented by its complete set of circuits.

    Immutable after construction; rank and closure are pure functions of the
    circuit list (a set is independent iff it contains no circuit).
    """

    __slots__ = ("n", "circuits", "_circuit_set", "full_rank")

    def __init__(self, n: int, circuits: Iterable[int]):
        if n < 0 or n > 64:
            raise MatroidError(f"ground-set size {n} out of range 0..64")
        masks = sorted({as_mask(c) for c in circuits}, key=_circuit_sort_key)
        _validate_circuits(n, masks)
        self.n = n
        self.circuits = tuple(masks)
        self._circuit_set = frozenset(masks)
        self.full_rank = _greedy_rank(self.circuits, (1 << n) - 1)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_circuits(cls, n: int, circuits: Iterable) -> "Matroid":
        """Build from an explicit circuit list (trusted to be complete)."""
        return cls(n, [as_mask(c) for c in circuits])

    @classmethod
    def from_matrix(cls, arrangement: "Arrangement") -> "Matroid":
        """Circuits are the minimal linearly dependent row subsets."""
        rows = arrangement.normals
        n = len(rows)
        full_rank = linalg.fraction_rank(rows)
        circuits: list[int] = []
        for size in range(3, min(n, full_rank + 1) + 1):
            for combo in combinations(range(1, n + 1), size):
                mask = mask_from(combo)
                if any(c & ~mask == 0 for c in circuits):
                    continue
                sub = [rows[i - 1] for i in combo]
                if linalg.fraction_rank(sub) < size:
                    circuits.append(mask)
        return cls(n, circuits)

    @classmethod
    def from_graph(cls, vertices: int, edges: Sequence[tuple[int, int]]) -> "Matroid":
        """Graphic matroid: ground set = edges, circuits = simple cycles."""
        seen = set()
        graph = nx.Graph()
        graph.add_nodes_from(range(1, vertices + 1))
        edge_index: dict[frozenset[int], int] = {}
        for k, (u, v) in enumerate(edges, start=1):
            if u == v:
                raise NonSimpleError(f"loop at vertex {u}")
            if not (1 <= u <= vertices and 1 <= v <= vertices):
                raise MatroidError(f"edge ({u},{v}) out of vertex range 1..{vertices}")
            key = frozenset((u, v))
            if key in seen:
                raise NonSimpleError(f"duplicate edge ({u},{v})")
            seen.add(key)
            graph.add_edge(u, v)
            edge_index[key] = k
        circuits = []
        for cycle in nx.simple_cycles(graph):
            pairs = zip(cycle, cycle[1:] + cycle[:1])
            circuits.append(mask_from(edge_index[frozenset(p)] for p in pairs))
        return cls(len(edges), circuits)

    # -- oracles -----------------------------------------------------------

    def is_independent(self, subset) -> bool:
        mask = as_mask(subset)
        return all(c & ~mask for c in self.circuits)

    def is_circuit(self, subset) -> bool:
        return as_mask(subset) in self._circuit_set

    def rank(self, subset) -> int:
        """Size of a maximal independent subset (greedy, valid for matroids)."""
        return _greedy_rank(self.circuits, as_mask(subset))

    def closure(self, subset) -> int:
        """Bitmask of all elements whose addition does not raise the rank."""
        mask = as_mask(subset)
        r = self.rank(mask)
        out = 0
        for e in range(1, self.n + 1):
            bit = 1 << (e - 1)
            if bit & mask or self.rank(mask | bit) == r:
                out |= bit
        return out

    def active_elements(self, independent, order: VariableOrder) -> int:
        """Elements i whose addition to I creates a circuit with order-min i."""
        mask = as_mask(independent)
        if not self.is_independent(mask):
            raise ValueError(f"{elements_of(mask)} is dependent")
        active = 0
        for c in self.circuits:
            rest = c & ~mask
            if rest and not (rest & (rest - 1)):  # exactly one element outside I
                e = rest.bit_length()
                if order.min_element(c) == e:
                    active |= rest
        return active

    def alpha(self, circuit, order: VariableOrder) -> int:
        """Smallest active element for the broken circuit of a circuit."""
        mask = as_mask(circuit)
        if mask not in self._circuit_set:
            raise ValueError(f"{elements_of(mask)} is not a circuit")
        inf = order.min_element(mask)
        active = self.active_elements(mask ^ (1 << (inf - 1)), order)
        return order.min_element(active)

    def forge_circuits(self, order: VariableOrder) -> tuple[int, ...]:
        """Circuits whose boundaries form the reduced Groebner basis for order.

        Selects circuits whose order-minimum equals its smallest active
        element, then keeps those whose broken circuit is inclusion-minimal
        within that candidate set.
        """
        ranks = order.ranks
        candidates = []
        for c in self.circuits:
            inf = order.min_element(c)
            inf_rank = ranks[inf - 1]
            without_inf = c ^ (1 << (inf - 1))
            ok = True
            for c2 in self.circuits:
                rest = c2 & ~without_inf
                if rest and not (rest & (rest - 1)):
                    e = rest.bit_length()
                    if ranks[e - 1] < inf_rank and order.min_element(c2) == e:
                        ok = False
                        break
            if ok:
                candidates.append((c, without_inf))
        kept = []
        for c, broken in candidates:
            minimal = True
            for _, other in candidates:
                if other != broken and other & ~broken == 0:
                    minimal = False
                    break
            if minimal:
                kept.append(c)
        return tuple(sorted(kept, key=_circuit_sort_key))

    def broken_circuits(self, order: VariableOrder) -> tuple[int, ...]:
        """All broken circuits C minus its order-minimum, one per circuit."""
        return tuple(
            c ^ (1 << (order.min_element(c) - 1)) for c in self.circuits
        )

    def nbc_sets(self, order: VariableOrder, degree: int) -> tuple[int, ...]:
        """All subsets of the given size containing no broken circuit."""
        brokens = set(self.broken_circuits(order))
        out = []
        for combo in combinations(range(1, self.n + 1), degree):
            mask = mask_from(combo)
            if all(b & ~mask for b in brokens):
                out.append(mask)
        return tuple(out)

    def homotopy_degree(self):
        """(min length of a circuit longer than 3) - 2, or None.

        For a hypersolvable non-supersolvable arrangement this is the degree
        of the first nontrivial higher homotopy group of the complement;
        recognizing that class is the caller's responsibility.
        """
        lengths = [c.bit_count() for c in self.circuits if c.bit_count() > 3]
        if not lengths:
            return None
        return min(lengths) - 2

    def circuit_census(self) -> dict[int, int]:
        census: dict[int, int] = {}
        for c in self.circuits:
            size = c.bit_count()
            census[size] = census.get(size, 0) + 1
        return census

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and other.n == self.n
            and other.circuits == self.circuits
        )

    def __hash__(self):
        return hash((self.n, self.circuits))

    def __repr__(self):
        return f"Matroid(n={self.n}, circuits={[elements_of(c) for c in self.circuits]})"


def _greedy_rank(circuits: Sequence[int], mask: int) -> int:
    picked = 0
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        trial = picked | low
        if all(c & ~trial for c in circuits):
            picked = trial
    return picked.bit_count()


def _validate_circuits(n: int, masks: Sequence[int]) -> None:
    universe = (1 << n) - 1
    for c in masks:
        if c & ~universe:
            raise MatroidError(
                f"circuit {elements_of(c)} leaves the ground set 1..{n}"
            )
        if c.bit_count() < 3:
            raise NonSimpleError(
                f"circuit {elements_of(c)} has fewer than 3 elements; "
                "simple matroids have none"
            )
    for a, b in combinations(masks, 2):
        if a & ~b == 0 or b & ~a == 0:
            raise AntichainViolationError(
                f"circuit {elements_of(a)} is comparable with {elements_of(b)}"
            )
    # Weak elimination: (C1 u C2) - e must contain a listed circuit for every
    # common element e.  A complete circuit list always passes.
    for a, b in combinations(masks, 2):
        common = a & b
        union = a | b
        while common:
            low = common & -common
            common ^= low
            target = union ^ low
            if not any(c & ~target == 0 for c in masks):
                raise IncompleteCircuitsError(
                    f"no circuit inside {elements_of(target)}; the circuit "
                    "list does not satisfy weak elimination"
                )


class Arrangement:
    """An essential list of hyperplane normals with exact rational entries."""

    __slots__ = ("normals",)

    def __init__(self, normals: Sequence[Sequence]):
        rows = [tuple(Fraction(v) for v in row) for row in normals]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise MatroidError("normal vectors have inconsistent lengths")
        if rows and len(rows[0]) < 1:
            raise MatroidError("ambient dimension must be at least 1")
        for i, r in enumerate(rows, start=1):
            if not any(r):
                raise NonSimpleError(f"row {i} is zero")
        for (i, r1), (j, r2) in combinations(enumerate(rows, start=1), 2):
            if _proportional(r1, r2):
                raise NonSimpleError(f"rows {i} and {j} are proportional")
        self.normals = tuple(rows)

    def __len__(self):
        return len(self.normals)

    def matroid(self) -> Matroid:
        return Matroid.from_matrix(self)


def _proportional(r1, r2) -> bool:
    for a, b in zip(r1, r2):
        if (a == 0) != (b == 0):
            return False
    for (a1, b1), (a2, b2) in combinations(zip(r1, r2), 2):
        if a1 * b2 != a2 * b1:
            return False
    return True
