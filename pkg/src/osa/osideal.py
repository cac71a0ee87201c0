"""Orlik-Solomon ideals: generators, Groebner bases, graded dimensions.

Two independent routes to the reduced Groebner basis are provided: the
combinatorial construction from the circuit selection in
:meth:`osa.matroid.Matroid.forge_circuits`, and a degree-by-degree linear
algebra oracle that row-reduces spanning sets of each graded piece.  Their
agreement is the machine check of the basis theorem this package exists to
exercise.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator

from . import linalg
from .domains import Domain, QQ, ZZ
from .errors import InternalInvariantError
from .exterior import (
    ExtElement,
    VariableOrder,
    boundary_terms,
    divides,
    elements_of,
    initial_monomial,
    inversions,
)
from .matroid import Matroid


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis of the OS ideal for one variable order.

    Elements are monic, homogeneous, and pairwise reduced: no monomial in the
    support of one element is divisible by the leading monomial of another.
    Construction verifies all of that and raises InternalInvariantError on
    violation, since both producers promise it.
    """

    order: VariableOrder
    elements: tuple[ExtElement, ...]
    source: str  # "forge" or "oracle"

    def __post_init__(self):
        one = None
        heads = []
        for g in self.elements:
            if g.is_zero() or g.homogeneous_degree() is None:
                raise InternalInvariantError("basis element not homogeneous nonzero")
            head = initial_monomial(self.order, g)
            if one is None:
                one = g.domain.coerce(1)
            if g.terms[head] != one:
                raise InternalInvariantError("basis element not monic")
            heads.append(head)
        for i, g in enumerate(self.elements):
            for j, h in enumerate(heads):
                if i == j:
                    continue
                if any(divides(h, m) for m in self.elements[i].terms):
                    raise InternalInvariantError(
                        "basis not reduced: "
                        f"in(g{j}) divides a monomial of g{i}"
                    )

    def leading_monomials(self) -> tuple[int, ...]:
        return tuple(initial_monomial(self.order, g) for g in self.elements)

    def reduce(self, f: ExtElement) -> ExtElement:
        from .exterior import normal_form

        return normal_form(f, self.elements, self.order)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class DegreeDims:
    """Exact dimensions of the graded pieces in one degree."""

    degree: int
    ideal: int                 # dim I^q
    decomposable_ideal: int    # dim (Lambda^+ I)^q
    algebra: int               # dim A^q
    decomposable_algebra: int  # dim A_+^q
    quotient: int              # dim (I / Lambda^+ I)^q

    def __post_init__(self):
        checks = (
            self.ideal >= self.decomposable_ideal >= 0,
            self.quotient == self.ideal - self.decomposable_ideal,
            self.decomposable_algebra == self.algebra + self.quotient,
            self.algebra >= 0,
        )
        if not all(checks):
            raise InternalInvariantError(f"inconsistent dimension row {self}")


@dataclass(frozen=True)
class GradedDims:
    """Per-degree dimension table over one coefficient field."""

    field: str
    n: int
    rows: tuple[DegreeDims, ...]  # rows[q] holds degree q

    @property
    def max_degree(self) -> int:
        return len(self.rows) - 1

    def row(self, degree: int) -> DegreeDims:
        return self.rows[degree]

    def quotient_dim(self, degree: int) -> int:
        if degree > self.max_degree:
            raise ValueError(f"degree {degree} beyond computed table")
        return self.rows[degree].quotient


def os_generators(matroid: Matroid, domain: Domain = ZZ) -> list[ExtElement]:
    """Boundaries of all circuits; each homogeneous of degree |C| - 1."""
    return [
        ExtElement(domain, boundary_terms(c)) for c in matroid.circuits
    ]


def _sorted_canonically(order: VariableOrder, elements) -> tuple[ExtElement, ...]:
    return tuple(
        sorted(elements, key=lambda g: order.monomial_key(initial_monomial(order, g)))
    )


def forge_basis(
    matroid: Matroid, order: VariableOrder, domain: Domain = QQ
) -> GroebnerBasis:
    """The combinatorial reduced Groebner basis: circuit boundaries, made monic."""
    elements = []
    for c in matroid.forge_circuits(order):
        f = ExtElement(domain, boundary_terms(c))
        lc = f.terms[initial_monomial(order, f)]
        elements.append(f.scale(domain.invert(lc)))
    return GroebnerBasis(order, _sorted_canonically(order, elements), "forge")


def degree_monomials(n: int, degree: int) -> list[int]:
    """All degree-d monomial masks over [n], in lexicographic element order."""
    out = []
    for combo in combinations(range(1, n + 1), degree):
        m = 0
        for e in combo:
            m |= 1 << (e - 1)
        out.append(m)
    return out


def _spanning_products(
    matroid: Matroid, degree: int, skip_empty: bool
) -> Iterator[dict[int, int]]:
    """Sparse integer vectors e_S ^ d(e_C) spanning I^q (or its decomposable part).

    Products with |S & C| >= 2 vanish and are skipped; exact duplicates (up to
    sign) are emitted once.
    """
    n = matroid.n
    seen: set[tuple] = set()
    for c in matroid.circuits:
        csize = c.bit_count()
        ssize = degree - csize + 1
        if ssize < 0 or (skip_empty and ssize == 0):
            continue
        bnd = boundary_terms(c)
        for combo in combinations(range(1, n + 1), ssize):
            s = 0
            for e in combo:
                s |= 1 << (e - 1)
            if (s & c).bit_count() > 1:
                continue
            vec: dict[int, int] = {}
            for m, sign in bnd:
                if m & s:
                    continue
                vec[s | m] = -sign if inversions(s, m) & 1 else sign
            if not vec:
                continue
            key = tuple(sorted(vec.items()))
            if key[0][1] < 0:
                key = tuple((m, -v) for m, v in key)
            if key in seen:
                continue
            seen.add(key)
            yield vec


def degree_generator_vectors(
    matroid: Matroid, degree: int, decomposable_only: bool = False
) -> tuple[list[list[int]], list[int]]:
    """Dense integer rows spanning I^q (or (Lambda^+ I)^q) and their columns.

    Columns are the degree-q monomials in canonical lexicographic order, so
    the rows double as integer presentations for the torsion computations.
    """
    cols = degree_monomials(matroid.n, degree)
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for vec in _spanning_products(matroid, degree, decomposable_only):
        row = [0] * len(cols)
        for m, v in vec.items():
            row[index[m]] = v
        rows.append(row)
    return rows, cols


def reduced_gb_oracle(
    matroid: Matroid, order: VariableOrder, domain: Domain = QQ
) -> GroebnerBasis:
    """Reduced Groebner basis by degreewise row reduction, independent of forge.

    For each degree the spanning products of the ideal are row-reduced against
    the monomial order (columns sorted descending); echelon rows whose pivot
    monomial is not divisible by a lower-degree leading monomial are exactly
    the new reduced basis elements.
    """
    if not domain.is_field():
        raise ValueError(f"the Groebner oracle needs a field, got {domain!r}")
    n = matroid.n
    heads: list[int] = []
    elements: list[ExtElement] = []
    min_degree = min((c.bit_count() - 1 for c in matroid.circuits), default=n + 1)
    for degree in range(min_degree, n + 1):
        sparse = list(_spanning_products(matroid, degree, False))
        if not sparse:
            continue
        cols = sorted(
            degree_monomials(n, degree), key=order.monomial_key, reverse=True
        )
        index = {m: i for i, m in enumerate(cols)}
        rows = []
        for vec in sparse:
            row = [0] * len(cols)
            for m, v in vec.items():
                row[index[m]] = v
            rows.append(row)
        reduced, pivots = linalg.rref(rows, len(cols), domain)
        new_heads = []
        for row, p in zip(reduced, pivots):
            head = cols[p]
            if any(divides(h, head) for h in heads):
                continue
            elements.append(
                ExtElement(domain, [(cols[j], v) for j, v in enumerate(row) if v])
            )
            new_heads.append(head)
        heads.extend(new_heads)
    return GroebnerBasis(order, _sorted_canonically(order, elements), "oracle")


def graded_dims(
    matroid: Matroid, domain: Domain = QQ, max_degree: int | None = None
) -> GradedDims:
    """Exact dimension table of I, Lambda^+ I, A, A_+ and I/Lambda^+ I.

    Defaults to degrees 0..rank+1; pass max_degree up to n for the full table
    (the quotient vanishes above the rank either way).
    """
    if not domain.is_field():
        raise ValueError(f"graded dimensions need a field, got {domain!r}")
    if max_degree is None:
        max_degree = min(matroid.full_rank + 1, matroid.n)
    if max_degree > matroid.n:
        raise ValueError(f"max_degree {max_degree} exceeds n = {matroid.n}")
    rows = []
    for q in range(max_degree + 1):
        full, cols = degree_generator_vectors(matroid, q)
        dim_ideal = linalg.rank_of_rows(full, len(cols), domain) if full else 0
        dec, _ = degree_generator_vectors(matroid, q, decomposable_only=True)
        dim_dec = linalg.rank_of_rows(dec, len(cols), domain) if dec else 0
        total = comb(matroid.n, q)
        rows.append(
            DegreeDims(
                degree=q,
                ideal=dim_ideal,
                decomposable_ideal=dim_dec,
                algebra=total - dim_ideal,
                decomposable_algebra=total - dim_dec,
                quotient=dim_ideal - dim_dec,
            )
        )
    return GradedDims(field=domain.tag, n=matroid.n, rows=tuple(rows))


def decomposable_dim_by_counting(
    matroid: Matroid, degree: int, order: VariableOrder
) -> int:
    """Number of (degree+1)-circuits in the forge basis for this order.

    Equals dim (I/Lambda^+ I)^q exactly when the order attains the minimum of
    that count over all variable orders; for every order it is an upper bound.
    """
    return sum(
        1 for c in matroid.forge_circuits(order) if c.bit_count() == degree + 1
    )


def nbc_dimension_check(
    matroid: Matroid, order: VariableOrder, domain: Domain = QQ
) -> bool:
    """True iff the nbc-set count matches dim A^q in every degree."""
    table = graded_dims(matroid, domain, max_degree=matroid.n)
    return all(
        len(matroid.nbc_sets(order, q)) == table.rows[q].algebra
        for q in range(matroid.n + 1)
    )


__all__ = [
    "GroebnerBasis",
    "DegreeDims",
    "GradedDims",
    "os_generators",
    "forge_basis",
    "reduced_gb_oracle",
    "graded_dims",
    "decomposable_dim_by_counting",
    "nbc_dimension_check",
    "degree_generator_vectors",
    "degree_monomials",
]
