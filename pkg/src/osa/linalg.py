"""Dense exact row reduction over Q and F_p.

Inputs are small (desk-scale matroids), so the routines favour clarity and
exactness: Fractions over Q, ints mod p otherwise, with a packed-bitmask fast
path for F_2 where most of the Groebner oracle time is spent.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .domains import Domain, PrimeField, QQ


def rref(rows: Sequence[Sequence], ncols: int, domain: Domain):
    """Reduced row echelon form over a field.

    Returns (reduced_rows, pivot_columns); reduced rows have pivot entry 1 and
    zeros above and below each pivot, so they are unique for the row space.
    """
    if not domain.is_field():
        raise ValueError(f"row reduction needs a field, got {domain!r}")
    if isinstance(domain, PrimeField):
        if domain.p == 2:
            return _rref_gf2(rows, ncols)
        return _rref_mod(rows, ncols, domain.p)
    return _rref_fraction(rows, ncols)


def rank_of_rows(rows: Sequence[Sequence], ncols: int, domain: Domain) -> int:
    return len(rref(rows, ncols, domain)[1])


def _rref_fraction(rows, ncols):
    m = [[Fraction(v) for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        if inv != 1:
            m[r] = [v * inv for v in m[r]]
        nz = [(j, v) for j, v in enumerate(m[r]) if v]
        for i in range(len(m)):
            f = m[i][c]
            if i != r and f:
                row = m[i]
                for j, v in nz:
                    row[j] -= f * v
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _rref_mod(rows, ncols, p):
    m = [[int(v) % p for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        if inv != 1:
            m[r] = [v * inv % p for v in m[r]]
        nz = [(j, v) for j, v in enumerate(m[r]) if v]
        for i in range(len(m)):
            f = m[i][c]
            if i != r and f:
                row = m[i]
                for j, v in nz:
                    row[j] = (row[j] - f * v) % p
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _rref_gf2(rows, ncols):
    # Pack each row into one int; bit j is column j.
    basis: list[tuple[int, int]] = []  # (pivot column, packed row), pivot ascending
    for row in rows:
        vec = 0
        for j, v in enumerate(row):
            if int(v) & 1:
                vec |= 1 << j
        for pc, b in basis:
            if (vec >> pc) & 1:
                vec ^= b
        if not vec:
            continue
        pc_new = (vec & -vec).bit_length() - 1
        basis = [(pc, b ^ vec if (b >> pc_new) & 1 else b) for pc, b in basis]
        basis.append((pc_new, vec))
        basis.sort()
    reduced = [[(b >> j) & 1 for j in range(ncols)] for _, b in basis]
    return reduced, [pc for pc, _ in basis]


def fraction_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a matrix of exact rationals."""
    if not rows:
        return 0
    return rank_of_rows(rows, len(rows[0]), QQ)
