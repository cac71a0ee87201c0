"""Integer presentations and Smith-normal-form torsion certificates.

The decomposable OS algebra A_+^q is the cokernel of the integer matrix whose
rows are the decomposable generators written in the degree-q monomial basis;
the quotient I/Lambda^+ I is presented in coordinates of a Hermite basis of
the full ideal lattice.  All arithmetic is arbitrary-precision integer, with
SNF pivoting on minimal absolute value to contain entry growth.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd

from .domains import GF, QQ, Domain
from .errors import InternalInvariantError
from .matroid import Matroid
from .osideal import GradedDims, degree_generator_vectors, graded_dims


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix; rows may be empty (shape is kept explicitly)."""

    rows: tuple[tuple[int, ...], ...]
    cols: int

    @classmethod
    def from_rows(cls, rows, cols: int) -> "IntMatrix":
        packed = tuple(tuple(int(v) for v in row) for row in rows)
        for row in packed:
            if len(row) != cols:
                raise ValueError("row length does not match column count")
        return cls(packed, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.cols)

    def scaled(self, factor: int) -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(v * factor for v in row) for row in self.rows), self.cols
        )


@dataclass(frozen=True)
class SNFResult:
    """Elementary divisors d1 | d2 | ... | dr of an integer matrix."""

    divisors: tuple[int, ...]
    rank: int
    shape: tuple[int, int]

    def __post_init__(self):
        if self.rank != len(self.divisors):
            raise InternalInvariantError("rank must equal the divisor count")
        if self.rank > min(self.shape):
            raise InternalInvariantError("rank exceeds matrix shape")
        for d in self.divisors:
            if d <= 0:
                raise InternalInvariantError(f"nonpositive divisor {d}")
        for a, b in zip(self.divisors, self.divisors[1:]):
            if b % a:
                raise InternalInvariantError(f"broken divisor chain {self.divisors}")

    @property
    def torsion_free(self) -> bool:
        return all(d == 1 for d in self.divisors)

    @property
    def cokernel_free_rank(self) -> int:
        """Free rank of Z^cols modulo the row span."""
        return self.shape[1] - self.rank


def smith_normal_form(matrix: IntMatrix) -> SNFResult:
    """Smith normal form by unimodular row/column operations.

    Pivots are chosen by minimal absolute value; remainders are swapped into
    the pivot slot, so the pivot strictly shrinks and the loop terminates.
    """
    a = [list(row) for row in matrix.rows]
    nrows = len(a)
    ncols = matrix.cols
    divisors: list[int] = []
    t = 0
    while t < nrows and t < ncols:
        pos = _min_abs_position(a, t, nrows, ncols)
        if pos is None:
            break
        i0, j0 = pos
        a[t], a[i0] = a[i0], a[t]
        if j0 != t:
            for row in a:
                row[t], row[j0] = row[j0], row[t]
        while True:
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
            pivot = a[t][t]
            restart = False
            for i in range(t + 1, nrows):
                v = a[i][t]
                if not v:
                    continue
                q, r = divmod(v, pivot)
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if r:
                    a[t], a[i] = a[i], a[t]
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, ncols):
                v = a[t][j]
                if not v:
                    continue
                q, r = divmod(v, pivot)
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if r:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    restart = True
                    break
            if restart:
                continue
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % pivot:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
        divisors.append(a[t][t])
        t += 1
    return SNFResult(tuple(divisors), len(divisors), matrix.shape)


def _min_abs_position(a, t, nrows, ncols):
    best = None
    pos = None
    for i in range(t, nrows):
        row = a[i]
        for j in range(t, ncols):
            v = row[j]
            if v and (best is None or abs(v) < best):
                best = abs(v)
                pos = (i, j)
                if best == 1:
                    return pos
    return pos


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_basis(rows, ncols: int) -> tuple[list[list[int]], list[int]]:
    """Canonical echelon basis (Hermite form) of the row lattice.

    Returns (basis rows, pivot columns); pivots are positive and entries above
    each pivot are reduced into 0..pivot-1.
    """
    pivots: dict[int, list[int]] = {}
    for vec in rows:
        v = list(vec)
        j = 0
        while j < ncols:
            if not v[j]:
                j += 1
                continue
            b = pivots.get(j)
            if b is None:
                pivots[j] = v
                break
            if v[j] % b[j] == 0:
                q = v[j] // b[j]
                v = [x - q * y for x, y in zip(v, b)]
            else:
                g, x, y = _xgcd(b[j], v[j])
                cb, cv = b[j] // g, v[j] // g
                pivots[j] = [x * p + y * q for p, q in zip(b, v)]
                v = [cb * q - cv * p for p, q in zip(b, v)]
            j += 1
    cols = sorted(pivots)
    basis = [pivots[j] for j in cols]
    for idx, j in enumerate(cols):
        if basis[idx][j] < 0:
            basis[idx] = [-x for x in basis[idx]]
    for idx in range(len(basis) - 1, -1, -1):
        j = cols[idx]
        b = basis[idx]
        for k in range(idx):
            q = basis[k][j] // b[j]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], b)]
    return basis, cols


def lattice_coordinates(basis, pivot_cols, vec) -> list[int]:
    """Coordinates of a lattice vector in an echelon basis; exact or it raises."""
    v = list(vec)
    coords = []
    for b, j in zip(basis, pivot_cols):
        c, rem = divmod(v[j], b[j])
        if rem:
            raise InternalInvariantError(
                "vector is not in the lattice spanned by the basis"
            )
        if c:
            v = [x - c * y for x, y in zip(v, b)]
        coords.append(c)
    if any(v):
        raise InternalInvariantError("nonzero residue after lattice solve")
    return coords


def presentation_Aplus(matroid: Matroid, degree: int) -> IntMatrix:
    """Rows: decomposable generators of degree q in the monomial basis.

    The cokernel of this matrix (in Z^{C(n,q)}) is A_+^q as an abelian group.
    """
    if degree < 0 or degree > matroid.n:
        raise ValueError(f"degree {degree} out of range 0..{matroid.n}")
    rows, cols = degree_generator_vectors(matroid, degree, decomposable_only=True)
    return IntMatrix.from_rows(rows, len(cols))


def presentation_ideal(matroid: Matroid, degree: int) -> IntMatrix:
    """Rows: all ideal generators of degree q (decomposable or not)."""
    if degree < 0 or degree > matroid.n:
        raise ValueError(f"degree {degree} out of range 0..{matroid.n}")
    rows, cols = degree_generator_vectors(matroid, degree)
    return IntMatrix.from_rows(rows, len(cols))


def quotient_group_I_mod_decomposable(matroid: Matroid, degree: int) -> SNFResult:
    """Group structure of (I/Lambda^+ I)^q over Z.

    Computes a Hermite basis of the integer span of all degree-q generators,
    rewrites the decomposable generators in those coordinates, and takes the
    SNF of the coordinate matrix.  cokernel_free_rank of the result is the
    free rank of the quotient; divisors > 1 would certify torsion.
    """
    full = presentation_ideal(matroid, degree)
    basis, pivot_cols = hermite_basis(full.rows, full.cols)
    dec = presentation_Aplus(matroid, degree)
    coords = [lattice_coordinates(basis, pivot_cols, row) for row in dec.rows]
    return smith_normal_form(IntMatrix.from_rows(coords, len(basis)))


def saturation_check_I(matroid: Matroid, degree: int) -> bool:
    """True iff the degree-q integer generator matrix of I has all divisors 1.

    Equivalent to A^q being free over Z, i.e. the generator lattice already
    saturated; classically guaranteed by the circuit basis of A.
    """
    return smith_normal_form(presentation_ideal(matroid, degree)).torsion_free


@dataclass(frozen=True)
class DegreeTorsion:
    """Torsion data of A_+^q and (I/Lambda^+ I)^q in one degree."""

    degree: int
    aplus: SNFResult
    quotient: SNFResult

    @property
    def aplus_torsion_free(self) -> bool:
        return self.aplus.torsion_free

    @property
    def quotient_torsion_free(self) -> bool:
        return self.quotient.torsion_free

    @property
    def torsion_free(self) -> bool:
        return self.aplus.torsion_free and self.quotient.torsion_free

    @property
    def aplus_free_rank(self) -> int:
        return self.aplus.cokernel_free_rank

    @property
    def quotient_free_rank(self) -> int:
        return self.quotient.cokernel_free_rank


@dataclass(frozen=True)
class TorsionReport:
    """Per-degree SNF certificates plus multi-field dimension tables."""

    n: int
    degrees: tuple[DegreeTorsion, ...]
    dims: tuple[GradedDims, ...]

    @property
    def torsion_free(self) -> bool:
        return all(d.torsion_free for d in self.degrees)

    @property
    def field_dims_agree(self) -> bool:
        first = self.dims[0]
        return all(
            other.rows == first.rows for other in self.dims[1:]
        )


_DEFAULT_FIELDS = (QQ, GF(2), GF(3), GF(5))


def torsion_report(
    matroid: Matroid,
    fields: tuple[Domain, ...] = _DEFAULT_FIELDS,
    max_degree: int | None = None,
) -> TorsionReport:
    """Full torsion certificate for a matroid.

    Cross-checks the integer free ranks against the rational dimension table;
    a mismatch means the lattice computation itself broke, so it raises
    InternalInvariantError rather than reporting nonsense.
    """
    if max_degree is None:
        max_degree = matroid.n
    dims = tuple(graded_dims(matroid, f, max_degree=max_degree) for f in fields)
    rational = next((d for d in dims if d.field == "q"), dims[0])
    degrees = []
    for q in range(max_degree + 1):
        aplus = smith_normal_form(presentation_Aplus(matroid, q))
        quotient = quotient_group_I_mod_decomposable(matroid, q)
        row = rational.rows[q]
        if aplus.cokernel_free_rank != row.decomposable_algebra and aplus.torsion_free:
            raise InternalInvariantError(
                f"A_+ free rank {aplus.cokernel_free_rank} != field dimension "
                f"{row.decomposable_algebra} in degree {q}"
            )
        if quotient.cokernel_free_rank != row.quotient and quotient.torsion_free:
            raise InternalInvariantError(
                f"quotient free rank {quotient.cokernel_free_rank} != field "
                f"dimension {row.quotient} in degree {q}"
            )
        degrees.append(DegreeTorsion(degree=q, aplus=aplus, quotient=quotient))
    return TorsionReport(n=matroid.n, degrees=tuple(degrees), dims=dims)


def minors_gcd_divisors(matrix: IntMatrix) -> tuple[int, ...]:
    """Elementary divisors via gcds of k x k minors (test oracle, small sizes)."""
    from itertools import combinations as _comb

    rows = [list(r) for r in matrix.rows]
    nrows, ncols = matrix.shape
    out = []
    prev = 1
    for k in range(1, min(nrows, ncols) + 1):
        g = 0
        for ris in _comb(range(nrows), k):
            for cis in _comb(range(ncols), k):
                sub = [[rows[i][j] for j in cis] for i in ris]
                g = gcd(g, _det_bareiss(sub))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


def _det_bareiss(m: list[list[int]]) -> int:
    """Fraction-free determinant of a small integer matrix."""
    m = [row[:] for row in m]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


__all__ = [
    "IntMatrix",
    "SNFResult",
    "DegreeTorsion",
    "TorsionReport",
    "smith_normal_form",
    "hermite_basis",
    "lattice_coordinates",
    "presentation_Aplus",
    "presentation_ideal",
    "quotient_group_I_mod_decomposable",
    "saturation_check_I",
    "torsion_report",
    "minors_gcd_divisors",
]
