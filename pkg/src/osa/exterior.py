"""Exact exterior algebra over the ground set [n], n <= 64.

Monomials are square-free and represented as int bitmasks: bit i-1 set means
element i occurs, so the unit monomial is 0 and degree is the popcount.
Elements are finite maps monomial -> nonzero coefficient over one of the
domains in :mod:`osa.domains`.

A variable order is a permutation pi of [n]; the induced monomial order
compares degree first and breaks ties by the monomial that contains the
pi-largest element of the symmetric difference.  With elements relabelled by
their pi-rank this is just integer comparison of bitmasks, which keeps the
hot paths (initial monomials, polynomial reduction) cheap.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .domains import Domain, DomainMismatchError, ZZ

Monomial = int  # bitmask over [n]

LT, EQ, GT = -1, 0, 1


class ZeroElementError(ValueError):
    """The zero element has no initial monomial."""


class ReductionError(ValueError):
    """Reduction hit a leading coefficient that is not invertible."""


def mask_from(elements: Iterable[int]) -> Monomial:
    """Bitmask of a set of 1-based elements."""
    m = 0
    for e in elements:
        if e < 1 or e > 64:
            raise ValueError(f"element {e} out of range 1..64")
        m |= 1 << (e - 1)
    return m


def elements_of(mask: Monomial) -> tuple[int, ...]:
    """The 1-based elements of a bitmask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def inversions(x: Monomial, y: Monomial) -> int:
    """Number of pairs (a, b) with a in x, b in y and a > b."""
    count = 0
    while x:
        low = x & -x
        count += (y & (low - 1)).bit_count()
        x ^= low
    return count


class VariableOrder:
    """A permutation of [n] and the monomial order it induces.

    ``ranks[i-1]`` is the position of element i, so the induced element order
    is ``sequence[0] < sequence[1] < ...``.
    """

    __slots__ = ("n", "ranks", "sequence")

    def __init__(self, ranks: Iterable[int]):
        ranks = tuple(ranks)
        n = len(ranks)
        if sorted(ranks) != list(range(1, n + 1)):
            raise ValueError("ranks must be a bijection of 1..n")
        seq = [0] * n
        for element, rank in enumerate(ranks, start=1):
            seq[rank - 1] = element
        self.n = n
        self.ranks = ranks
        self.sequence = tuple(seq)

    @classmethod
    def natural(cls, n: int) -> "VariableOrder":
        return cls(range(1, n + 1))

    @classmethod
    def from_sequence(cls, sequence: Iterable[int]) -> "VariableOrder":
        """Build from the elements listed smallest to largest."""
        sequence = list(sequence)
        n = len(sequence)
        ranks = [0] * n
        for position, element in enumerate(sequence, start=1):
            if element < 1 or element > n or ranks[element - 1]:
                raise ValueError(f"{sequence} is not a permutation of 1..{n}")
            ranks[element - 1] = position
        return cls(ranks)

    def rank_of(self, element: int) -> int:
        return self.ranks[element - 1]

    def rank_mask(self, mask: Monomial) -> int:
        """Relabel a monomial's elements by their rank."""
        ranks = self.ranks
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << (ranks[low.bit_length() - 1] - 1)
            mask ^= low
        return out

    def monomial_key(self, mask: Monomial) -> tuple[int, int]:
        """Sort key realizing the induced monomial order."""
        return (mask.bit_count(), self.rank_mask(mask))

    def min_element(self, mask: Monomial) -> int:
        """The order-smallest element of a nonempty subset."""
        if not mask:
            raise ValueError("empty subset has no minimum")
        ranks = self.ranks
        best = 0
        best_rank = self.n + 1
        while mask:
            low = mask & -mask
            e = low.bit_length()
            r = ranks[e - 1]
            if r < best_rank:
                best, best_rank = e, r
            mask ^= low
        return best

    def __eq__(self, other):
        return isinstance(other, VariableOrder) and other.ranks == self.ranks

    def __hash__(self):
        return hash(self.ranks)

    def __repr__(self):
        return f"VariableOrder({' < '.join(map(str, self.sequence))})"


def compare(order: VariableOrder, x: Monomial, y: Monomial) -> int:
    """Compare two monomials; returns LT, EQ or GT."""
    kx = order.monomial_key(x)
    ky = order.monomial_key(y)
    if kx < ky:
        return LT
    if kx > ky:
        return GT
    return EQ


def divides(x: Monomial, y: Monomial) -> bool:
    """e_X divides e_Y iff X is a subset of Y."""
    return x & ~y == 0


class ExtElement:
    """An exterior-algebra element: finite map from monomials to coefficients.

    Instances are immutable by convention; all arithmetic returns fresh
    elements with zero coefficients stripped.
    """

    __slots__ = ("domain", "terms")

    def __init__(self, domain: Domain, terms=()):
        acc: dict[int, object] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for mask, coeff in items:
            c = domain.normalize(acc.get(mask, 0) + domain.coerce(coeff))
            if c:
                acc[mask] = c
            elif mask in acc:
                del acc[mask]
        self.domain = domain
        self.terms = acc

    @classmethod
    def zero(cls, domain: Domain) -> "ExtElement":
        return cls(domain)

    @classmethod
    def monomial(cls, domain: Domain, mask: Monomial, coeff=1) -> "ExtElement":
        return cls(domain, [(mask, coeff)])

    @classmethod
    def generator(cls, domain: Domain, element: int) -> "ExtElement":
        return cls(domain, [(1 << (element - 1), 1)])

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def support(self) -> frozenset[int]:
        return frozenset(self.terms)

    def homogeneous_degree(self):
        """Degree if homogeneous and nonzero, else None."""
        degrees = {m.bit_count() for m in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def coefficient(self, mask: Monomial):
        return self.terms.get(mask, self.domain.coerce(0))

    def _require_same_domain(self, other: "ExtElement"):
        if self.domain != other.domain:
            raise DomainMismatchError(
                f"mixed coefficient domains {self.domain!r} and {other.domain!r}"
            )

    def __add__(self, other: "ExtElement") -> "ExtElement":
        self._require_same_domain(other)
        dom = self.domain
        acc = dict(self.terms)
        for mask, coeff in other.terms.items():
            c = dom.normalize(acc.get(mask, 0) + coeff)
            if c:
                acc[mask] = c
            elif mask in acc:
                del acc[mask]
        out = ExtElement.__new__(ExtElement)
        out.domain = dom
        out.terms = acc
        return out

    def __neg__(self) -> "ExtElement":
        dom = self.domain
        out = ExtElement.__new__(ExtElement)
        out.domain = dom
        out.terms = {m: dom.normalize(-c) for m, c in self.terms.items()}
        return out

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        self._require_same_domain(other)
        dom = self.domain
        acc = dict(self.terms)
        for mask, coeff in other.terms.items():
            c = dom.normalize(acc.get(mask, 0) - coeff)
            if c:
                acc[mask] = c
            elif mask in acc:
                del acc[mask]
        out = ExtElement.__new__(ExtElement)
        out.domain = dom
        out.terms = acc
        return out

    def scale(self, coeff) -> "ExtElement":
        dom = self.domain
        c0 = dom.coerce(coeff)
        if not c0:
            return ExtElement.zero(dom)
        out = ExtElement.__new__(ExtElement)
        out.domain = dom
        out.terms = {m: dom.normalize(c * c0) for m, c in self.terms.items()}
        return out

    def wedge(self, other: "ExtElement") -> "ExtElement":
        return wedge(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, ExtElement)
            and other.domain == self.domain
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.domain, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return f"ExtElement({self.domain!r}, 0)"
        bits = []
        for mask in sorted(self.terms, key=lambda m: (m.bit_count(), m)):
            c = self.terms[mask]
            name = "e{%s}" % ",".join(map(str, elements_of(mask))) if mask else "1"
            bits.append(f"{c}*{name}")
        return f"ExtElement({self.domain!r}, {' + '.join(bits)})"


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    """Graded-commutative product; e_X ^ e_Y = (-1)**inv(X,Y) e_{X u Y}."""
    a._require_same_domain(b)
    dom = a.domain
    acc: dict[int, object] = {}
    for mx, cx in a.terms.items():
        for my, cy in b.terms.items():
            if mx & my:
                continue
            c = dom.normalize(cx * cy)
            if inversions(mx, my) & 1:
                c = dom.normalize(-c)
            key = mx | my
            c = dom.normalize(acc.get(key, 0) + c)
            if c:
                acc[key] = c
            elif key in acc:
                del acc[key]
    out = ExtElement.__new__(ExtElement)
    out.domain = dom
    out.terms = acc
    return out


def boundary_terms(mask: Monomial) -> list[tuple[Monomial, int]]:
    """Integer terms of the boundary of a single monomial."""
    out = []
    sign = 1
    for e in elements_of(mask):
        out.append((mask ^ (1 << (e - 1)), sign))
        sign = -sign
    if not out:
        # boundary of the unit monomial is 0 (derivation of degree -1)
        return []
    return out


def boundary(f: ExtElement) -> ExtElement:
    """The unique degree -1 graded derivation with d(e_i) = 1."""
    dom = f.domain
    acc: dict[int, object] = {}
    for mask, coeff in f.terms.items():
        for sub, sign in boundary_terms(mask):
            c = dom.normalize(acc.get(sub, 0) + (coeff if sign > 0 else -coeff))
            if c:
                acc[sub] = c
            elif sub in acc:
                del acc[sub]
    out = ExtElement.__new__(ExtElement)
    out.domain = dom
    out.terms = acc
    return out


def initial_monomial(order: VariableOrder, f: ExtElement) -> Monomial:
    """The order-largest monomial in the support of a nonzero element."""
    if not f.terms:
        raise ZeroElementError("zero element has no initial monomial")
    return max(f.terms, key=order.monomial_key)


def leading_coefficient(order: VariableOrder, f: ExtElement):
    return f.terms[initial_monomial(order, f)]


def monic(order: VariableOrder, f: ExtElement) -> ExtElement:
    """Rescale so the leading coefficient is 1."""
    lc = leading_coefficient(order, f)
    return f.scale(f.domain.invert(lc))


def normal_form(
    f: ExtElement,
    basis: Sequence[ExtElement],
    order: VariableOrder,
) -> ExtElement:
    """Reduce f modulo a list of nonzero elements.

    Repeatedly cancels the order-largest reducible term, choosing the divisor
    of smallest index in ``basis``, so the result is deterministic.  The
    remainder has no term divisible by any basis leading monomial and differs
    from f by an element of the generated ideal.
    """
    basis = [g for g in basis]
    dom = f.domain
    for g in basis:
        if g.domain != dom:
            raise DomainMismatchError("basis element over a different domain")
        if not g.terms:
            raise ZeroElementError("zero element in reduction basis")
    heads = [initial_monomial(order, g) for g in basis]
    is_field = dom.is_field()
    r = f
    while r.terms:
        hit = None
        for mask in sorted(r.terms, key=order.monomial_key, reverse=True):
            for gi, head in enumerate(heads):
                if head & ~mask == 0:
                    hit = (mask, gi)
                    break
            if hit:
                break
        if hit is None:
            break
        mask, gi = hit
        g = basis[gi]
        head = heads[gi]
        rest = mask & ~head
        lead = g.terms[head]
        if inversions(rest, head) & 1:
            lead = dom.normalize(-lead)
        coeff = r.terms[mask]
        if is_field:
            factor = dom.normalize(coeff * dom.invert(lead))
        else:
            if lead not in (1, -1):
                raise ReductionError(
                    f"leading coefficient {lead} is not invertible over {dom!r}"
                )
            factor = coeff * lead
        r = r - ExtElement.monomial(dom, rest, factor).wedge(g)
    return r
