"""Exact coefficient domains: arbitrary-precision integers, rationals, prime fields.

Coefficients are plain Python values (int for Z and F_p, Fraction for Q); a
Domain instance supplies coercion, renormalization, and inversion.  Nothing in
this package ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction


class DomainMismatchError(ValueError):
    """Operands belong to different coefficient domains."""


def is_prime(p: int) -> bool:
    """Deterministic trial-division primality test, adequate for p < 2**31."""
    if p < 2:
        return False
    for d in (2, 3):
        if p % d == 0:
            return p == d
    d = 5
    while d * d <= p:
        if p % d == 0 or p % (d + 2) == 0:
            return False
        d += 6
    return True


class Domain:
    """Shared interface of the supported exact coefficient domains."""

    tag = "?"

    def coerce(self, value):
        """Convert an int or Fraction into a coefficient of this domain."""
        raise NotImplementedError

    def normalize(self, value):
        """Renormalize after ring arithmetic (reduction mod p; no-op elsewhere)."""
        return value

    def invert(self, value):
        raise NotImplementedError

    def is_field(self) -> bool:
        return False

    def __repr__(self) -> str:
        return self.tag


class IntegerRing(Domain):
    """The ring of arbitrary-precision integers."""

    tag = "z"

    def coerce(self, value):
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"{value} is not an integer")
            return value.numerator
        raise TypeError(f"cannot coerce {value!r} into Z")

    def invert(self, value):
        if value in (1, -1):
            return value
        raise ValueError(f"{value} is not a unit in Z")

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("osa.domains.Z")


class RationalField(Domain):
    """The field of exact rationals, stored in lowest terms via Fraction."""

    tag = "q"

    def coerce(self, value):
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into Q")

    def invert(self, value):
        if value == 0:
            raise ZeroDivisionError("inverse of 0")
        return Fraction(1) / value

    def is_field(self) -> bool:
        return True

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("osa.domains.Q")


class PrimeField(Domain):
    """Residues mod a prime p < 2**31, stored as ints in 0..p-1."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 2**31:
            raise ValueError(f"prime {p} exceeds the 2**31 cap")
        self.p = p
        self.tag = f"f{p}"

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {value!r} into F_{self.p}")

    def normalize(self, value):
        return value % self.p

    def invert(self, value):
        return pow(value, -1, self.p)

    def is_field(self) -> bool:
        return True

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("osa.domains.GF", self.p))


ZZ = IntegerRing()
QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Return the (cached) prime field with p elements."""
    field = _gf_cache.get(p)
    if field is None:
        field = _gf_cache.setdefault(p, PrimeField(p))
    return field


def domain_from_tag(tag: str) -> Domain:
    """Resolve a field tag: 'q' for the rationals, 'f<p>' for a prime field."""
    tag = tag.strip().lower()
    if tag == "q":
        return QQ
    if tag == "z":
        return ZZ
    if tag.startswith("f") and tag[1:].isdigit():
        return GF(int(tag[1:]))
    raise ValueError(f"unknown coefficient domain tag {tag!r}")
