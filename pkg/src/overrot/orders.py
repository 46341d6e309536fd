"""Over-rotation pairs and the orderings that drive forcing queries.

All arithmetic is exact: rationals are ``fractions.Fraction``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

HALF = Fraction(1, 2)

# Sentinel for the period set {1, 2, 4, ...}.
TWO_INF = "2^inf"


def _split_two(m: int) -> tuple[int, int]:
    """Write m = 2**a * b with b odd; return (a, b)."""
    a = 0
    while m % 2 == 0:
        m //= 2
        a += 1
    return a, m


def _sharkovskii_key(m: int) -> tuple[int, int, int]:
    # Smaller key = sharper.  Odd parts > 1 come first, grouped by the power
    # of two; pure powers of two come last, in decreasing order.
    a, b = _split_two(m)
    if b > 1:
        return (0, a, b)
    return (1, -a, 0)


def sharkovskii_sharper(m: int, n: int) -> bool:
    """True iff m precedes n in the Sharkovskii ordering
    3, 5, 7, ..., 2*3, 2*5, ..., 4*3, ..., 8, 4, 2, 1."""
    if m < 1 or n < 1:
        raise ValueError("Sharkovskii ordering is defined on positive integers")
    return _sharkovskii_key(m) < _sharkovskii_key(n)


@dataclass(frozen=True)
class PeriodSet:
    """Sh(k): all m with k sharper than or equal to m.

    ``k`` is a positive integer or ``TWO_INF`` for {1, 2, 4, ...}.  Sh(3) is
    the set of all positive integers.
    """

    k: int | str

    def __post_init__(self):
        if self.k != TWO_INF and (not isinstance(self.k, int) or self.k < 1):
            raise ValueError(f"invalid Sharkovskii tail index {self.k!r}")

    @property
    def is_everything(self) -> bool:
        return self.k == 3

    def __contains__(self, m: int) -> bool:
        if m < 1:
            return False
        if self.k == TWO_INF:
            return m & (m - 1) == 0
        return m == self.k or sharkovskii_sharper(self.k, m)


def sharkovskii_tail(k: int | str) -> PeriodSet:
    return PeriodSet(k)


@dataclass(frozen=True, order=True)
class OverRotationPair:
    """(l, p): l = sum of chi along a cycle of period p, with 0 < l <= p/2."""

    crossings: int
    period: int

    def __post_init__(self):
        if self.period < 2 or self.crossings < 1 or 2 * self.crossings > self.period:
            raise ValueError(f"not an over-rotation pair: {self.as_tuple()}")

    def rho(self) -> Fraction:
        return Fraction(self.crossings, self.period)

    def is_coprime(self) -> bool:
        return gcd(self.crossings, self.period) == 1

    def as_tuple(self) -> tuple[int, int]:
        return (self.crossings, self.period)


def pair_forces(strong: OverRotationPair, weak: OverRotationPair) -> bool:
    """The extended forcing order on over-rotation pairs.

    ``strong`` forces ``weak`` when weak's rotation number lies in
    (rho(strong), 1/2], or when both have the same rotation number m/n and the
    multiplicity of strong is Sharkovskii-sharper than that of weak.
    """
    rs, rw = strong.rho(), weak.rho()
    if rs < rw <= HALF:
        return True
    if rs != rw:
        return False
    m = rs.numerator
    return sharkovskii_sharper(strong.crossings // m, weak.crossings // m)


@dataclass(frozen=True)
class RhoResult:
    """Answer for a left endpoint rho_f.

    ``exact`` results have lo == hi and carry a witness (a cycle of graph
    vertices, a periodic orbit, or a certificate dict).  Brackets have
    lo <= hi; ``depth`` records the budget that stopped the search.
    """

    lo: Fraction
    hi: Fraction
    exact: bool
    witness: object = None
    depth: int | None = None
    method: str = ""

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")
        if self.exact and self.lo != self.hi:
            raise ValueError("exact result must have lo == hi")

    @classmethod
    def exact_value(cls, value, witness=None, method=""):
        v = Fraction(value)
        return cls(v, v, True, witness, None, method)

    @property
    def value(self) -> Fraction:
        """Midpoint (the value itself when exact)."""
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class RotationInterval:
    """I_f = [rho_f, 1/2], or the trivial marker when Per(f) = Fix(f)."""

    left: RhoResult | None
    trivial: bool = False
    note: str = ""

    right = HALF

    def __post_init__(self):
        if not self.trivial and self.left is None:
            raise ValueError("non-trivial interval needs a left endpoint")
        if self.left is not None and not (0 <= self.left.lo and self.left.hi <= HALF):
            raise ValueError(f"left endpoint out of [0, 1/2]: {self.left}")

    @property
    def exact(self) -> bool:
        return self.left is not None and self.left.exact

    def contains_interval(self, other: "RotationInterval", slack=0) -> bool:
        """self contains other; brackets compare pessimistically."""
        if other.trivial:
            return True
        if self.trivial:
            return False
        return self.left.hi <= other.left.lo + slack
