"""Exact piecewise-linear interval maps over the rationals."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


def frac(v) -> Fraction:
    """Coerce ints, Fractions, decimal strings and 'p/q' strings to Fraction.

    Floats are refused: an exact map must not silently absorb binary rounding.
    """
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("bool is not a rational")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"expected an exact rational, got {type(v).__name__}")


@dataclass(frozen=True)
class PLMap:
    """Continuous map interpolating the points (xs[i], ys[i]) affinely.

    The domain is [xs[0], xs[-1]].  Breakpoints need not be kinks; use
    ``simplified`` to drop collinear ones.
    """

    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.xs) != len(self.ys) or len(self.xs) < 1:
            raise ValueError("PLMap needs matching, non-empty coordinate lists")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise ValueError("breakpoint x-coordinates must be strictly increasing")

    @classmethod
    def from_points(cls, points: Iterable[tuple]) -> "PLMap":
        pts = [(frac(x), frac(y)) for x, y in points]
        return cls(tuple(p[0] for p in pts), tuple(p[1] for p in pts))

    # -- basic geometry -----------------------------------------------------
    @property
    def lo(self) -> Fraction:
        return self.xs[0]

    @property
    def hi(self) -> Fraction:
        return self.xs[-1]

    @property
    def points(self) -> list[tuple[Fraction, Fraction]]:
        return list(zip(self.xs, self.ys))

    def __call__(self, x) -> Fraction:
        x = frac(x)
        if x < self.lo or x > self.hi:
            raise ValueError(f"{x} outside domain [{self.lo}, {self.hi}]")
        i = bisect_right(self.xs, x) - 1
        if i >= len(self.xs) - 1:
            return self.ys[-1]
        x0, x1, y0, y1 = self.xs[i], self.xs[i + 1], self.ys[i], self.ys[i + 1]
        if x == x0:
            return y0
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def pieces(self) -> Iterator[tuple[Fraction, Fraction, Fraction, Fraction]]:
        """Yield (x0, x1, y0, y1) for each affine piece."""
        for i in range(len(self.xs) - 1):
            yield self.xs[i], self.xs[i + 1], self.ys[i], self.ys[i + 1]

    def slope(self, x, side: str = "right") -> Fraction:
        """One-sided derivative at x."""
        x = frac(x)
        i = bisect_right(self.xs, x) - 1
        if side == "left" and i >= 0 and self.xs[i] == x:
            i -= 1
        i = min(max(i, 0), len(self.xs) - 2)
        x0, x1, y0, y1 = self.xs[i], self.xs[i + 1], self.ys[i], self.ys[i + 1]
        return (y1 - y0) / (x1 - x0)

    def image(self, a, b) -> tuple[Fraction, Fraction]:
        """Exact image [min, max] of the interval [a, b]."""
        a, b = frac(a), frac(b)
        vals = [self(a), self(b)] + [y for x, y in zip(self.xs, self.ys) if a < x < b]
        return min(vals), max(vals)

    @property
    def max_value(self) -> Fraction:
        return max(self.ys)

    @property
    def min_value(self) -> Fraction:
        return min(self.ys)

    # -- structure ----------------------------------------------------------
    def simplified(self) -> "PLMap":
        xs, ys = [self.xs[0]], [self.ys[0]]
        for i in range(1, len(self.xs)):
            x, y = self.xs[i], self.ys[i]
            if len(xs) >= 2 and i < len(self.xs):
                # drop the previous point if it is collinear with its neighbours
                x0, y0, x1, y1 = xs[-2], ys[-2], xs[-1], ys[-1]
                if (y1 - y0) * (x - x1) == (y - y1) * (x1 - x0):
                    xs[-1], ys[-1] = x, y
                    continue
            xs.append(x)
            ys.append(y)
        return PLMap(tuple(xs), tuple(ys))

    def critical_interval(self) -> tuple[Fraction, Fraction]:
        """Leftmost maximal plateau [u, v] at the top value (u == v for a
        proper turning point)."""
        top = self.max_value
        i = self.ys.index(top)
        j = i
        while j + 1 < len(self.ys) and self.ys[j + 1] == top:
            j += 1
        return self.xs[i], self.xs[j]

    def is_unimodal(self) -> bool:
        """Nondecreasing then nonincreasing, with the top plateau (if any)
        the only flat part."""
        u, v = self.critical_interval()
        for x0, x1, y0, y1 in self.pieces():
            if x1 <= u and not y1 > y0:
                return False
            if x0 >= v and not y1 < y0:
                return False
        return True

    def fixed_points(self) -> list[Fraction]:
        """Isolated fixed points plus the endpoints of fixed intervals."""
        out: set[Fraction] = set()
        for x0, x1, y0, y1 in self.pieces():
            d0, d1 = y0 - x0, y1 - x1
            if d0 == 0:
                out.add(x0)
            if d1 == 0:
                out.add(x1)
            if (d0 < 0 < d1) or (d1 < 0 < d0):
                out.add(x0 + d0 * (x1 - x0) / (d0 - d1))
        if len(self.xs) == 1 and self.ys[0] == self.xs[0]:
            out.add(self.xs[0])
        return sorted(out)

    def preimages(self, y) -> list[Fraction]:
        """All x with f(x) = y (endpoints only, for flat pieces at level y)."""
        y = frac(y)
        out: set[Fraction] = set()
        for x0, x1, y0, y1 in self.pieces():
            if y0 == y:
                out.add(x0)
            if y1 == y:
                out.add(x1)
            if min(y0, y1) < y < max(y0, y1):
                out.add(x0 + (y - y0) * (x1 - x0) / (y1 - y0))
        return sorted(out)

    def with_breaks(self, extra: Iterable) -> "PLMap":
        """Same map, with additional (non-kink) breakpoints inserted."""
        xs = sorted(set(self.xs) | {frac(x) for x in extra if self.lo <= frac(x) <= self.hi})
        return PLMap(tuple(xs), tuple(self(x) for x in xs))

    def restricted(self, a, b) -> "PLMap":
        a, b = frac(a), frac(b)
        xs = [a] + [x for x in self.xs if a < x < b] + ([b] if b > a else [])
        return PLMap(tuple(xs), tuple(self(x) for x in xs))

    def conjugated(self, lo, hi) -> "PLMap":
        """Affinely transport the map onto the domain [lo, hi] (orientation
        preserving).  Values are transported with the same change of
        variables, so dynamics are conjugate."""
        lo, hi = frac(lo), frac(hi)
        s = (hi - lo) / (self.hi - self.lo)

        def t(v):
            return lo + (v - self.lo) * s

        return PLMap(tuple(t(x) for x in self.xs), tuple(t(y) for y in self.ys))

    def truncated(self, level) -> "PLMap":
        """Pointwise min(f, level), exact (plateaus inserted)."""
        level = frac(level)
        pts: list[tuple[Fraction, Fraction]] = []
        for x0, x1, y0, y1 in self.pieces():
            pts.append((x0, min(y0, level)))
            if min(y0, y1) < level < max(y0, y1):
                xc = x0 + (level - y0) * (x1 - x0) / (y1 - y0)
                pts.append((xc, level))
        pts.append((self.xs[-1], min(self.ys[-1], level)))
        return PLMap.from_points(pts)

    def maps_into_itself(self) -> bool:
        return self.lo <= self.min_value and self.max_value <= self.hi


def compose_points(f: PLMap, xs: Sequence[Fraction]) -> list[Fraction]:
    return [f(x) for x in xs]


def compose(outer: PLMap, inner: PLMap) -> PLMap:
    """outer o inner, exact.  inner's values must lie in outer's domain."""
    if inner.min_value < outer.lo or inner.max_value > outer.hi:
        raise ValueError("inner map leaves the domain of the outer map")
    xs = set(inner.xs)
    for x0, x1, y0, y1 in inner.pieces():
        if y0 == y1:
            continue
        lo, hi = min(y0, y1), max(y0, y1)
        for b in outer.xs:
            if lo < b < hi:
                xs.add(x0 + (b - y0) * (x1 - x0) / (y1 - y0))
    xs = sorted(xs)
    return PLMap(tuple(xs), tuple(outer(inner(x)) for x in xs))
