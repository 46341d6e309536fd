"""Cyclic and non-cyclic patterns, their P-linear maps, codes and the
gamma family of unimodal over-twists.

Patterns are stored 1-based: ``images[i-1]`` is the image of point i.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .errors import HorseshoeError, PreconditionError
from .orders import HALF, OverRotationPair
from .plmap import PLMap, frac

MAX_CENSUS_PERIOD = 12


def _check_images(images: Sequence[int]) -> tuple[int, ...]:
    imgs = tuple(int(v) for v in images)
    n = len(imgs)
    if n == 0:
        raise ValueError("empty pattern")
    bad = [v for v in imgs if not 1 <= v <= n]
    if bad:
        raise ValueError(f"images out of range 1..{n}: {bad}")
    return imgs


@dataclass(frozen=True)
class NonCyclicPattern:
    """Arbitrary self-map of {1..n}.  ``anchors`` optionally fixes the
    rational positions of the points (used by gamma_prime)."""

    images: tuple[int, ...]
    anchors: tuple[Fraction, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "images", _check_images(self.images))
        if self.anchors is not None:
            anc = tuple(frac(x) for x in self.anchors)
            if len(anc) != len(self.images) or any(b <= a for a, b in zip(anc, anc[1:])):
                raise ValueError("anchors must be strictly increasing, one per point")
            object.__setattr__(self, "anchors", anc)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __str__(self):
        return " ".join(map(str, self.images))


@dataclass(frozen=True)
class CyclicPattern(NonCyclicPattern):
    """A cyclic permutation of {1..n}."""

    def __post_init__(self):
        super().__post_init__()
        n = self.n
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError("cyclic pattern must be a permutation")
        x, k = 1, 0
        while True:
            x = self.images[x - 1]
            k += 1
            if x == 1:
                break
        if k != n:
            raise ValueError(f"permutation is not a single {n}-cycle")

    def orbit(self, start: int = 1) -> list[int]:
        out = [start]
        while len(out) < self.n:
            out.append(self(out[-1]))
        return out

    def reflected(self) -> "CyclicPattern":
        n = self.n
        return CyclicPattern(tuple(n + 1 - self.images[n - i] for i in range(1, n + 1)))


def as_pattern(obj) -> NonCyclicPattern:
    if isinstance(obj, NonCyclicPattern):
        return obj
    try:
        return CyclicPattern(tuple(obj))
    except ValueError:
        return NonCyclicPattern(tuple(obj))


# -- P-linear realization -------------------------------------------------------

@dataclass(frozen=True)
class PLinearMap(PLMap):
    """PL map interpolating a pattern; ``images`` keeps the combinatorics."""

    images: tuple[int, ...] = ()

    @property
    def anchors(self) -> tuple[Fraction, ...]:
        return self.xs

    def fixed_point(self) -> Fraction:
        fp = self.fixed_points()
        if len(fp) != 1:
            raise PreconditionError(f"expected a unique fixed point, found {len(fp)}", "p-linear")
        return fp[0]

    def a_prime(self) -> Fraction | None:
        """Preimage of the fixed point on an increasing piece left of it."""
        try:
            a = self.fixed_point()
        except PreconditionError:
            return None
        cands = []
        for x in self.preimages(a):
            if x >= a:
                continue
            if (x > self.lo and self.slope(x, "left") > 0) or (x < self.hi and self.slope(x) > 0):
                cands.append(x)
        return max(cands) if cands else None

    def turning_points(self) -> list[Fraction]:
        out = []
        for i in range(1, len(self.xs) - 1):
            d0 = self.ys[i] - self.ys[i - 1]
            d1 = self.ys[i + 1] - self.ys[i]
            if d0 * d1 < 0:
                out.append(self.xs[i])
        return out


def realize_p_linear(pattern) -> PLinearMap:
    """The P-linear map of a pattern, on anchors i/n (or the pattern's own)."""
    pat = as_pattern(pattern)
    n = pat.n
    anchors = pat.anchors or tuple(Fraction(i, n) for i in range(n))
    ys = tuple(anchors[v - 1] for v in pat.images)
    return PLinearMap(tuple(anchors), ys, pat.images)


# -- shape ----------------------------------------------------------------------

@dataclass(frozen=True)
class ShapeReport:
    convergent: bool
    max_unimodal: bool
    a: Fraction | None = None


def is_convergent(images: Sequence[int]) -> bool:
    # divergent iff some x < y with f(x) < x and f(y) > y
    seen_down = False
    for i, v in enumerate(images, start=1):
        if v < i:
            seen_down = True
        elif v > i and seen_down:
            return False
    return True


def is_max_unimodal(images: Sequence[int]) -> bool:
    n = len(images)
    k = 0
    while k + 1 < n and images[k + 1] > images[k]:
        k += 1
    return all(images[i + 1] < images[i] for i in range(k, n - 1))


def classify_shape(pattern) -> ShapeReport:
    pat = as_pattern(pattern)
    conv = is_convergent(pat.images)
    a = None
    if conv:
        if pat.n == 1:
            a = (pat.anchors or (Fraction(0),))[0]
        else:
            a = realize_p_linear(pat).fixed_point()
    return ShapeReport(conv, is_max_unimodal(pat.images), a)


# -- over-rotation pairs ---------------------------------------------------------

def chi_sum2(images: Sequence[int]) -> int:
    """Twice the sum of chi over a cycle: counts points where the orbit
    turns around, i.e. (f(x)-x)(f^2(x)-f(x)) <= 0."""
    tot = 0
    for i in range(1, len(images) + 1):
        fx = images[i - 1]
        ffx = images[fx - 1]
        if (fx - i) * (ffx - fx) <= 0:
            tot += 1
    return tot


def _crossings_of_a(images: Sequence[int], a_index: Fraction) -> int:
    # a_index: position of the fixed point in units of point indices
    return sum((i < a_index) != (v < a_index) for i, v in enumerate(images, start=1))


def over_rotation_pair(pattern) -> OverRotationPair:
    pat = as_pattern(pattern)
    if not isinstance(pat, CyclicPattern):
        raise PreconditionError("over-rotation pair needs a cyclic pattern", "orp")
    if pat.n < 2:
        raise PreconditionError("fixed points carry no over-rotation pair", "orp")
    if not is_convergent(pat.images):
        raise HorseshoeError(
            "divergent cycle forces a horseshoe; every number in [0, 1/2] occurs", "orp"
        )
    two_l = chi_sum2(pat.images)
    # independent count: crossings of the fixed point, halved
    ups = [i for i, v in enumerate(pat.images, start=1) if v > i]
    a_index = Fraction(2 * max(ups) + 1, 2)
    cr = _crossings_of_a(pat.images, a_index)
    if cr != two_l:
        raise AssertionError(f"chi count {two_l} disagrees with crossing count {cr}")
    return OverRotationPair(two_l // 2, pat.n)


# -- codes -----------------------------------------------------------------------

@dataclass(frozen=True)
class Code:
    values: dict  # point index (1-based) -> Fraction
    well_defined: bool
    monotone: bool

    def as_tuple(self) -> tuple[Fraction, ...]:
        return tuple(self.values[i] for i in sorted(self.values))


PHI_KINDS = ("indicator", "crossing")


def code_of(pattern, phi: str = "indicator") -> Code:
    """Code L with L(leftmost) = 0 and L(f(y)) = L(y) + rho - phi(y).

    ``phi="indicator"``: phi is 1 at points right of the fixed point.  The
    recursion then closes only when every such point is mapped to the left;
    otherwise the code is reported ill-defined.
    ``phi="crossing"``: phi is 1 at points right of a whose image is left of
    a, so the loop always closes (its sum is the crossing count l = n*rho).
    """
    if phi not in PHI_KINDS:
        raise ValueError(f"phi must be one of {PHI_KINDS}")
    pat = as_pattern(pattern)
    if not isinstance(pat, CyclicPattern) or not is_convergent(pat.images):
        raise PreconditionError("code needs a convergent cyclic pattern", "code")
    n = pat.n
    if n == 1:
        return Code({1: Fraction(0)}, True, True)
    rho = over_rotation_pair(pat).rho()
    ups = [i for i, v in enumerate(pat.images, start=1) if v > i]
    k = max(ups)  # points 1..k are left of a, k+1..n right of a
    L = {1: Fraction(0)}
    y = 1
    def phi_at(y):
        if phi == "crossing":
            return int(y > k and pat(y) <= k)
        return int(y > k)

    for _ in range(n - 1):
        L[pat(y)] = L[y] + rho - phi_at(y)
        y = pat(y)
    well = L[y] + rho - phi_at(y) == 0
    mono = False
    if well:
        left = [L[i] for i in range(1, k + 1)]  # farthest from a first
        right = [L[i] for i in range(n, k, -1)]
        mono = all(u < v for u, v in zip(left, left[1:])) and all(
            u < v for u, v in zip(right, right[1:])
        )
    return Code(L, well, mono)


def is_overtwist(pattern, phi: str = "indicator") -> bool:
    pat = as_pattern(pattern)
    if not isinstance(pat, CyclicPattern):
        return False
    if not is_convergent(pat.images):
        return False
    if pat.n == 1:
        return False
    c = code_of(pat, phi)
    return c.well_defined and c.monotone


# -- gamma family ----------------------------------------------------------------

def _check_pq(p: int, q: int):
    if not (isinstance(p, int) and isinstance(q, int)):
        raise TypeError("p and q must be integers")
    if q < 2 or p < 1 or 2 * p > q:
        raise PreconditionError(f"need 0 < p/q <= 1/2, got {p}/{q}", "gamma")
    if gcd(p, q) != 1:
        raise PreconditionError(f"{p}/{q} is not in lowest terms", "gamma")


def _gamma0(p: int, q: int) -> list[int]:
    # 0-based point j -> 0-based image
    out = []
    for j in range(q):
        if j <= q - 2 * p - 1:
            out.append(j + p)
        elif j <= q - p - 1:
            out.append(2 * q - 2 * p - 1 - j)
        else:
            out.append(q - 1 - j)
    return out


def gamma(p: int, q: int) -> CyclicPattern:
    """The unimodal over-twist of rotation number p/q."""
    _check_pq(p, q)
    return CyclicPattern(tuple(v + 1 for v in _gamma0(p, q)))


def gamma_prime(p: int, q: int) -> NonCyclicPattern:
    """Non-cyclic pattern on q+2 points: gamma_{p/q} plus a' and a.

    The point mapped onto the turning point (index q-2p) is sent to a'
    instead; a' -> a and a is fixed.  a' sits in the gap left of the
    turning point, a in the gap where gamma's fixed point lies.
    """
    _check_pq(p, q)
    if (p, q) == (1, 2):
        return NonCyclicPattern((3, 4, 3, 1), tuple(Fraction(i, 4) for i in range(4)))
    g = _gamma0(p, q)
    pts = [Fraction(j, q) for j in range(q)]
    ci = q - 2 * p
    a_prime = (pts[ci - 1] + pts[ci]) / 2
    a = (pts[q - p - 1] + pts[q - p]) / 2
    jstar = g.index(ci)
    img = {pts[j]: pts[g[j]] for j in range(q)}
    img[pts[jstar]] = a_prime
    img[a_prime] = a
    img[a] = a
    order = sorted(img)
    pos = {x: i + 1 for i, x in enumerate(order)}
    return NonCyclicPattern(tuple(pos[img[x]] for x in order), tuple(order))


# -- census ----------------------------------------------------------------------

def enumerate_unimodal_patterns(n: int) -> list[CyclicPattern]:
    """All cyclic n-patterns whose image sequence strictly rises, then
    strictly falls; lexicographic order."""
    if not 1 <= n <= MAX_CENSUS_PERIOD:
        raise PreconditionError(f"census supports 1 <= n <= {MAX_CENSUS_PERIOD}", "census")
    if n == 1:
        return [CyclicPattern((1,))]
    rest = list(range(1, n))
    out = []
    for r in range(n):
        for S in combinations(rest, r):
            comp = sorted(set(rest) - set(S), reverse=True)
            imgs = tuple(S) + (n,) + tuple(comp)
            try:
                out.append(CyclicPattern(imgs))
            except ValueError:
                pass
    out.sort(key=lambda p: p.images)
    return out


def unimodal_overtwists(n: int) -> list[CyclicPattern]:
    return [p for p in enumerate_unimodal_patterns(n) if is_overtwist(p)]


# -- forcing oracle ----------------------------------------------------------------

def pattern_of_orbit(orbit: Sequence[Fraction]) -> CyclicPattern:
    order = sorted(orbit)
    pos = {x: i + 1 for i, x in enumerate(order)}
    k = len(orbit)
    img = {orbit[t]: orbit[(t + 1) % k] for t in range(k)}
    return CyclicPattern(tuple(pos[img[x]] for x in order))


def exhibited_same_rho(pattern, max_period: int) -> list[CyclicPattern]:
    """Patterns of periodic orbits (period <= max_period) of the P-linear map
    of ``pattern`` having the same over-rotation number.  Sorted; always
    contains the pattern itself."""
    from .graph import closed_walks, loop_orbit, primitive_period, transition_graph

    pat = as_pattern(pattern)
    if not isinstance(pat, CyclicPattern):
        raise PreconditionError("need a cyclic pattern", "exhibited_same_rho")
    if not is_convergent(pat.images):
        raise HorseshoeError("divergent pattern forces every pattern", "exhibited_same_rho")
    if max_period > MAX_CENSUS_PERIOD:
        raise PreconditionError(f"max_period capped at {MAX_CENSUS_PERIOD}", "exhibited_same_rho")
    found = {pat.images: pat}
    if pat.n == 1:
        return [pat]
    rho = over_rotation_pair(pat).rho()
    f = realize_p_linear(pat)
    a = f.fixed_point()
    G = transition_graph(f, [a], a=a)
    q = rho.denominator
    for k in range(q, max_period + 1, q):
        # cross weight counts right->left arcs, which equals l for the orbit
        for loop in closed_walks(G, k, max_cross=int(rho * k)):
            orbit = loop_orbit(f, G, loop)
            per = primitive_period(orbit)
            if per < 2:
                continue
            orb = orbit[:per]
            cand = pattern_of_orbit(orb)
            if cand.images in found:
                continue
            if Fraction(chi_sum2(cand.images), 2 * per) == rho:
                found[cand.images] = cand
    return [found[k] for k in sorted(found, key=lambda t: (len(t), t))]
