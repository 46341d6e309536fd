"""Degree-one lifts of the sigma-conjugated core map and their rotation
numbers.

With a the fixed point of a normalized unimodal f (f(c) = 1, f(1) = 0),
sigma(x) = x on [0, a) and a + 1 - x on [a, 1].  The degree-one lift F of
g = sigma o f o sigma is, on [0, 1):

    f(x)               0 <= x <= a'
    a + 1 - f(x)       a' <  x <  a
    f(a + 1 - x) + 1   a  <= x <  1

and G(x) = inf_{y >= x} F(y) is the greatest nondecreasing minorant.  Its
rotation number equals rho_f.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Callable

import numpy as np

from .errors import PreconditionError
from .orders import RhoResult
from .plmap import PLMap, frac

MAX_Q = 2000
NUMERIC_SAMPLES = 4096


def sigma(x, a):
    return x if x < a else a + 1 - x


@dataclass(frozen=True)
class MonotoneLift:
    kind: str  # "pl" or "numeric"
    G: Callable
    F: Callable | None = None
    g: Callable | None = None
    base: PLMap | None = None  # G on [0, 1] (PL only)
    G0: Callable | None = field(default=None, compare=False)  # numeric, on [0, 1)
    flat_spots: tuple = ()
    marks: dict = field(default_factory=dict, compare=False)

    def __call__(self, x):
        return self.G(x)


def lift_from_base(base: PLMap) -> MonotoneLift:
    """Wrap a nondecreasing PL map on [0, 1] with G(1) = G(0) + 1."""
    if base.lo != 0 or base.hi != 1 or base.ys[-1] != base.ys[0] + 1:
        raise PreconditionError("base must live on [0, 1] with G(1) = G(0) + 1", "lift")
    if any(y1 < y0 for y0, y1 in zip(base.ys, base.ys[1:])):
        raise PreconditionError("lift must be nondecreasing", "lift")

    def G(x):
        x = frac(x)
        k = floor(x)
        return base(x - k) + k

    return MonotoneLift("pl", G, base=base, flat_spots=_flat_spots(base))


def _flat_spots(base: PLMap) -> tuple:
    spots = []
    for x0, x1, y0, y1 in base.pieces():
        if y0 == y1:
            if spots and spots[-1][1] == x0:
                spots[-1] = (spots[-1][0], x1)
            else:
                spots.append((x0, x1))
    return tuple(spots)


def _check_normalized(f, lm):
    if lm.horseshoe:
        raise PreconditionError("fixed point in [0, c): horseshoe, lift not needed", "water_lift")
    if lm.a_prime is None:
        raise PreconditionError("f(0) >= a: every orbit alternates, lift not needed", "water_lift")
    if lm.d is None:
        raise PreconditionError("no d with f(d) = f(0) right of a", "water_lift")


def water_lift(f) -> MonotoneLift:
    """sigma-conjugate, degree-one lift F and minorant G of a normalized
    core map (exact for PL input)."""
    from .unimodal import EvaluableMap, _ev_landmarks, _pl_landmarks

    if isinstance(f, PLMap):
        if f.lo != 0 or f.hi != 1:
            raise PreconditionError("map must live on [0, 1]", "water_lift")
        c = f.critical_interval()[0]
        if f(c) != 1:
            raise PreconditionError("f(c) != 1; normalize the core first", "water_lift")
        if f(Fraction(1)) != 0:
            raise PreconditionError("f(1) != 0; normalize the core first", "water_lift")
        lm = _pl_landmarks(f, normalize=False)
        _check_normalized(f, lm)
        return _pl_lift(f, lm)
    if isinstance(f, EvaluableMap):
        lm = _ev_landmarks(f, normalize=False)
        if abs(float(f(float(f.c))) - 1) > 1e-9 or abs(float(f(1.0))) > 1e-9:
            raise PreconditionError("map is not normalized (f(c)=1, f(1)=0)", "water_lift")
        _check_normalized(f, lm)
        return _numeric_lift(f, lm)
    raise TypeError(f"unsupported map type {type(f).__name__}")


def _pl_lift(f: PLMap, lm) -> MonotoneLift:
    a, ap, c, d = lm.a, lm.a_prime, lm.c, lm.d
    one = Fraction(1)

    def F0(t):
        if t <= ap:
            return f(t)
        if t < a:
            return a + 1 - f(t)
        return f(a + 1 - t) + 1

    def F(x):
        x = frac(x)
        k = floor(x)
        return F0(x - k) + k

    def g(x):
        x = frac(x)
        if x == ap or x == 1:
            return a
        return sigma(f(sigma(x, a)), a)

    # F on [0, 1) as closed segments; jumps at a' (up) and at 1 (down)
    segs = []

    def add(xs, fn):
        xs = sorted(set(xs))
        for u, v in zip(xs, xs[1:]):
            segs.append((u, v, fn(u), fn(v)))

    add([x for x in f.xs if x <= ap] + [Fraction(0), ap], f)
    add([x for x in f.xs if ap <= x <= a] + [ap, a], lambda t: a + 1 - f(t))
    add([a + 1 - x for x in f.xs if a <= x] + [a, one], lambda t: f(a + 1 - t) + 1)
    m0 = 1 + min(min(s[2], s[3]) for s in segs)
    pts = {}
    m = m0
    right_val = {}
    for x0, x1, y0, y1 in reversed(segs):
        if y1 >= y0:
            if y1 <= m:
                vals = [(x1, y1), (x0, y0)]
            elif y0 >= m:
                vals = [(x1, m), (x0, m)]
            else:
                xc = x0 + (m - y0) * (x1 - x0) / (y1 - y0)
                vals = [(x1, m), (xc, m), (x0, y0)]
            nm = min(m, y0)
        else:
            v = min(m, y1)
            vals = [(x1, v), (x0, v)]
            nm = v
        # continuity with the segment to the right
        if x1 in pts and pts[x1] != vals[0][1]:
            raise PreconditionError(f"minorant jumps at {x1}", "water_lift")
        for x, y in vals:
            pts.setdefault(x, y)
        right_val[x0] = nm
        m = nm
    if pts.get(one, m0) != m0:
        raise PreconditionError("minorant jumps at 1", "water_lift")
    pts[one] = m0
    xs = sorted(pts)
    base = PLMap(tuple(xs), tuple(pts[x] for x in xs)).simplified()
    if base.ys[-1] != base.ys[0] + 1:
        raise PreconditionError("minorant is not degree one", "water_lift")
    lift = lift_from_base(base)
    return MonotoneLift(
        "pl", lift.G, F, g, base, None, lift.flat_spots,
        {"a": a, "a_prime": ap, "c": c, "d": d, "flat_expected": ((ap, c), (a + 1 - d, one))},
    )


def _numeric_lift(f, lm) -> MonotoneLift:
    a, ap, c, d = float(lm.a), float(lm.a_prime), float(lm.c), float(lm.d)
    f0 = float(f(0.0))
    fn = f.func
    e = a + 1 - d

    def G0(t):
        t = np.asarray(t, dtype=float)
        out = np.empty_like(t)
        m1 = t <= ap
        m2 = (t > ap) & (t <= c)
        m3 = (t > c) & (t < a)
        m4 = (t >= a) & (t <= e)
        m5 = t > e
        out[m1] = fn(t[m1])
        out[m2] = a
        out[m3] = a + 1 - fn(t[m3])
        out[m4] = fn(a + 1 - t[m4]) + 1
        out[m5] = 1 + f0
        return out

    def G(x):
        x = np.asarray(x, dtype=float)
        k = np.floor(x)
        return G0(x - k) + k

    def F0(t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= ap, fn(t), np.where(t < a, a + 1 - fn(t), fn(a + 1 - t) + 1))

    def F(x):
        x = np.asarray(x, dtype=float)
        k = np.floor(x)
        return F0(x - k) + k

    def g(x):
        x = float(x)
        if x == ap or x == 1:
            return a
        return sigma(float(fn(sigma(x, a))), a)

    return MonotoneLift(
        "numeric", G, F, g, None, G0, ((ap, c), (e, 1.0)),
        {"a": a, "a_prime": ap, "c": c, "d": d},
    )


# -- rotation numbers -------------------------------------------------------------------

def _lift_eval(base: PLMap, y: Fraction) -> Fraction:
    k = floor(y)
    return base(y - k) + k


def _lift_compose(base: PLMap, H: PLMap) -> PLMap:
    """G o H where G is the lift of ``base``; exact."""
    xs = set(H.xs)
    inner = [b for b in base.xs if b < 1]
    for x0, x1, y0, y1 in H.pieces():
        if y0 == y1:
            continue
        lo, hi = min(y0, y1), max(y0, y1)
        for k in range(floor(lo), floor(hi) + 1):
            for b in inner:
                L = b + k
                if lo < L < hi:
                    xs.add(x0 + (L - y0) * (x1 - x0) / (y1 - y0))
    xs = sorted(xs)
    return PLMap(tuple(xs), tuple(_lift_eval(base, H(x)) for x in xs)).simplified()


class _PLPowers:
    def __init__(self, base: PLMap):
        self.base = base
        self.q = 1
        self.H = base

    def power(self, q: int) -> PLMap:
        if q < self.q:
            self.q, self.H = 1, self.base
        while self.q < q:
            self.H = _lift_compose(self.base, self.H)
            self.q += 1
        return self.H


def _displacement_witness(H: PLMap, p: int):
    # x with H(x) = x + p, exact
    for x0, x1, y0, y1 in H.pieces():
        d0, d1 = y0 - x0 - p, y1 - x1 - p
        if d0 == 0:
            return x0
        if d1 == 0:
            return x1
        if (d0 < 0) != (d1 < 0):
            return x0 + d0 * (x1 - x0) / (d0 - d1)
    return None


def _rot_pl(lift: MonotoneLift, tol: Fraction, max_q: int) -> RhoResult:
    pw = _PLPowers(lift.base)

    def test(p, q):
        H = pw.power(q)
        D = [y - x for x, y in zip(H.xs, H.ys)]
        m, M = min(D), max(D)
        if m <= p <= M:
            return 0, {"p": p, "q": q, "x": _displacement_witness(H, p)}
        return (1 if m > p else -1), None

    lo, hi = (0, 1), (1, 1)
    s, w = test(0, 1)
    if s == 0:
        return RhoResult.exact_value(0, w, "lift-exact")
    if s < 0:
        raise PreconditionError("negative rotation number", "rotation_number")
    s, w = test(1, 1)
    if s == 0:
        return RhoResult.exact_value(1, w, "lift-exact")
    if s > 0:
        raise PreconditionError("rotation number above 1", "rotation_number")
    while True:
        L, H = Fraction(*lo), Fraction(*hi)
        if H - L <= tol:
            return RhoResult(L, H, False, None, lo[1] + hi[1], "lift-bracket")
        p, q = lo[0] + hi[0], lo[1] + hi[1]
        if q > max_q:
            return RhoResult(L, H, False, None, q, "lift-depth")
        s, w = test(p, q)
        if s == 0:
            return RhoResult.exact_value(Fraction(p, q), w, "lift-exact")
        if s > 0:
            lo = (p, q)
        else:
            hi = (p, q)


def _iterate(G0, x, n):
    y = np.array(x, dtype=float)
    k = np.zeros_like(y)
    for _ in range(n):
        z = G0(y)
        fl = np.floor(z)
        k += fl
        y = z - fl
    return k + (y - x)  # displacement G^n(x) - x


def _rot_numeric(lift: MonotoneLift, tol: Fraction, max_tests: int = 12) -> RhoResult:
    G0 = lift.G0
    marks = [v for v in lift.marks.values() if isinstance(v, float)]
    grid = np.unique(np.concatenate([np.linspace(0, 1, NUMERIC_SAMPLES, endpoint=False),
                                     np.clip(np.array(marks), 0, 1 - 1e-16)]))
    # coarse bracket: |G^N(x) - x - N rho| < 1 for every x
    N = int(ceil(2 / tol)) + 2
    D = _iterate(G0, np.linspace(0, 1, 64, endpoint=False), N)
    lo_b = Fraction(int(floor(D.max())), N)
    hi_b = Fraction(int(ceil(D.min())), N)
    lo_b, hi_b = max(lo_b, Fraction(0)), min(hi_b, Fraction(1))
    lo, hi = (0, 1), (1, 1)
    tests = 0
    while tests < max_tests:
        p, q = lo[0] + hi[0], lo[1] + hi[1]
        m = Fraction(p, q)
        if q > N:
            break
        if m < lo_b:
            lo = (p, q)
            continue
        if m > hi_b:
            hi = (p, q)
            continue
        tests += 1
        Dq = _iterate(G0, grid, q)
        if Dq.min() <= p <= Dq.max():
            return RhoResult(m, m, False, {"p": p, "q": q, "samples": int(grid.size)}, q, "lift-numeric")
        if Dq.min() > p:
            lo, lo_b = (p, q), max(lo_b, m)
        else:
            hi, hi_b = (p, q), min(hi_b, m)
    L = max(lo_b, Fraction(*lo))
    H = min(hi_b, Fraction(*hi))
    return RhoResult(L, H, False, None, N, "lift-numeric")


def rotation_number(lift: MonotoneLift, tolerance=Fraction(1, 1000), max_q: int = MAX_Q) -> RhoResult:
    """rho(G) by Stern-Brocot descent with displacement certificates.

    G^q(x) >= x + p for some x certifies rho >= p/q; G^q(x) <= x + p for
    some x certifies rho <= p/q.  Exact for PL lifts when both hold.
    """
    tol = Fraction(tolerance) if isinstance(tolerance, float) else frac(tolerance)
    if lift.kind == "pl":
        return _rot_pl(lift, tol, max_q)
    return _rot_numeric(lift, tol)
