"""Unimodal maps: exact PL and evaluable (numpy) representations, landmarks,
core normalization, the finite-Markov route to rho_f, truncation and the
dispatching ``over_rotation_interval``.

Landmarks of a unimodal f with turning point c:

    a   fixed point in (c, hi]
    a'  point of [lo, c] with f(a') = a
    d   point >= a with f(d) = f(lo)
    d'  point of [c, a] with f(d') = d

The core is [f^2 c, f c]; the normalized core map is its affine rescaling
onto [0, 1], so that f(c) = 1 and f(1) = 0.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import InfiniteCriticalDataError, PreconditionError, TrivialDynamicsError
from .graph import min_mean_cycle, transition_graph, loop_orbit, TransitionGraph
from .errors import AcyclicGraphError
from .orders import HALF, RhoResult, RotationInterval
from .patterns import chi_sum2, pattern_of_orbit
from .plmap import PLMap, compose, frac

log = logging.getLogger(__name__)

MARKOV_CAP = 4000
GRID = 2048


# -- evaluable maps -----------------------------------------------------------------

@dataclass(frozen=True)
class EvaluableMap:
    """A unimodal map given by a vectorized float function.

    ``exact`` optionally evaluates at Fractions (polynomials with rational
    coefficients); it is used to certify branch decisions.  ``coeffs`` are
    polynomial coefficients, lowest degree first, when the map is one.
    """

    func: Callable
    c: float
    lipschitz: float
    name: str = ""
    exact: Callable | None = field(default=None, compare=False)
    derivative: Callable | None = field(default=None, compare=False)
    coeffs: tuple | None = None
    c_exact: Fraction | None = None
    lo: float = 0.0
    hi: float = 1.0
    eval_tol: float = 1e-12

    def __call__(self, x):
        return self.func(x)

    def f(self, x):
        """Scalar evaluation, exact when possible."""
        if isinstance(x, Fraction) and self.exact is not None:
            return self.exact(x)
        return float(self.func(float(x)))

    @property
    def degree(self) -> int | None:
        if self.coeffs is None:
            return None
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d] == 0:
            d -= 1
        return d


def polynomial_map(coeffs: Sequence, name: str = "") -> EvaluableMap:
    """Unimodal polynomial on [0, 1] from rational coefficients (low first)."""
    cs = tuple(frac(c) for c in coeffs)
    fl = np.array([float(c) for c in cs])
    dcs = tuple(k * cs[k] for k in range(1, len(cs)))
    dfl = np.array([float(c) for c in dcs]) if dcs else np.zeros(1)

    def func(x):
        return np.polynomial.polynomial.polyval(x, fl)

    def deriv(x):
        return np.polynomial.polynomial.polyval(x, dfl)

    def exact(x):
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    c_exact = None
    deg = len(dcs)
    while deg > 0 and dcs[deg - 1] == 0:
        deg -= 1
    if deg == 2:  # linear derivative
        c_exact = -dcs[0] / dcs[1]
        c = float(c_exact)
    else:
        roots = np.polynomial.polynomial.polyroots(dfl[: max(deg, 1)]) if deg > 1 else []
        cands = [r.real for r in np.atleast_1d(roots) if abs(r.imag) < 1e-12 and 0 < r.real < 1]
        cands = [r for r in cands if deriv(r - 1e-6) > 0 > deriv(r + 1e-6)]
        if len(cands) != 1:
            raise PreconditionError(f"polynomial {name or cs} has no unique interior maximum", "polynomial_map")
        c = float(cands[0])
    grid = np.linspace(0, 1, 1025)
    lip = float(np.max(np.abs(deriv(grid))))
    return EvaluableMap(func, c, lip, name or f"poly{tuple(str(x) for x in cs)}", exact, deriv, cs, c_exact)


def quadratic(nu) -> EvaluableMap:
    nu = frac(nu)
    return polynomial_map((0, nu, -nu), name=f"quadratic:{nu}")


def tent(height=1) -> PLMap:
    h = frac(height)
    return PLMap.from_points([(0, 0), (Fraction(1, 2), h), (1, 0)])


UnimodalMap = PLMap | EvaluableMap


def turning_point(f) -> Fraction | float:
    if isinstance(f, PLMap):
        return f.critical_interval()[0]
    return f.c_exact if f.c_exact is not None else f.c


def check_unimodal(f, grid: int = GRID) -> bool:
    if isinstance(f, PLMap):
        return f.is_unimodal()
    c = f.c
    xs = np.linspace(f.lo, f.hi, grid)
    ys = f(xs)
    left = ys[xs <= c]
    right = ys[xs >= c]
    return bool(np.all(np.diff(left) >= -f.eval_tol) and np.all(np.diff(right) <= f.eval_tol))


# -- landmarks -----------------------------------------------------------------------

@dataclass(frozen=True)
class Landmarks:
    c: object
    a: object
    a_prime: object
    d: object
    d_prime: object
    core: tuple
    horseshoe: bool
    horseshoe_point: object = None
    core_in_decreasing: bool = False
    normalized: object = None  # normalized core map, when it exists
    norm: "Landmarks | None" = None  # landmarks of the normalized map
    exact: bool = True

    def to_core(self, x):
        lo, hi = self.core
        return (x - lo) / (hi - lo)

    def from_core(self, t):
        lo, hi = self.core
        return lo + t * (hi - lo)


def _pl_landmarks(f: PLMap, normalize: bool = True) -> Landmarks:
    c, c2 = f.critical_interval()
    fc = f(c)
    if fc <= c:
        raise TrivialDynamicsError(f"f(c) = {fc} <= c = {c}", "landmarks")
    L = f(fc)
    fixed = f.fixed_points()
    right = [x for x in fixed if x > c]
    if not right:
        raise PreconditionError("no fixed point right of the turning point", "landmarks")
    a = min(right)
    if len(right) > 1 and any(x > c2 for x in right[1:]):
        raise PreconditionError(f"several fixed points right of c: {right}", "landmarks")
    pre_a = [x for x in f.preimages(a) if x <= c]
    a_prime = max(pre_a) if pre_a else None
    flo = f(f.lo)
    pre_d = [x for x in f.preimages(flo) if x >= a]
    d = min(pre_d) if pre_d else None
    d_prime = None
    if d is not None:
        pre = [x for x in f.preimages(d) if c <= x <= a]
        d_prime = max(pre) if pre else None
    hs = [x for x in fixed if L <= x < c]
    horseshoe = bool(hs)
    dec = L >= c
    g = nl = None
    if normalize and not horseshoe and not dec:
        g = f.restricted(L, fc).conjugated(0, 1)
        if not g.maps_into_itself():
            raise PreconditionError("core is not invariant", "landmarks")
        nl = _pl_landmarks(g, normalize=False)
    return Landmarks(c, a, a_prime, d, d_prime, (L, fc), horseshoe, hs[0] if hs else None, dec, g, nl, True)


def _root(fn, lo, hi):
    flo, fhi = fn(lo), fn(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        return None
    return brentq(fn, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=200)


def normalize_evaluable(f: EvaluableMap, L, H) -> EvaluableMap:
    W = H - L
    Lf, Wf = float(L), float(W)
    fc = f.func

    def g(t):
        return (fc(Lf + np.asarray(t) * Wf) - Lf) / Wf

    ex = None
    if f.exact is not None and isinstance(L, Fraction) and isinstance(W, Fraction):
        def ex(t, _e=f.exact):
            return (_e(L + t * W) - L) / W
    der = None
    if f.derivative is not None:
        def der(t, _d=f.derivative):
            return _d(Lf + np.asarray(t) * Wf)
    cn_exact = None
    if f.c_exact is not None and isinstance(L, Fraction):
        cn_exact = (f.c_exact - L) / W
    cn = float(cn_exact) if cn_exact is not None else (f.c - Lf) / Wf
    return EvaluableMap(g, cn, f.lipschitz, f"core({f.name})", ex, der, None, cn_exact, 0.0, 1.0, f.eval_tol / Wf)


def _ev_landmarks(f: EvaluableMap, normalize: bool = True) -> Landmarks:
    exact_ok = f.exact is not None and f.c_exact is not None
    if exact_ok:
        c = f.c_exact
        fc = f.exact(c)
        L = f.exact(fc)
    else:
        c = f.c
        fc = float(f(c))
        L = float(f(fc))
    if fc <= c:
        raise TrivialDynamicsError(f"f(c) = {float(fc):.6g} <= c = {float(c):.6g}", "landmarks")
    cf, fcf, Lf = float(c), float(fc), float(L)
    a = _root(lambda x: float(f(x)) - x, cf, f.hi)
    if a is None:
        raise PreconditionError("no fixed point right of the turning point", "landmarks")
    a_prime = _root(lambda x: float(f(x)) - a, f.lo, cf)
    flo = float(f(f.lo))
    d = _root(lambda x: float(f(x)) - flo, a, f.hi)
    d_prime = _root(lambda x: float(f(x)) - d, cf, a) if d is not None else None
    # horseshoe: a fixed point in [L, c)
    hs_pt = None
    certified = False
    if exact_ok and f.exact(L) <= L:
        hs_pt, certified = L, True
    elif Lf < cf:
        xs = np.linspace(Lf, cf, GRID, endpoint=False)
        gap = f(xs) - xs
        idx = np.nonzero(gap <= 0)[0]
        if idx.size:
            hs_pt = float(xs[idx[0]])
    horseshoe = hs_pt is not None
    dec = L >= c
    g = nl = None
    if normalize and not horseshoe and not dec:
        g = normalize_evaluable(f, L, fc)
        nl = _ev_landmarks(g, normalize=False)
    return Landmarks(c, a, a_prime, d, d_prime, (L, fc), horseshoe, hs_pt, dec, g, nl, certified)


def landmarks(f, tolerance=None) -> Landmarks:
    if isinstance(f, PLMap):
        return _pl_landmarks(f)
    return _ev_landmarks(f)


def normalized_core(f):
    lm = landmarks(f)
    if lm.normalized is None:
        raise PreconditionError("map has no normalizable core (horseshoe or decreasing core)", "normalize")
    return lm.normalized


# -- truncation ------------------------------------------------------------------------

def truncate(f, x):
    """f_x = min(f, f(x))."""
    if isinstance(f, PLMap):
        return f.truncated(f(frac(x)))
    level = float(f(float(x)))
    fn = f.func
    lo = _root(lambda t: float(fn(t)) - level, f.lo, f.c)
    c_new = lo if lo is not None else f.c

    def g(t):
        return np.minimum(fn(t), level)

    ex = None
    if f.exact is not None and isinstance(x, Fraction):
        lv = f.exact(x)

        def ex(t, _e=f.exact):
            return min(_e(t), lv)
    return EvaluableMap(g, c_new, f.lipschitz, f"trunc({f.name},{x})", ex, None, None, None, f.lo, f.hi, f.eval_tol)


# -- small helpers -----------------------------------------------------------------------

def _has_two_cycle(f, lm: Landmarks) -> bool:
    L, H = lm.core
    if isinstance(f, PLMap):
        r = f.restricted(L, H)
        h = compose(r, r)
        return any(x != lm.a for x in h.fixed_points())
    xs = np.linspace(float(L), float(H), GRID)
    gap = f(f(xs)) - xs
    far = np.abs(xs - float(lm.a)) > 1e-6
    s = np.sign(gap[far])
    return bool(np.any(s == 0) or np.any(s[1:] * s[:-1] < 0))


def _orbit_cycles(g: PLMap, S: set) -> list[list[Fraction]]:
    """Periodic cycles (period >= 2) among the points of a forward-invariant
    finite set."""
    cycles, done = [], set()
    for x in sorted(S):
        if x in done:
            continue
        path, pos = [], {}
        y = x
        while y not in pos and y not in done:
            pos[y] = len(path)
            path.append(y)
            y = g(y)
        if y in pos:
            cyc = path[pos[y]:]
            if len(cyc) >= 2:
                cycles.append(cyc)
        done.update(path)
    return cycles


def _forward_closure(g: PLMap, seeds, cap: int) -> set:
    S = set()
    todo = [frac(s) for s in seeds if s is not None]
    while todo:
        x = todo.pop()
        if x in S:
            continue
        S.add(x)
        if len(S) > cap:
            raise InfiniteCriticalDataError(f"orbit closure exceeds {cap} points", "rho_exact_markov")
        todo.append(g(x))
    return S


def _orbit_rho(orbit: Sequence[Fraction]) -> Fraction:
    return Fraction(chi_sum2(pattern_of_orbit(orbit).images), 2 * len(orbit))


# -- finite Markov route -------------------------------------------------------------------

def _special_cases(f, lm: Landmarks) -> RhoResult | None:
    exact = isinstance(f, PLMap) or lm.exact
    if lm.core_in_decreasing:
        if _has_two_cycle(f, lm):
            return RhoResult(HALF, HALF, exact, {"case": "decreasing-core 2-cycle"}, None, "decreasing-core")
        raise TrivialDynamicsError("core lies in the decreasing branch and has no 2-cycle", "dispatch")
    if lm.horseshoe:
        return RhoResult(Fraction(0), Fraction(0), exact, {"fixed_point": lm.horseshoe_point}, None, "horseshoe")
    n = lm.norm
    g = lm.normalized
    if isinstance(g, PLMap):
        alt = g(Fraction(0)) >= n.a
    elif g.exact is not None and g.c_exact is not None:
        # x >= a  iff  x in [c, 1] and g(x) <= x
        y = g.exact(Fraction(0))
        alt = y >= g.c_exact and g.exact(y) <= y
        exact = True
    else:
        alt = float(g(0.0)) >= n.a
        exact = False
    if alt:
        return RhoResult(HALF, HALF, exact, {"case": "every orbit alternates around a"}, None, "alternating")
    return None


def rho_exact_markov(f: PLMap, cap: int = MARKOV_CAP, extra: Sequence = ()) -> RhoResult:
    """Exact rho_f for a PL unimodal map with finite critical data."""
    if not isinstance(f, PLMap):
        raise PreconditionError("exact Markov route needs a PL map", "rho_exact_markov")
    lm = landmarks(f)
    sp = _special_cases(f, lm)
    if sp is not None:
        return sp
    g, n = lm.normalized, lm.norm
    seeds = list(g.xs) + [Fraction(0), Fraction(1), n.a, n.a_prime] + list(extra)
    S = _forward_closure(g, seeds, cap)
    G = transition_graph(g, S, a=n.a)
    best = None
    try:
        r = min_mean_cycle(G, "cross")
        best = RhoResult.exact_value(r.lo, witness={"cycle": r.witness, "vertices": [G.vertices[i] for i in r.witness]}, method="markov")
    except AcyclicGraphError:
        pass
    for cyc in _orbit_cycles(g, S):
        rho = _orbit_rho(cyc)
        if best is None or rho < best.lo:
            best = RhoResult.exact_value(rho, witness={"orbit": [lm.from_core(x) for x in cyc]}, method="markov-orbit")
    if best is None:
        raise TrivialDynamicsError("no periodic behaviour besides fixed points", "rho_exact_markov")
    return best


def has_finite_critical_data(f: PLMap, cap: int = MARKOV_CAP) -> bool:
    try:
        rho_exact_markov(f, cap)
        return True
    except InfiniteCriticalDataError:
        return False


# -- membership witnesses ------------------------------------------------------------------------

def membership_witness(f, budget: int = 64) -> list[Fraction]:
    """p/(2n) for every n <= budget with f^n(c) <= c, where p counts the
    sign changes (relative to a) along c, f(c), ..., f^{n-1}(c), cyclically.
    Each value lies in the over-rotation interval."""
    lm = landmarks(f)
    c, a = lm.c, lm.a
    if not (c < a and _val(f, c) > a):
        raise PreconditionError("need c < a < f(c)", "membership_witness")
    out = []
    x = c
    sides = []
    for n in range(1, budget + 1):
        sides.append(x >= a)
        x = _val(f, x)
        if x <= c:
            p = sum(sides[t] != sides[(t + 1) % n] for t in range(n))
            if p:
                out.append(Fraction(p, 2 * n))
    return out


def _val(f, x):
    if isinstance(f, PLMap):
        return f(x)
    if isinstance(x, Fraction) and f.exact is not None:
        return f.exact(x)
    return float(f(float(x)))


# -- region K' ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegionReport:
    K1: tuple
    K2p: tuple
    K3: tuple
    orbit: tuple
    rho: Fraction | None


def _inside(I, regions) -> bool:
    return any(lo <= I[0] and I[1] <= hi for lo, hi in regions)


def minimal_orbit_region(f, cap: int = MARKOV_CAP) -> RegionReport:
    """K1 = [0, a'], K2' = [c, d'], K3 = [d, 1] on the normalized core, plus a
    periodic orbit staying in their union that realizes rho_f."""
    if isinstance(f, PLMap) and f.lo == 0 and f.hi == 1 and f(f.critical_interval()[0]) == 1 and f(1) == 0:
        g = f
    else:
        lm0 = landmarks(f)
        if lm0.horseshoe and isinstance(f, PLMap):
            g = f.restricted(*lm0.core).conjugated(0, 1) if lm0.core[0] < lm0.core[1] else f
        else:
            g = normalized_core(f)
    if not isinstance(g, PLMap):
        n = _ev_landmarks(g, normalize=False)
        return RegionReport((0.0, n.a_prime), (n.c, n.d_prime), (n.d, 1.0), (), None)
    n = _pl_landmarks(g, normalize=False)
    K1 = (Fraction(0), n.a_prime)
    K2 = (n.c, n.d_prime)
    K3 = (n.d, Fraction(1))
    if n.horseshoe:
        orb, x = [], n.c
        while x not in orb:
            orb.append(x)
            x = g(x)
        orb.append(x)
        return RegionReport(K1, K2, K3, tuple(orb), Fraction(0))
    regions = [K for K in (K1, K2, K3) if None not in K]
    seeds = list(g.xs) + [Fraction(0), Fraction(1), n.a, n.a_prime, n.d, n.d_prime]
    S = _forward_closure(g, seeds, cap)
    G = transition_graph(g, S, a=n.a)
    keep = [i for i, I in enumerate(G.vertices) if _inside(I, regions)]
    idx = {v: k for k, v in enumerate(keep)}
    arcs = tuple((idx[i], idx[j]) for i, j in G.arcs if i in idx and j in idx)
    sub = TransitionGraph(
        tuple(G.vertices[i] for i in keep), arcs, G.a,
        {e: G.cross[keep[e[0]], keep[e[1]]] for e in arcs},
        {e: G.right[keep[e[0]], keep[e[1]]] for e in arcs},
    )
    best_orbit, best = None, None
    try:
        r = min_mean_cycle(sub, "cross")
        best_orbit, best = loop_orbit(g, sub, r.witness), r.lo
    except AcyclicGraphError:
        pass
    for cyc in _orbit_cycles(g, S):
        if all(any(lo <= x <= hi for lo, hi in regions) for x in cyc):
            rho = _orbit_rho(cyc)
            if best is None or rho < best:
                best_orbit, best = cyc, rho
    return RegionReport(K1, K2, K3, tuple(best_orbit or ()), best)


# -- dispatch ------------------------------------------------------------------------------

def over_rotation_interval(f, tolerance=Fraction(1, 1000)) -> RotationInterval:
    """I_f = [rho_f, 1/2] (or the trivial marker)."""
    from .lift import rotation_number, water_lift

    try:
        lm = landmarks(f)
    except TrivialDynamicsError as e:
        return RotationInterval(None, True, str(e))
    try:
        sp = _special_cases(f, lm)
    except TrivialDynamicsError as e:
        return RotationInterval(None, True, str(e))
    if sp is not None:
        return RotationInterval(sp, False, sp.method)
    if isinstance(f, PLMap):
        try:
            r = rho_exact_markov(f)
            return RotationInterval(r, False, "markov")
        except InfiniteCriticalDataError:
            log.debug("critical data infinite; falling back to the lift")
    try:
        lift = water_lift(lm.normalized)
        r = rotation_number(lift, tolerance)
    except PreconditionError as e:
        raise PreconditionError(str(e), "over_rotation_interval") from e
    return RotationInterval(r, False, "lift")
