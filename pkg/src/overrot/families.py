"""Class membership (S: concave-down unimodal with f(0) = f(1) = 0; G: S
plus polynomial of degree <= 3), the comparison criteria that certify
I_f contains I_g, and one-parameter sweeps.

Verdicts on sampled grids are semi-decisions and say so; exact checks are
used for PL maps and for polynomials with rational coefficients.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import PreconditionError
from .orders import HALF, RotationInterval
from .plmap import PLMap, frac
from .unimodal import (
    EvaluableMap,
    landmarks,
    over_rotation_interval,
    polynomial_map,
    quadratic,
    turning_point,
)

GRID = 1001


@dataclass
class Verdict:
    holds: bool
    witnesses: list = field(default_factory=list)
    ledger: dict = field(default_factory=dict)
    semi_decision: bool = False
    conclusion: str = ""

    def __post_init__(self):
        if self.holds and self.witnesses:
            raise ValueError("a holding verdict carries no witnesses")

    def to_json(self) -> dict:
        from .formats import jsonable

        return jsonable({
            "holds": self.holds,
            "witnesses": self.witnesses,
            "ledger": self.ledger,
            "semi_decision": self.semi_decision,
            "conclusion": self.conclusion,
        })


def _verdict(ledger: dict, witnesses: list, semi: bool, conclusion: str) -> Verdict:
    ok = all(ledger.values()) and not witnesses
    return Verdict(ok, [] if ok else witnesses, ledger, semi, conclusion if ok else "")


# -- exact polynomial sign analysis ---------------------------------------------------------

def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_eval(p: Sequence[Fraction], x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_deriv(p):
    return _trim([k * p[k] for k in range(1, len(p))] or [Fraction(0)])


def poly_rem(a, b):
    a, b = [Fraction(x) for x in _trim(a)], _trim(b)
    while len(a) >= len(b) and any(a):
        k = len(a) - len(b)
        q = a[-1] / b[-1]
        for i in range(len(b)):
            a[i + k] -= q * b[i]
        a = _trim(a[:-1] if a[-1] == 0 and len(a) > 1 else a)
        if len(a) < len(b):
            break
    return _trim(a)


def sign_surd(A: Fraction, B: Fraction, D: Fraction) -> int:
    """Sign of A + B*sqrt(D), D >= 0, exactly."""
    sa = (A > 0) - (A < 0)
    sb = (B > 0) - (B < 0) if D > 0 else 0
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    lhs, rhs = A * A, B * B * D
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def _critical_points(p, lo, hi):
    """Critical points of p in (lo, hi) as (u, s, D, w): x = (u + s*sqrt(D))/w."""
    dp = poly_deriv(p)
    out = []
    if len(dp) == 2 and dp[1] != 0:
        x = -dp[0] / dp[1]
        if lo < x < hi:
            out.append((x, Fraction(0), Fraction(0), Fraction(1)))
    elif len(dp) == 3:
        c0, c1, c2 = dp
        D = c1 * c1 - 4 * c2 * c0
        if D >= 0:
            for s in (1, -1):
                u, w = -c1, 2 * c2
                # lo < (u + s sqrt D)/w < hi, multiply through by w (track sign)
                sg = 1 if w > 0 else -1
                if sign_surd((u - lo * w) * sg, s * sg, D) > 0 and sign_surd((hi * w - u) * sg, -s * sg, D) > 0:
                    out.append((u, Fraction(s), D, w))
    elif len(dp) > 3:
        raise ValueError("exact sign analysis supports degree <= 3")
    return out


def poly_nonneg_on(p, lo=Fraction(0), hi=Fraction(1)) -> tuple[bool, list]:
    """Exact test of p >= 0 on [lo, hi] for deg p <= 3.  Returns (ok, witnesses)."""
    p = _trim([frac(c) for c in p])
    lo, hi = frac(lo), frac(hi)
    bad = [x for x in (lo, hi) if poly_eval(p, x) < 0]
    if bad:
        return False, bad
    dp = poly_deriv(p)
    for u, s, D, w in _critical_points(p, lo, hi):
        R = poly_rem(p, dp) if len(dp) > 1 else p
        R = R + [Fraction(0)] * (2 - len(R))
        alpha, beta = R[0 + 1], R[0]
        # R(x) = alpha*x + beta at x = (u + s sqrt D)/w; scale by w^2 > 0
        A, B = (alpha * u + beta * w) * w, alpha * s * w
        if sign_surd(A, B, D) < 0:
            x = (float(u) + float(s) * float(D) ** 0.5) / float(w)
            return False, [x]
    return True, []


# -- helpers over both representations ------------------------------------------------------

def _is_pl(f) -> bool:
    return isinstance(f, PLMap)


def _ev(f, x):
    if _is_pl(f):
        return f(frac(x))
    return float(f(float(x)))


def _grid(n: int = GRID):
    return [Fraction(i, n - 1) for i in range(n)]


def _deriv(f, x):
    """Derivative for evaluable maps: declared derivative, else central
    difference with a step tied to the Lipschitz bound."""
    if f.derivative is not None:
        return np.asarray(f.derivative(x), dtype=float)
    h = 1e-6 / max(1.0, f.lipschitz)
    return (f(np.asarray(x) + h) - f(np.asarray(x) - h)) / (2 * h)


def is_even(f) -> bool:
    """Symmetric about 1/2 (exact for PL and polynomial maps)."""
    if _is_pl(f):
        xs = set(f.xs) | {1 - x for x in f.xs}
        return all(f(x) == f(1 - x) for x in xs)
    if f.coeffs is not None:
        p = [frac(c) for c in f.coeffs]
        # coefficients of p(1 - x)
        q = [Fraction(0)] * len(p)
        from math import comb

        for k, ck in enumerate(p):
            for j in range(k + 1):
                q[j] += ck * comb(k, j) * (-1) ** j
        return _trim(p) == _trim(q)
    xs = np.linspace(0, 1, GRID)
    return bool(np.allclose(f(xs), f(1 - xs), atol=1e-12))


# -- class membership ---------------------------------------------------------------------

def class_check(f, cls: str = "S", grid: int = GRID) -> Verdict:
    if cls not in ("S", "G"):
        raise ValueError("class must be 'S' or 'G'")
    led: dict = {}
    wit: list = []
    semi = False
    if _is_pl(f):
        led["domain"] = f.lo == 0 and f.hi == 1
        if not led["domain"]:
            return _verdict(led, ["domain"], False, "")
        led["f0_zero"] = f(Fraction(0)) == 0
        led["f1_zero"] = f(Fraction(1)) == 0
        u, v = f.critical_interval()
        led["unique_turning_point"] = u == v and f.is_unimodal()
        sl = [(y1 - y0) / (x1 - x0) for x0, x1, y0, y1 in f.pieces()]
        led["concave_down"] = all(b <= a for a, b in zip(sl, sl[1:]))
        led["fc_gt_c"] = f(u) > u
        led["into_itself"] = f.maps_into_itself()
        # reported, not gated: PL maps have corners
        info = {"c1": len(set(sl)) == len(sl) == 1, "strictly_concave": False}
        if cls == "G":
            led["polynomial_deg_le_3"] = False
    else:
        exact = f.exact is not None and f.coeffs is not None
        if exact:
            led["f0_zero"] = f.exact(Fraction(0)) == 0
            led["f1_zero"] = f.exact(Fraction(1)) == 0
        else:
            led["f0_zero"] = abs(float(f(0.0))) <= f.eval_tol
            led["f1_zero"] = abs(float(f(1.0))) <= f.eval_tol
            semi = True
        xs = np.linspace(0, 1, grid)
        ys = f(xs)
        c = f.c
        left, right = ys[xs <= c], ys[xs >= c]
        led["unique_turning_point"] = bool(np.all(np.diff(left) > 0) and np.all(np.diff(right) < 0))
        if f.coeffs is not None and len(_trim(list(f.coeffs))) <= 4:
            p2 = poly_deriv(poly_deriv([frac(x) for x in f.coeffs]))
            ok, _ = poly_nonneg_on([-x for x in p2])
            led["concave_down"] = ok
            info = {"c1": True, "strictly_concave": all(poly_eval(p2, x) < 0 for x in (0, 1))}
        else:
            semi = True
            dd = np.diff(ys, 2)
            led["concave_down"] = bool(np.all(dd <= 1e-12))
            der = _deriv(f, xs)
            jumps = np.abs(np.diff(der))
            info = {"c1": bool(np.max(jumps) < 1e3 * f.lipschitz / grid), "strictly_concave": bool(np.all(dd < 0))}
            led["c1"] = info["c1"]
        led["fc_gt_c"] = float(f(c)) > c
        led["into_itself"] = bool(ys.min() >= -f.eval_tol and ys.max() <= 1 + f.eval_tol)
        if cls == "G":
            led["polynomial_deg_le_3"] = f.coeffs is not None and (f.degree or 0) <= 3
    wit = [k for k, v in led.items() if not v]
    v = _verdict(led, wit, semi, f"member of class {cls}")
    v.ledger = {**led, "info": info}  # info is reported, never gated
    return v


# -- derivative and scaling comparisons ---------------------------------------------------------

def _ratio(f):
    lm = landmarks(f)
    c, a, ap = lm.c, lm.a, lm.a_prime
    if ap is None or ap == c:
        return None
    if _is_pl(f):
        return abs(c - a) / abs(c - ap)
    return abs(float(c) - float(a)) / abs(float(c) - float(ap))


def _pl_slope_dominates(f: PLMap, g: PLMap) -> list:
    xs = sorted(set(f.xs) | set(g.xs))
    bad = []
    for x0, x1 in zip(xs, xs[1:]):
        sf = (f(x1) - f(x0)) / (x1 - x0)
        sg = (g(x1) - g(x0)) / (x1 - x0)
        if abs(sf) < abs(sg):
            bad.append((x0 + x1) / 2)
    return bad


def compare_lemma32(f, g, grid: int = GRID) -> Verdict:
    """|f'| >= |g'| everywhere and the a-ratio of f dominates that of g,
    for f, g in S with a common turning point.  Holds => I_f contains I_g."""
    cf, cg = turning_point(f), turning_point(g)
    if float(cf) != float(cg) or (_is_pl(f) and _is_pl(g) and cf != cg):
        raise PreconditionError(f"turning points differ: {cf} vs {cg}", "compare_lemma32")
    led = {"f_in_S": class_check(f, "S", grid).holds, "g_in_S": class_check(g, "S", grid).holds}
    wit: list = []
    semi = False
    if _is_pl(f) and _is_pl(g):
        bad = _pl_slope_dominates(f, g)
    elif (not _is_pl(f) and not _is_pl(g) and f.coeffs is not None and g.coeffs is not None
          and f.c_exact is not None and f.c_exact == g.c_exact):
        c = f.c_exact
        df = poly_deriv([frac(x) for x in f.coeffs])
        dg = poly_deriv([frac(x) for x in g.coeffs])
        n = max(len(df), len(dg))
        df, dg = df + [Fraction(0)] * (n - len(df)), dg + [Fraction(0)] * (n - len(dg))
        ok1, w1 = poly_nonneg_on([a - b for a, b in zip(df, dg)], 0, c)
        ok2, w2 = poly_nonneg_on([b - a for a, b in zip(df, dg)], c, 1)
        bad = w1 + w2
    else:
        semi = True
        xs = np.linspace(0, 1, grid)
        ff = f if not _is_pl(f) else None
        dfv = _deriv(f, xs) if ff is not None else np.array([float(f.slope(frac(float(x)))) for x in xs])
        dgv = _deriv(g, xs) if not _is_pl(g) else np.array([float(g.slope(frac(float(x)))) for x in xs])
        bad = [float(x) for x, u, v in zip(xs, dfv, dgv) if abs(u) < abs(v) - 1e-12]
    led["abs_derivative"] = not bad
    wit += bad
    if is_even(f) and is_even(g):
        led["ratio"] = True  # both ratios equal 1 by symmetry
    else:
        rf, rg = _ratio(f), _ratio(g)
        led["ratio"] = rf is not None and rg is not None and rf >= rg
        if not led["ratio"]:
            wit.append({"ratio_f": rf, "ratio_g": rg})
    return _verdict(led, wit, semi, "I_f contains I_g")


def _pl_scaling_fail(g: PLMap) -> list:
    """Exact check of |g'(x)(x-c)| <= |g'(x')(x'-c)| for x >= c."""
    c = g.critical_interval()[0]
    lb = g.restricted(g.lo, c)
    rb = g.restricted(c, g.hi)
    # split the right branch at preimages of left-branch breakpoint values
    cuts = set(rb.xs)
    for y in lb.ys:
        cuts.update(x for x in rb.preimages(y) if c <= x <= g.hi)
    cuts = sorted(cuts)
    bad = []
    for x0, x1 in zip(cuts, cuts[1:]):
        sR = (g(x1) - g(x0)) / (x1 - x0)
        mid = (x0 + x1) / 2

        def partner(x):
            pre = [t for t in lb.preimages(g(x)) if t <= c]
            return min(pre) if pre else None

        # both sides are affine on [x0, x1]; compare at the endpoints with
        # the slopes valid inside the piece
        ym = g(mid)
        pm = partner(mid)
        if pm is None:
            continue
        sL = lb.slope(pm)
        if pm == c:
            sL = lb.slope(pm, "left")
        for x in (x0, x1):
            p = pm + (g(x) - ym) / sL if sL != 0 else pm
            lhs = abs(sR) * (x - c)
            rhs = abs(sL) * (c - p)
            if lhs > rhs:
                bad.append(x)
    return sorted(set(bad))


def scaling_check(g, grid: int = GRID) -> Verdict:
    """|g'(x)(x-c)| <= |g'(x')(x'-c)| for x >= c, x' the left partner of x.
    Holds => I_{nu g} contains I_g for nu > 1."""
    led = {"g_in_S": class_check(g, "S", grid).holds}
    semi = False
    if is_even(g):
        led["scaling"] = True
        return _verdict(led, [], False, "I_{nu g} contains I_g for nu > 1")
    if _is_pl(g):
        bad = _pl_scaling_fail(g)
    else:
        semi = True
        c = g.c
        xs = np.linspace(c, 1, grid)[1:-1]
        from scipy.optimize import brentq

        bad = []
        for x in xs:
            y = float(g(x))
            xp = brentq(lambda t: float(g(t)) - y, 0, c) if float(g(0.0)) <= y else 0.0
            lhs = abs(float(_deriv(g, x)) * (x - c))
            rhs = abs(float(_deriv(g, xp)) * (xp - c))
            if lhs > rhs * (1 + 1e-9) + 1e-12:
                bad.append(float(x))
    led["scaling"] = not bad
    return _verdict(led, bad, semi, "I_{nu g} contains I_g for nu > 1")


# -- pointwise dominance in G --------------------------------------------------------------------

def dominance_check(f, g, grid: int = GRID) -> Verdict:
    """f >= g on [0, 1] for f, g in G (exact sign analysis).  Holds =>
    I_f contains I_g."""
    led = {"f_in_G": class_check(f, "G", grid).holds, "g_in_G": class_check(g, "G", grid).holds}
    wit: list = []
    semi = False
    if not _is_pl(f) and not _is_pl(g) and f.coeffs is not None and g.coeffs is not None:
        pf, pg = [frac(x) for x in f.coeffs], [frac(x) for x in g.coeffs]
        n = max(len(pf), len(pg))
        pf, pg = pf + [Fraction(0)] * (n - len(pf)), pg + [Fraction(0)] * (n - len(pg))
        h = [a - b for a, b in zip(pf, pg)]
        ok, w = poly_nonneg_on(h)
        if not ok:
            roots = np.polynomial.polynomial.polyroots([float(x) for x in _trim(h)]) if len(_trim(h)) > 1 else []
            # interior roots only; f - g vanishes at both ends for every pair in G
            cross = sorted(float(r.real) for r in np.atleast_1d(roots) if abs(r.imag) < 1e-12 and 0 < r.real < 1)
            wit = [float(x) for x in w] + [{"crossing": x} for x in cross]
    elif _is_pl(f) and _is_pl(g):
        xs = sorted(set(f.xs) | set(g.xs))
        wit = [x for x in xs if f(x) < g(x)]
    else:
        semi = True
        xs = np.linspace(0, 1, grid)
        wit = [float(x) for x in xs[f(xs) < g(xs) - 1e-15]]
    led["dominance"] = not wit
    return _verdict(led, wit, semi, "I_f contains I_g")


# -- repellence -----------------------------------------------------------------------------------

def psi(g, x, lm=None):
    """psi_g: for x in [a', c) the right partner x' in (c, a] with
    g(x') = g(x) (the point of [x, a] closest to a with that image);
    identity elsewhere."""
    lm = lm or landmarks(g)
    c, a, ap = lm.c, lm.a, lm.a_prime
    if ap is not None and ap <= x < c:
        y = _ev(g, x)
        if _is_pl(g):
            cand = [t for t in g.preimages(y) if c <= t <= a]
            return max(cand)
        from scipy.optimize import brentq

        return brentq(lambda t: float(g(t)) - y, float(c), float(a))
    return x


def repellence_check(f, g, region="full", grid: int = GRID) -> Verdict:
    """[f(y), a] contains [g(y), a] at y = psi_g(x) for grid x in region.
    Holds => I_f contains I_g.

    region: "full", "core" ([g^2 c, g c]), an explicit (lo, hi), or
    "split" for the sign pattern f <= g on [g^2 c, a'], f >= g on
    [c, a], f <= g on [a, g c].
    """
    lm = landmarks(g)
    a = lm.a
    # a must not be a local extremum of g (no flat spot touching a)
    if _is_pl(g):
        if g.slope(a, "left") == 0 or (a < g.hi and g.slope(a) == 0):
            raise PreconditionError("fixed point of g sits on a flat spot", "repellence")
    if region == "split":
        return _split_signs(f, g, lm, grid)
    if region == "full":
        lo, hi = (g.lo, g.hi) if _is_pl(g) else (getattr(g, "lo", 0), getattr(g, "hi", 1))
    elif region == "core":
        lo, hi = lm.core
    else:
        lo, hi = region
    semi = True
    if _is_pl(f) and _is_pl(g):
        lo, hi = frac(lo), frac(hi)
        xs = [lo + (hi - lo) * t for t in _grid(grid)]
        xs += [x for x in set(f.xs) | set(g.xs) if lo <= x <= hi]
    else:
        xs = list(np.linspace(float(lo), float(hi), grid))
        a = float(a)
    bad = []
    for x in sorted(set(xs)):
        y = psi(g, x, lm)
        fy, gy = _ev(f, y), _ev(g, y)
        ok = (fy <= gy <= a) or (a <= gy <= fy)
        if not ok and not _is_pl(f):
            ok = (fy <= gy + 1e-12 and gy <= a + 1e-12) or (a - 1e-12 <= gy and gy <= fy + 1e-12)
        if not ok:
            bad.append(y if isinstance(y, Fraction) else float(y))
    led = {"repellent": not bad}
    return _verdict(led, bad, semi, "I_f contains I_g")


def _split_signs(f, g, lm, grid) -> Verdict:
    L, H = lm.core
    c, a, ap = lm.c, lm.a, lm.a_prime
    parts = {"f<=g on [g2c,a']": (L, ap, -1), "f>=g on [c,a]": (c, a, 1), "f<=g on [a,gc]": (a, H, -1)}
    led, wit = {}, []
    for name, (u, v, s) in parts.items():
        if u is None or v is None:
            led[name] = False
            continue
        xs = np.linspace(float(u), float(v), grid) if not _is_pl(g) else [frac(u) + (frac(v) - frac(u)) * t for t in _grid(grid)]
        bad = [x for x in xs if s * (_ev(f, x) - _ev(g, x)) < (-1e-12 if not _is_pl(g) else 0)]
        led[name] = not bad
        wit += bad[:3]
    return _verdict(led, wit, True, "I_f contains I_g")


def contraction_conjugate(f, q, c=None):
    """h(x) = c + q (f(c + (x - c)/q) - c), the rescaled copy of f used to
    compare a dominating map with a flatter one."""
    q = float(q)
    cc = float(turning_point(f) if c is None else c)
    fn = f.func

    def h(x):
        x = np.asarray(x, dtype=float)
        t = np.clip(cc + (x - cc) / q, 0, 1)
        return cc + q * (fn(t) - cc)

    return EvaluableMap(h, cc, f.lipschitz, f"conj({f.name},{q})")


# -- families and sweeps -----------------------------------------------------------------------

KINDS = ("quadratic", "scaled", "pl-interp")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    lo: Fraction
    hi: Fraction
    steps: int
    base: object = None
    target: object = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.steps < 1 or self.lo > self.hi:
            raise ValueError("need steps >= 1 and lo <= hi")
        if self.kind in ("scaled", "pl-interp") and self.base is None:
            raise ValueError(f"{self.kind} family needs a base map")
        if self.kind == "pl-interp" and self.target is None:
            raise ValueError("pl-interp family needs a target map")

    def grid(self) -> list[Fraction]:
        if self.steps == 1:
            return [self.lo]
        return [self.lo + (self.hi - self.lo) * Fraction(k, self.steps - 1) for k in range(self.steps)]

    def member(self, nu):
        nu = frac(nu)
        if self.kind == "quadratic":
            return quadratic(nu)
        if self.kind == "scaled":
            b = self.base
            if isinstance(b, PLMap):
                return PLMap(b.xs, tuple(nu * y for y in b.ys))
            if b.coeffs is not None:
                return polynomial_map([nu * frac(x) for x in b.coeffs], f"{nu}*{b.name}")
            fn = b.func
            return EvaluableMap(lambda x: float(nu) * fn(x), b.c, b.lipschitz * float(nu), f"{nu}*{b.name}")
        f0, f1 = self.base, self.target
        xs = sorted(set(f0.xs) | set(f1.xs))
        return PLMap(tuple(xs), tuple(f0(x) + nu * (f1(x) - f0(x)) for x in xs))


@dataclass
class SweepRow:
    nu: Fraction
    interval: RotationInterval | None
    flags: list = field(default_factory=list)

    @property
    def lo(self):
        return None if self.interval is None or self.interval.trivial else self.interval.left.lo

    @property
    def hi(self):
        return None if self.interval is None or self.interval.trivial else self.interval.left.hi

    @property
    def exact(self) -> bool:
        return self.interval is not None and self.interval.exact


@dataclass
class SweepReport:
    rows: list
    monotone: bool
    violations: list
    hypotheses: dict
    note: str = ""

    def csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["nu", "rho_lo", "rho_hi", "exact", "flags"])
        for r in self.rows:
            w.writerow([
                str(r.nu),
                "" if r.lo is None else str(r.lo),
                "" if r.hi is None else str(r.hi),
                "true" if r.exact else "false",
                ";".join(r.flags),
            ])
        return buf.getvalue()


def _branch_hypotheses(fam: FamilySpec, members: list, grid: int) -> dict:
    """Which of the three sufficient conditions hold between consecutive
    parameters (larger parameter first)."""
    out = {"derivative": True, "scaling": False, "dominance": True}
    if fam.kind == "scaled":
        try:
            out["scaling"] = scaling_check(fam.base, grid).holds
        except PreconditionError:
            out["scaling"] = False
    for (mu, fm), (nu, fn) in zip(members, members[1:]):
        try:
            if out["derivative"] and not compare_lemma32(fn, fm, grid).holds:
                out["derivative"] = False
        except PreconditionError:
            out["derivative"] = False
        try:
            if out["dominance"] and not dominance_check(fn, fm, grid).holds:
                out["dominance"] = False
        except PreconditionError:
            out["dominance"] = False
    out["any"] = any(out.values())
    return out


def sweep(family: FamilySpec, tolerance=Fraction(1, 1000), grid: int = 201, check_hypotheses: bool = True) -> SweepReport:
    """Over-rotation intervals along a one-parameter family, with the
    nesting check I_{f_nu} contains I_{f_mu} for nu > mu."""
    tol = frac(tolerance) if not isinstance(tolerance, float) else Fraction(tolerance)
    rows, members = [], []
    for nu in sorted(family.grid()):
        flags = []
        try:
            f = family.member(nu)
            members.append((nu, f))
            iv = over_rotation_interval(f, tol)
            if iv.trivial:
                flags.append("trivial")
            else:
                flags.append(iv.left.method)
        except Exception as e:  # a row never aborts the sweep
            iv = None
            flags.append(f"error:{type(e).__name__}")
        rows.append(SweepRow(nu, iv, flags))
    viol = []
    for i, r_mu in enumerate(rows):
        for r_nu in rows[i + 1:]:
            if r_mu.interval is None or r_nu.interval is None:
                continue
            if r_mu.interval.trivial:
                continue
            if r_nu.interval.trivial:
                viol.append((r_mu.nu, r_nu.nu))
            elif r_mu.exact and r_nu.exact:
                if r_nu.lo > r_mu.lo:
                    viol.append((r_mu.nu, r_nu.nu))
            elif r_nu.hi > r_mu.lo + 2 * tol:
                viol.append((r_mu.nu, r_nu.nu))
    hyp = _branch_hypotheses(family, members, grid) if check_hypotheses and len(members) > 1 else {}
    note = ""
    first = next((r for r in rows if r.interval is not None and not r.interval.trivial), None)
    if first is not None and first.hi < HALF:
        note = (f"rho < 1/2 at nu = {first.nu}: odd periods occur there; nested intervals give "
                "P(f_nu) containing P(f_mu) for nu > mu")
    return SweepReport(rows, not viol, viol, hyp, note)
