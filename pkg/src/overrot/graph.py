"""Transition graphs of piecewise-linear maps and minimum mean cycles.

Vertices are the closed intervals between consecutive points of
(breakpoints of f) + (markers).  There is an arc I -> J when f(I) covers J.
Two integer weights live on every arc:

* ``cross``: 1 when I is right of the fixed point a and J is left of it
* ``right``: 1 when I is right of a

A cycle's mean cross weight equals l/k for the over-rotation pair (l, k) of
the periodic orbit it carries.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import AcyclicGraphError, PreconditionError
from .orders import OverRotationPair, RhoResult
from .plmap import PLMap, frac

WEIGHT_KINDS = ("cross", "right")


@dataclass(frozen=True)
class TransitionGraph:
    vertices: tuple[tuple[Fraction, Fraction], ...]
    arcs: tuple[tuple[int, int], ...]
    a: Fraction
    cross: dict = field(compare=False)
    right: dict = field(compare=False)

    def weight(self, kind: str) -> dict:
        if kind not in WEIGHT_KINDS:
            raise ValueError(f"unknown weight kind {kind!r}")
        return self.cross if kind == "cross" else self.right

    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for i, j in self.arcs:
            out[i].append(j)
        return out

    def is_right(self, i: int) -> bool:
        return self.vertices[i][0] >= self.a

    def dump(self) -> str:
        """One arc per line: ``i j w_cross w_right`` (0-based, left to right)."""
        return "\n".join(f"{i} {j} {self.cross[i, j]} {self.right[i, j]}" for i, j in self.arcs)

    def cycle_mean(self, cycle: Sequence[int], kind: str = "cross") -> Fraction:
        w = self.weight(kind)
        k = len(cycle)
        return Fraction(sum(w[cycle[t], cycle[(t + 1) % k]] for t in range(k)), k)


def _pick_fixed_point(f: PLMap, markers: set) -> Fraction:
    fixed = [m for m in markers if f.lo <= m <= f.hi and f(m) == m]
    if not fixed:
        raise PreconditionError("markers must include a fixed point of the map", "transition_graph")
    # the relevant fixed point sits on the decreasing branch, i.e. the largest
    return max(fixed)


def transition_graph(f: PLMap, markers: Iterable = (), a=None) -> TransitionGraph:
    markers = {frac(m) for m in markers}
    if a is None:
        a = _pick_fixed_point(f, markers)
    else:
        a = frac(a)
        if f(a) != a:
            raise PreconditionError(f"{a} is not a fixed point", "transition_graph")
    cuts = sorted(set(f.xs) | {m for m in markers if f.lo <= m <= f.hi} | {a})
    verts = tuple(zip(cuts, cuts[1:]))
    if not verts:
        verts = ((f.lo, f.hi),)
    arcs = []
    cross, right = {}, {}
    for i, (u, v) in enumerate(verts):
        fu, fv = f(u), f(v)
        ylo, yhi = min(fu, fv), max(fu, fv)
        if ylo == yhi:
            continue  # plateau piece: maps to a point, covers nothing
        ri = u >= a
        for j, (s, t) in enumerate(verts):
            if ylo <= s and t <= yhi:
                arcs.append((i, j))
                rj = s >= a
                cross[i, j] = int(ri and not rj)
                right[i, j] = int(ri)
    return TransitionGraph(verts, tuple(arcs), a, cross, right)


# -- minimum mean cycle --------------------------------------------------------

def _karp_value(n: int, arcs, w) -> Fraction | None:
    INF = None
    # D[k][v]: min weight of a walk with exactly k arcs ending at v (any start)
    D = [[0] * n]
    for k in range(1, n + 1):
        prev = D[-1]
        cur = [INF] * n
        for (i, j) in arcs:
            if prev[i] is INF:
                continue
            val = prev[i] + w[i, j]
            if cur[j] is INF or val < cur[j]:
                cur[j] = val
        D.append(cur)
    best = None
    for v in range(n):
        if D[n][v] is INF:
            continue
        worst = None
        for k in range(n):
            if D[k][v] is INF:
                continue
            r = Fraction(D[n][v] - D[k][v], n - k)
            if worst is None or r > worst:
                worst = r
        if worst is not None and (best is None or worst < best):
            best = worst
    return best


def _tight_cycle(n: int, arcs, w, lam: Fraction) -> list[int]:
    # integer reweighting: w' = w*den - num has minimum cycle mean exactly 0
    num, den = lam.numerator, lam.denominator
    ww = {e: w[e] * den - num for e in arcs}
    dist = [0] * n  # super source with 0-arcs to every vertex
    for _ in range(n):
        changed = False
        for (i, j) in arcs:
            if dist[i] + ww[i, j] < dist[j]:
                dist[j] = dist[i] + ww[i, j]
                changed = True
        if not changed:
            break
    tight = [[] for _ in range(n)]
    for (i, j) in arcs:
        if dist[i] + ww[i, j] == dist[j]:
            tight[i].append(j)
    # any cycle in the tight subgraph has mean exactly lam
    color = [0] * n
    for s in range(n):
        if color[s]:
            continue
        stack = [(s, iter(tight[s]))]
        path = [s]
        color[s] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                color[v] = 2
                continue
            if color[nxt] == 1:
                return path[path.index(nxt):]
            if color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(tight[nxt])))
                path.append(nxt)
    raise AssertionError("no tight cycle found; potentials inconsistent")


def min_mean_cycle(graph: TransitionGraph, kind: str = "cross") -> RhoResult:
    """Exact minimum cycle mean (Karp) with a witness cycle."""
    w = graph.weight(kind)
    n = len(graph.vertices)
    lam = _karp_value(n, graph.arcs, w)
    if lam is None:
        raise AcyclicGraphError("graph has no cycle", "min_mean_cycle")
    cyc = _tight_cycle(n, graph.arcs, w, lam)
    assert graph.cycle_mean(cyc, kind) == lam
    return RhoResult.exact_value(lam, witness=tuple(cyc), method=f"karp-{kind}")


# -- loops -----------------------------------------------------------------

def _is_primitive(seq: Sequence) -> bool:
    k = len(seq)
    for d in range(1, k):
        if k % d == 0 and all(seq[i] == seq[i % d] for i in range(k)):
            return False
    return True


def loop_orp(signs: Sequence[int]) -> tuple[OverRotationPair, bool]:
    """Over-rotation pair (p/2, k) of a cyclic 0/1 side sequence and whether
    the sequence is non-repetitive."""
    k = len(signs)
    if k < 2:
        raise PreconditionError("admissible loops have length at least 2", "loop_orp")
    if any(s not in (0, 1) for s in signs):
        raise ValueError("signs must be 0 or 1")
    p = sum(signs[t] != signs[(t + 1) % k] for t in range(k))
    assert p % 2 == 0
    if p == 0:
        raise PreconditionError("loop never crosses the fixed point", "loop_orp")
    return OverRotationPair(p // 2, k), _is_primitive(list(signs))


def simple_cycles_brute(graph: TransitionGraph):
    """All simple cycles, each rooted at its smallest vertex.  Exponential;
    meant for tests and tiny graphs."""
    succ = graph.successors()
    n = len(graph.vertices)
    for s in range(n):
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            for u in succ[v]:
                if u == s:
                    yield list(path)
                elif u > s and u not in path:
                    stack.append((u, path + [u]))


def closed_walks(graph: TransitionGraph, length: int, max_cross: int | None = None):
    """Closed walks of exactly ``length`` arcs, rooted at their smallest
    vertex.  ``max_cross`` prunes on the running cross weight."""
    succ = graph.successors()
    n = len(graph.vertices)
    w = graph.cross
    for s in range(n):
        stack = [(s, (s,), 0)]
        while stack:
            v, path, cw = stack.pop()
            for u in succ[v]:
                if u < s:
                    continue
                c = cw + w[v, u]
                if max_cross is not None and c > max_cross:
                    continue
                if len(path) == length:
                    if u == s and (max_cross is None or c == max_cross):
                        yield path
                    continue
                stack.append((u, path + (u,), c))


def loop_orbit(f: PLMap, graph: TransitionGraph, loop: Sequence[int]) -> list[Fraction]:
    """A periodic orbit of f following the vertices of ``loop``.

    Composes the affine branches along the loop and solves for the fixed
    point of the composite.  When the composite is the identity on the
    start vertex the midpoint is used.
    """
    u0, v0 = graph.vertices[loop[0]]
    lo, hi = u0, v0
    # h(x) = m*x + b, valid on [lo, hi] (a subinterval of the start vertex)
    m, b = Fraction(1), Fraction(0)
    k = len(loop)
    for t in range(k):
        u, v = graph.vertices[loop[t]]
        fu, fv = f(u), f(v)
        s = (fv - fu) / (v - u)
        m, b = s * m, s * (b - u) + fu
        s2, t2 = graph.vertices[loop[(t + 1) % k]]
        # restrict [lo, hi] so that h([lo, hi]) lies in the next vertex
        if m == 0:
            raise PreconditionError("loop passes through a plateau", "loop_orbit")
        p1, p2 = (s2 - b) / m, (t2 - b) / m
        lo, hi = max(lo, min(p1, p2)), min(hi, max(p1, p2))
        if lo > hi:
            raise PreconditionError(f"{list(loop)} is not realized by the map", "loop_orbit")
    if m == 1:
        if b != 0:
            raise PreconditionError("translation along loop has no fixed point", "loop_orbit")
        x = (lo + hi) / 2
    else:
        x = b / (1 - m)
    if not lo <= x <= hi:
        raise PreconditionError("loop fixed point outside its domain", "loop_orbit")
    orbit = [x]
    for _ in range(k - 1):
        orbit.append(f(orbit[-1]))
    assert f(orbit[-1]) == x
    return orbit


def primitive_period(orbit: Sequence[Fraction]) -> int:
    for d in range(1, len(orbit) + 1):
        if len(orbit) % d == 0 and all(orbit[i] == orbit[i % d] for i in range(len(orbit))):
            return d
    return len(orbit)


def reduced(l: int, k: int) -> tuple[int, int]:
    g = gcd(l, k)
    return l // g, k // g


def rho_exact_markov(f, **kw) -> RhoResult:
    """Exact rho_f of a unimodal PL map whose critical data is finite.

    Thin re-export; the work happens in ``overrot.unimodal`` which knows
    how to normalize the core first.
    """
    from .unimodal import rho_exact_markov as _impl

    return _impl(f, **kw)
