"""Itineraries over {L, C, R}, the parity-lexicographic order and the
rotation-number classifier for kneading sequences."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import floor, lcm

from .errors import FormatError, PreconditionError, TrivialDynamicsError
from .orders import HALF, RhoResult
from .plmap import PLMap, frac

RANK = {"L": 0, "C": 1, "R": 2}
PERIODIC, TRUNCATED = "periodic", "truncated"


@dataclass(frozen=True)
class Itinerary:
    """prefix + tail, where the tail repeats ``cycle`` forever or the
    sequence is only known up to ``len(prefix)`` symbols (truncated)."""

    prefix: str
    cycle: str = ""  # empty means truncated

    def __post_init__(self):
        bad = set(self.prefix + self.cycle) - set(RANK)
        if bad:
            raise FormatError(f"unknown itinerary symbols {sorted(bad)}")
        if self.cycle:
            p, c = _canonical(self.prefix, self.cycle)
            object.__setattr__(self, "prefix", p)
            object.__setattr__(self, "cycle", c)

    @classmethod
    def periodic(cls, cycle: str, prefix: str = "") -> "Itinerary":
        if not cycle:
            raise ValueError("periodic tail needs a non-empty cycle")
        return cls(prefix, cycle)

    @classmethod
    def truncated(cls, symbols: str) -> "Itinerary":
        return cls(symbols, "")

    @property
    def tail(self) -> str:
        if not self.cycle:
            return TRUNCATED
        return "all-R" if self.cycle == "R" else PERIODIC

    @property
    def is_truncated(self) -> bool:
        return not self.cycle

    @property
    def known_length(self) -> float:
        return float("inf") if self.cycle else len(self.prefix)

    def __getitem__(self, i: int) -> str | None:
        if i < len(self.prefix):
            return self.prefix[i]
        if not self.cycle:
            return None
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def take(self, n: int) -> str:
        out = []
        for i in range(n):
            s = self[i]
            if s is None:
                break
            out.append(s)
        return "".join(out)

    def shift(self, j: int = 1) -> "Itinerary":
        if j <= len(self.prefix):
            return Itinerary(self.prefix[j:], self.cycle)
        if not self.cycle:
            return Itinerary("", "")
        k = (j - len(self.prefix)) % len(self.cycle)
        return Itinerary("", self.cycle[k:] + self.cycle[:k])

    def __str__(self):
        if not self.cycle:
            return f"{self.prefix}…@{len(self.prefix)}"
        if len(self.cycle) == 1:
            return f"{self.prefix}{self.cycle}*"
        return f"{self.prefix}({self.cycle})*"


def _canonical(prefix: str, cycle: str) -> tuple[str, str]:
    # primitive cycle, then absorb the prefix's tail into the cycle
    k = len(cycle)
    for d in range(1, k + 1):
        if k % d == 0 and cycle == cycle[:d] * (k // d):
            cycle = cycle[:d]
            break
    while prefix and prefix[-1] == cycle[-1]:
        prefix = prefix[:-1]
        cycle = cycle[-1] + cycle[:-1]
    return prefix, cycle


_ITIN_RE = re.compile(
    r"^(?P<prefix>[LCR]*)(?:\((?P<cyc>[LCR]+)\)\*|(?P<one>[LCR])\*|(?:…|\.\.\.)@(?P<depth>\d+))?$"
)


def parse_itinerary(text: str) -> Itinerary:
    """Parse ``(RLRRC)*``, ``RLRRLR*`` or ``RLRRL…@5``."""
    t = text.strip().replace(" ", "")
    m = _ITIN_RE.match(t)
    if not m:
        raise FormatError(f"cannot parse itinerary {text!r}")
    prefix = m.group("prefix")
    if m.group("cyc"):
        return Itinerary(prefix, m.group("cyc"))
    if m.group("one"):
        return Itinerary(prefix, m.group("one"))
    if m.group("depth") is not None:
        d = int(m.group("depth"))
        if d != len(prefix):
            raise FormatError(f"declared depth {d} but {len(prefix)} symbols given")
        return Itinerary.truncated(prefix)
    # bare finite word: treat as known only that far
    return Itinerary.truncated(prefix)


# -- comparison --------------------------------------------------------------------

def _auto_depth(A: Itinerary, B: Itinerary) -> int | None:
    if A.cycle and B.cycle:
        return max(len(A.prefix), len(B.prefix)) + lcm(len(A.cycle), len(B.cycle))
    return None


def compare(A: Itinerary, B: Itinerary, depth: int | None = None) -> tuple[int, bool]:
    """(sign, decided).  sign is +1 if A > B, -1 if B > A, 0 if no
    difference was found.  ``decided`` is False when the answer 0 only
    reflects the depth budget or missing symbols."""
    auto = _auto_depth(A, B)
    if depth is None:
        depth = auto if auto is not None else int(min(A.known_length, B.known_length))
    elif depth < 1:
        raise ValueError("depth must be positive")
    odd = False
    for j in range(depth):
        a, b = A[j], B[j]
        if a is None or b is None:
            return 0, False
        if a != b:
            s = 1 if RANK[a] > RANK[b] else -1
            return (-s if odd else s), True
        if a == "R":
            odd = not odd
    return 0, auto is not None and depth >= auto


def mt_compare(A: Itinerary, B: Itinerary, depth: int | None = None) -> int:
    """+1 when A > B, -1 when B > A, 0 when equal up to ``depth``."""
    return compare(A, B, depth)[0]


def is_shift_maximal(A: Itinerary, depth: int | None = None) -> bool:
    if depth is None:
        depth = len(A.prefix) + len(A.cycle) if A.cycle else len(A.prefix)
        depth = max(depth, 1)
    for j in range(1, depth):
        S = A.shift(j)
        cmp_depth = None if A.cycle else max(1, depth - j)
        if mt_compare(A, S, cmp_depth) < 0:
            return False
    return True


# -- generation from maps ------------------------------------------------------------

def _symbol(x, c) -> str:
    return "L" if x < c else ("C" if x == c else "R")


def itinerary(f, x, length: int = 64, c=None, eps: float = 1e-9) -> Itinerary:
    """Itinerary of x under f.

    Exact PL maps: iterates with rationals and returns a periodic tail as
    soon as the orbit repeats.  Evaluable maps: floating iteration with a
    guard band of half-width ``eps`` around c; entering the band truncates.
    """
    if isinstance(f, PLMap):
        c = f.critical_interval()[0] if c is None else frac(c)
        x = frac(x)
        seen: dict[Fraction, int] = {}
        syms = []
        for n in range(length):
            if x in seen:
                k = seen[x]
                return Itinerary("".join(syms[:k]), "".join(syms[k:]))
            seen[x] = n
            syms.append(_symbol(x, c))
            x = f(x)
        return Itinerary.truncated("".join(syms))
    c = f.c if c is None else c
    xv = float(x)
    syms = []
    for _ in range(length):
        if abs(xv - c) <= eps:
            break
        syms.append("L" if xv < c else "R")
        xv = float(f(xv))
    return Itinerary.truncated("".join(syms))


def kneading(f, length: int = 64, **kw) -> Itinerary:
    """Itinerary of f(c)."""
    if isinstance(f, PLMap):
        c = f.critical_interval()[0]
        return itinerary(f, f(c), length, c=c)
    return itinerary(f, f(f.c), length, **kw)


# -- model sequences -----------------------------------------------------------------

def _nu_symbol(t: Fraction, rho: Fraction) -> str:
    if t == 0:
        return "C"
    return "R" if t < 2 * rho else "L"


def nu_rho(rho, length: int = 64, exact: bool | None = None) -> Itinerary:
    """Kneading sequence of the rigid-rotation coding at rho.

    Symbol n is read off t = (n+1)*rho mod 1.  A rational rho is treated as
    exact (periodic tail) when its denominator is at most ``length`` or
    when ``exact`` is set; otherwise it is an approximation and the result
    is truncated at ``length`` symbols.
    """
    if isinstance(rho, float):
        rho = Fraction(rho)
        exact = False if exact is None else exact
    r = frac(rho)
    if not 0 < r <= HALF:
        raise PreconditionError(f"rho must lie in (0, 1/2], got {r}", "nu_rho")
    if exact is None:
        exact = r.denominator <= length
    if exact:
        q = r.denominator
        cyc = "".join(_nu_symbol(((n + 1) * r) % 1, r) for n in range(q))
        return Itinerary.periodic(cyc)
    out = []
    for n in range(length):
        t = (n + 1) * r
        t -= floor(t)
        out.append(_nu_symbol(t, r))
    return Itinerary.truncated("".join(out))


def nu_prime(p: int, q: int) -> Itinerary:
    """nu_{p/q} with its terminal C replaced by L, then R forever."""
    from .patterns import _check_pq

    _check_pq(p, q)
    cyc = nu_rho(Fraction(p, q), exact=True).cycle
    assert cyc[-1] == "C" and len(cyc) == q
    return Itinerary(cyc[:-1] + "L", "R")


def nu_limit(p: int, q: int) -> Itinerary:
    """lim nu_m as m increases to p/q: the rigid-rotation coding at
    p/q - eps for infinitesimal eps > 0.

    Symbol k-1 compares t_k = k*m mod 1 with 2m; both are tracked as
    (value, eps-coefficient) pairs so the limit is exact.  Every
    nu_m with m < p/q lies above it, and nu'_{p/q} lies below it.
    """
    from .patterns import _check_pq

    _check_pq(p, q)
    two = (Fraction(2 * p, q), -2)

    def sym(k):
        r = Fraction((k * p) % q, q)
        t = (Fraction(1), -k) if r == 0 else (r, -k)
        return "R" if t < two else "L"

    head = "".join(sym(k) for k in (1, 2))
    cyc = "".join(sym(k) for k in range(3, 3 + q))
    return Itinerary(head, cyc)


UPPER_RULES = ("limit", "prime")

RL_INF = Itinerary("R", "L")
NU_HALF = Itinerary.periodic("RC")


def rho_from_kneading(K: Itinerary, tolerance=Fraction(1, 10**6), depth: int = 4096,
                      upper: str = "limit") -> RhoResult:
    """rho_f from the kneading sequence by Stern-Brocot descent.

    At a mediant m: K < nu_m means rho_f > m (no gamma_m orbit);
    K > U_m means rho_f < m; otherwise rho_f = m exactly.  The upper
    sequence U_m is ``nu_limit`` by default.  ``upper="prime"`` uses
    nu'_m instead; that rule leaves a gap (nu'_m, nu_limit(m)] where
    kneading sequences of maps with rho_f = m are not recognised and the
    descent ends in a bracket.
    """
    if upper not in UPPER_RULES:
        raise ValueError(f"upper must be one of {UPPER_RULES}")
    upper_seq = nu_limit if upper == "limit" else nu_prime
    tolerance = frac(tolerance) if not isinstance(tolerance, float) else Fraction(tolerance)

    def cmp(A, B):
        s, decided = compare(A, B, None if not (A.is_truncated or B.is_truncated) else depth)
        return s, decided or s != 0

    s, ok = cmp(K, RL_INF)
    if s == 0 and ok:
        return RhoResult.exact_value(0, witness={"kneading": str(K), "case": "RL^inf"}, method="kneading")
    s, ok = cmp(K, NU_HALF)
    if not ok:
        return RhoResult(Fraction(0), HALF, False, None, depth, "kneading-truncated")
    if s < 0:
        raise TrivialDynamicsError(f"{K} lies below nu_1/2; no over-rotation interval", "rho_from_kneading")
    lo, hi = (0, 1), (1, 2)

    def classify(p, q):
        r = Fraction(p, q)
        s1, ok1 = cmp(K, upper_seq(p, q))
        if not ok1:
            return None
        if s1 > 0:
            return -1  # rho_f < r
        s2, ok2 = cmp(K, nu_rho(r, exact=True))
        if not ok2:
            return None
        if s2 < 0:
            return 1  # rho_f > r
        return 0

    c = classify(1, 2)
    if c is None:
        return RhoResult(Fraction(0), HALF, False, None, depth, "kneading-truncated")
    if c == 0:
        return RhoResult.exact_value(HALF, witness={"mediant": "1/2"}, method="kneading")
    while True:
        L, H = Fraction(*lo), Fraction(*hi)
        if H - L <= tolerance:
            return RhoResult(L, H, False, None, depth, "kneading-bracket")
        p, q = lo[0] + hi[0], lo[1] + hi[1]
        if q > depth:
            return RhoResult(L, H, False, None, depth, "kneading-depth")
        c = classify(p, q)
        if c is None:
            return RhoResult(L, H, False, None, depth, "kneading-truncated")
        if c == 0:
            return RhoResult.exact_value(Fraction(p, q), witness={"mediant": f"{p}/{q}"}, method="kneading")
        if c < 0:
            hi = (p, q)
        else:
            lo = (p, q)
