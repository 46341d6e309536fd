"""Text formats: pattern files, PL map files, family specs and JSON
serialization.  Every format tolerates a leading ``# rotint-v1`` line
(any ``#`` comment, in fact)."""
from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path

from .errors import FormatError
from .kneading import Itinerary, parse_itinerary
from .orders import OverRotationPair, RhoResult, RotationInterval
from .patterns import as_pattern
from .plmap import PLMap, frac

VERSION_LINE = "# rotint-v1"


def _lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def _read(src) -> str:
    if isinstance(src, (str, os.PathLike)) and not ("\n" in str(src)) and Path(src).exists():
        return Path(src).read_text()
    if isinstance(src, (str, os.PathLike)) and "\n" not in str(src) and str(src).endswith((".map", ".pat", ".fam")):
        raise FormatError(f"no such file: {src}")
    return str(src)


# -- patterns ----------------------------------------------------------------------------

def parse_pattern(text: str):
    rows = list(_lines(text))
    if len(rows) != 1:
        raise FormatError(f"pattern file must hold one line of images, found {len(rows)}")
    try:
        images = [int(t) for t in rows[0].split()]
    except ValueError as e:
        raise FormatError(f"bad pattern token: {e}") from None
    try:
        return as_pattern(images)
    except ValueError as e:
        raise FormatError(str(e)) from None


def read_pattern(src):
    return parse_pattern(_read(src))


def format_pattern(pattern) -> str:
    return f"{VERSION_LINE}\n" + " ".join(str(i) for i in pattern.images) + "\n"


# -- PL maps -----------------------------------------------------------------------------

def parse_plmap(text: str) -> PLMap:
    pts = []
    for line in _lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'x y', got {line!r}")
        try:
            pts.append((frac(parts[0]), frac(parts[1])))
        except (ValueError, ZeroDivisionError) as e:
            raise FormatError(f"bad rational in {line!r}: {e}") from None
    if len(pts) < 2:
        raise FormatError("a map file needs at least two points")
    xs = [p[0] for p in pts]
    if xs[0] != 0 or xs[-1] != 1:
        raise FormatError("map must be given on [0, 1]: first x = 0, last x = 1")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise FormatError("x values must be strictly increasing")
    return PLMap.from_points(pts)


def read_plmap(src) -> PLMap:
    return parse_plmap(_read(src))


def format_plmap(f: PLMap) -> str:
    body = "".join(f"{x} {y}\n" for x, y in f.points)
    return f"{VERSION_LINE}\n{body}"


def parse_map_arg(arg: str):
    """A map argument: a PL map file, or ``quadratic:nu``, ``tent:h``,
    ``poly:c0,c1,...`` (coefficients from the constant term up)."""
    from .unimodal import polynomial_map, quadratic, tent

    if ":" in arg and not Path(arg).exists():
        kind, _, rest = arg.partition(":")
        try:
            if kind == "quadratic":
                return quadratic(frac(rest))
            if kind == "tent":
                return tent(frac(rest))
            if kind == "poly":
                return polynomial_map([frac(t) for t in rest.split(",")], arg)
        except (ValueError, ZeroDivisionError) as e:
            raise FormatError(f"bad parameters in {arg!r}: {e}") from None
        raise FormatError(f"unknown named map {kind!r}")
    return read_plmap(arg)


# -- families ----------------------------------------------------------------------------

def parse_family(text: str, base_dir=None):
    """Key-value family file::

        # rotint-v1
        kind=scaled
        param 1 2 11
        base=tent.map
        target=other.map    (pl-interp only)
    """
    from .families import FamilySpec

    base_dir = Path(base_dir or ".")
    kv, param = {}, None
    for line in _lines(text):
        if line.startswith("param"):
            toks = line.split()
            if len(toks) != 4:
                raise FormatError(f"expected 'param lo hi steps', got {line!r}")
            try:
                param = (frac(toks[1]), frac(toks[2]), int(toks[3]))
            except (ValueError, ZeroDivisionError) as e:
                raise FormatError(f"bad param line {line!r}: {e}") from None
        elif "=" in line:
            k, _, v = line.partition("=")
            kv[k.strip()] = v.strip()
        else:
            raise FormatError(f"cannot parse family line {line!r}")
    if "kind" not in kv or param is None:
        raise FormatError("family file needs kind= and a param line")

    def load(ref):
        if ref is None:
            return None
        p = base_dir / ref
        return parse_map_arg(str(p) if p.exists() else ref)

    try:
        return FamilySpec(kv["kind"], param[0], param[1], param[2], load(kv.get("base")), load(kv.get("target")))
    except ValueError as e:
        raise FormatError(str(e)) from None


def read_family(src):
    base = Path(src).parent if Path(str(src)).exists() else None
    return parse_family(_read(src), base)


# -- itineraries --------------------------------------------------------------------------

def read_itinerary(text: str) -> Itinerary:
    rows = list(_lines(text))
    if len(rows) != 1:
        raise FormatError("itinerary text must be a single line")
    return parse_itinerary(rows[0])


# -- JSON ------------------------------------------------------------------------------

def jsonable(obj):
    """Rationals become 'p/q' strings, never floats."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        return obj
    if isinstance(obj, OverRotationPair):
        return list(obj.as_tuple())
    if isinstance(obj, Itinerary):
        return str(obj)
    if isinstance(obj, RhoResult):
        return {"lo": jsonable(obj.lo), "hi": jsonable(obj.hi), "exact": obj.exact, "method": obj.method}
    if isinstance(obj, RotationInterval):
        if obj.trivial:
            return {"interval": None, "exact": True, "trivial": True, "note": obj.note}
        return {"interval": [jsonable(obj.left.lo) if obj.exact else [jsonable(obj.left.lo), jsonable(obj.left.hi)],
                             jsonable(obj.right)], "exact": obj.exact}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in seq]
    if hasattr(obj, "item"):  # numpy scalars
        return jsonable(obj.item())
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
