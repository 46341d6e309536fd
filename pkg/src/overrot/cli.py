"""Command-line front end.  Every subcommand is a thin adapter over the
library; output is sorted-key JSON with rationals as "p/q" strings."""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import families, formats
from .errors import FormatError, OverRotError
from .kneading import kneading, nu_prime, nu_rho, rho_from_kneading
from .orders import OverRotationPair, pair_forces, sharkovskii_sharper
from .patterns import (
    code_of,
    gamma,
    gamma_prime,
    is_overtwist,
    over_rotation_pair,
    unimodal_overtwists,
)
from .plmap import frac
from .unimodal import over_rotation_interval

EX_USAGE, EX_DATAERR, EX_PRECONDITION = 64, 65, 66
CENSUS_DEFAULT_CAP = 10


@dataclass
class CommandResult:
    code: int
    artifact: str
    summary: str = ""


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _rational(s: str) -> Fraction:
    try:
        return frac(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="overrot", description="over-rotation intervals of interval maps")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("gamma", help="the over-twist pattern of rotation number p/q")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("--prime", action="store_true", help="emit the non-cyclic companion instead")

    s = sub.add_parser("orp", help="over-rotation pair of a pattern file")
    s.add_argument("pattern")

    s = sub.add_parser("overtwist", help="over-twist test via the code")
    s.add_argument("pattern")
    s.add_argument("--phi", choices=("indicator", "crossing"), default="indicator")

    s = sub.add_parser("nu", help="kneading sequence nu_rho (or nu'_{p/q})")
    s.add_argument("p", type=int, nargs="?")
    s.add_argument("q", type=int, nargs="?")
    s.add_argument("--real", type=_rational)
    s.add_argument("--len", type=int, default=64)
    s.add_argument("--prime", action="store_true")

    s = sub.add_parser("kneading", help="kneading sequence of a map")
    s.add_argument("map")
    s.add_argument("--len", type=int, default=64)

    s = sub.add_parser("rho-from-kneading", help="rho_f from a kneading itinerary")
    s.add_argument("itinerary")
    s.add_argument("--tol", type=_rational, default=Fraction(1, 10**6))

    s = sub.add_parser("rotint", help="over-rotation interval of a map")
    s.add_argument("map")
    s.add_argument("--tol", type=_rational, default=Fraction(1, 1000))

    s = sub.add_parser("census", help="unimodal over-twists by period")
    s.add_argument("--max-period", type=int, required=True)
    s.add_argument("--allow-large", action="store_true",
                   help=f"lift the period cap of {CENSUS_DEFAULT_CAP} (cost grows like 2^n * n!)")

    s = sub.add_parser("order", help="Sharkovskii order, or forcing between pairs")
    s.add_argument("m", type=int, nargs="?")
    s.add_argument("n", type=int, nargs="?")
    s.add_argument("--pairs", type=int, nargs=4, metavar=("P", "Q", "K", "L"))

    s = sub.add_parser("compare", help="check a comparison criterion between two maps")
    s.add_argument("--lemma", required=True, choices=("3.1", "3.2", "3.2s", "3.7"))
    s.add_argument("f")
    s.add_argument("g", nargs="?")
    s.add_argument("--grid", type=int, default=families.GRID)
    s.add_argument("--region", default="full", help="full, core, split or lo,hi")

    s = sub.add_parser("sweep", help="over-rotation intervals along a family")
    s.add_argument("family")
    s.add_argument("--tol", type=_rational, default=Fraction(1, 1000))
    s.add_argument("--csv", dest="csv_out")
    return p


# -- handlers ---------------------------------------------------------------------------------

def _gamma(a):
    if a.prime:
        pat = gamma_prime(a.p, a.q)
        return {"pattern": list(pat.images), "orp": [a.p, a.q]}
    pat = gamma(a.p, a.q)
    pair = over_rotation_pair(pat)
    return {"pattern": list(pat.images), "orp": pair, "overtwist": is_overtwist(pat)}


def _orp(a):
    pair = over_rotation_pair(formats.read_pattern(a.pattern))
    return {"orp": pair, "rho": pair.rho()}


def _overtwist(a):
    pat = formats.read_pattern(a.pattern)
    code = code_of(pat, a.phi)
    return {"overtwist": is_overtwist(pat, a.phi), "code": list(code.as_tuple()),
            "well_defined": code.well_defined, "monotone": code.monotone, "phi": a.phi}


def _nu(a):
    if a.real is not None:
        if a.prime:
            raise _Usage("--prime needs p q")
        return {"nu": nu_rho(a.real, a.len)}
    if a.p is None or a.q is None:
        raise _Usage("nu needs p q or --real x")
    if a.prime:
        return {"nu_prime": nu_prime(a.p, a.q)}
    from .patterns import _check_pq

    _check_pq(a.p, a.q)
    return {"nu": nu_rho(Fraction(a.p, a.q), exact=True)}


def _kneading(a):
    return {"kneading": kneading(formats.parse_map_arg(a.map), a.len)}


def _rfk(a):
    r = rho_from_kneading(formats.read_itinerary(a.itinerary), a.tol)
    return {"rho": [r.lo, r.hi] if not r.exact else r.lo, "exact": r.exact, "method": r.method}


def _rotint(a):
    return over_rotation_interval(formats.parse_map_arg(a.map), a.tol)


def _census(a):
    n = a.max_period
    if n > CENSUS_DEFAULT_CAP and not a.allow_large:
        raise _Usage(f"--max-period above {CENSUS_DEFAULT_CAP} needs --allow-large")
    out = {}
    for k in range(2, n + 1):
        out[str(k)] = [list(p.images) for p in unimodal_overtwists(k)]
    return {"overtwists": out}


def _order(a):
    if a.pairs:
        p, q, k, l = a.pairs
        return {"forces": pair_forces(OverRotationPair(p, q), OverRotationPair(k, l))}
    if a.m is None or a.n is None:
        raise _Usage("order needs m n or --pairs p q k l")
    return {"sharper": sharkovskii_sharper(a.m, a.n)}


def _compare(a):
    f = formats.parse_map_arg(a.f)
    if a.lemma == "3.2s":
        return families.scaling_check(f, a.grid).to_json()
    if a.g is None:
        raise _Usage("compare needs two maps")
    g = formats.parse_map_arg(a.g)
    if a.lemma == "3.2":
        v = families.compare_lemma32(f, g, a.grid)
    elif a.lemma == "3.7":
        v = families.dominance_check(f, g, a.grid)
    else:
        region = a.region
        if region not in ("full", "core", "split"):
            try:
                lo, hi = (frac(t) for t in region.split(","))
            except ValueError:
                raise _Usage(f"bad region {region!r}") from None
            region = (lo, hi)
        v = families.repellence_check(f, g, region, a.grid)
    return v.to_json()


def _sweep(a):
    rep = families.sweep(formats.read_family(a.family), a.tol)
    body = rep.csv()
    if not a.csv_out:
        return body
    Path(a.csv_out).write_text(body)
    return {"rows": len(rep.rows), "monotone": rep.monotone, "violations": rep.violations,
            "hypotheses": rep.hypotheses, "note": rep.note, "csv": a.csv_out}


HANDLERS = {
    "gamma": _gamma, "orp": _orp, "overtwist": _overtwist, "nu": _nu, "kneading": _kneading,
    "rho-from-kneading": _rfk, "rotint": _rotint, "census": _census, "order": _order,
    "compare": _compare, "sweep": _sweep,
}


def execute(argv) -> CommandResult:
    try:
        args = build_parser().parse_args(list(argv))
        if args.verbose:
            logging.basicConfig(level=logging.DEBUG)
        out = HANDLERS[args.cmd](args)
    except _Usage as e:
        return CommandResult(EX_USAGE, "", f"usage error: {e}")
    except SystemExit as e:  # --help
        return CommandResult(int(e.code or 0), "", "")
    except (FormatError, OSError) as e:
        return CommandResult(EX_DATAERR, "", f"malformed input: {e}")
    except (OverRotError, ValueError) as e:
        return CommandResult(EX_PRECONDITION, "", f"precondition violated: {e}")
    text = out if isinstance(out, str) else formats.dumps(out) + "\n"
    return CommandResult(0, text, f"{args.cmd}: ok")


def main(argv=None) -> int:
    res = execute(sys.argv[1:] if argv is None else argv)
    if res.artifact:
        sys.stdout.write(res.artifact)
    if res.code:
        print(res.summary, file=sys.stderr)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
