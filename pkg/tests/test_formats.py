from fractions import Fraction as F
import json

import pytest
from hypothesis import given, strategies as st

from overrot import PLMap
from overrot.errors import FormatError
from overrot.formats import (
    dumps,
    format_pattern,
    format_plmap,
    jsonable,
    parse_family,
    parse_map_arg,
    parse_pattern,
    parse_plmap,
    read_family,
    read_itinerary,
    read_pattern,
    read_plmap,
)
from overrot.kneading import nu_rho
from overrot.orders import OverRotationPair
from overrot.patterns import CyclicPattern, gamma
from oracles import cycles_of_period


def test_pattern_roundtrip_small_periods():
    for n in range(1, 6):
        for im in cycles_of_period(n):
            P = CyclicPattern(im)
            assert parse_pattern(format_pattern(P)) == P


def test_pattern_file_with_header_and_comments():
    P = parse_pattern("# rotint-v1\n# gamma 2/5\n3 5 4 2 1   # trailing\n")
    assert P == gamma(2, 5)
    assert read_pattern("data/gamma25.pat") == gamma(2, 5)


@pytest.mark.parametrize("text", ["", "1 2\n2 1\n", "3 x 1", "1 3", "0 1"])
def test_pattern_malformed(text):
    with pytest.raises(FormatError):
        parse_pattern(text)


def test_missing_file():
    with pytest.raises(FormatError):
        read_pattern("nowhere.pat")


fracs01 = st.fractions(0, 1, max_denominator=50)


@given(st.lists(fracs01, min_size=0, max_size=6, unique=True), st.lists(fracs01, min_size=8, max_size=8))
def test_plmap_roundtrip(inner, ys):
    xs = [F(0)] + sorted(x for x in inner if 0 < x < 1) + [F(1)]
    f = PLMap.from_points(list(zip(xs, ys)))
    g = parse_plmap(format_plmap(f))
    assert g == f


def test_plmap_file():
    f = read_plmap("data/gamma25.map")
    assert f(F(1, 4)) == 1 and f(1) == 0


@pytest.mark.parametrize("text", ["0 0\n", "0 0\n1/2\n1 0", "0 0\n1/2 a\n1 0", "0 0\n1/2 1\n1/2 0\n1 0",
                                  "1/4 0\n1 0", "0 0\n1/0 1\n1 0"])
def test_plmap_malformed(text):
    with pytest.raises(FormatError):
        parse_plmap(text)


def test_map_arg_variants():
    assert parse_map_arg("tent:1/2")(F(1, 2)) == F(1, 2)
    q = parse_map_arg("quadratic:4")
    assert float(q(0.5)) == pytest.approx(1.0)
    p = parse_map_arg("poly:0,4,-4")
    assert float(p(0.25)) == pytest.approx(0.75)
    assert parse_map_arg("data/tent.map") == read_plmap("data/tent.map")
    for bad in ("cubic:1", "tent:x", "quadratic:1/0"):
        with pytest.raises(FormatError):
            parse_map_arg(bad)


def test_family_files():
    fam = read_family("data/quadratic.fam")
    assert (fam.kind, fam.lo, fam.hi, fam.steps) == ("quadratic", F(7, 2), F(4), 50)
    fam = read_family("data/scaled_tent.fam")
    assert fam.kind == "scaled" and fam.base(F(1, 2)) == F(3, 4)


@pytest.mark.parametrize("text", ["kind=quadratic\n", "param 1 2 3\n", "kind=quadratic\nparam 1 2\n",
                                  "kind=quadratic\nparam 2 1 3\n", "kind=cubic\nparam 1 2 3\n",
                                  "kind=quadratic\nparam 1 2 3\nnonsense\n"])
def test_family_malformed(text):
    with pytest.raises(FormatError):
        parse_family(text)


def test_itinerary_text():
    assert read_itinerary("# rotint-v1\n(RLRRC)*\n") == nu_rho(F(2, 5))
    with pytest.raises(FormatError):
        read_itinerary("RL*\nRL*")


@given(st.fractions(-10, 10, max_denominator=1000))
def test_fractions_never_floats(x):
    out = json.loads(dumps({"x": x, "xs": [x, (x, 1)]}))
    assert out["x"] == f"{x.numerator}/{x.denominator}"
    assert out["xs"][1] == [out["x"], 1]


def test_jsonable_types():
    assert jsonable(OverRotationPair(2, 5)) == [2, 5]
    assert jsonable(nu_rho(F(1, 2))) == "(RC)*"
    assert jsonable({3: {F(1, 2)}}) == {"3": ["1/2"]}
    assert dumps({"b": 1, "a": 2}) == '{"a":2,"b":1}'
