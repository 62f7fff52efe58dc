import json
from pathlib import Path

import pytest

from gwc.conductor import conductor_check, curve_formula_check
from gwc.errors import SchemaError
from gwc.fields import QQ, NumberField
from gwc.gw import gw_equal, hyperbolic
from gwc.scenario import builtin_path, builtin_scenarios, field_from_minpoly, load_scenario, parse_scenario

DATA = Path(__file__).parent / "data"

BASE = {
    "version": "1",
    "relative_dim": 1,
    "field": "Q",
    "points": [{"name": "cusp", "poly": "x^3 - y^2", "weights": [2, 3], "degree": 6, "branches": [[0, 1]]}],
    "global": {"kind": "plane_curve", "degree": 3},
}


def doc(**changes):
    d = json.loads(json.dumps(BASE))
    d.update(changes)
    return d


def test_builtins_load():
    names = builtin_scenarios()
    assert {"cuspidal_cubic", "nodal_cubic_split", "a1_surface", "three_node_quartic"} <= set(names)
    for n in names:
        s = load_scenario(builtin_path(n))
        assert s.relative_dim >= 1
    with pytest.raises(SchemaError):
        builtin_path("no_such_scenario")


def test_minimal_polynomials():
    assert field_from_minpoly(None) is QQ
    assert field_from_minpoly([0, 1]) is QQ
    assert field_from_minpoly([3, 1]) is QQ
    K = field_from_minpoly([1, 0, 1])
    assert isinstance(K, NumberField) and K.degree == 2
    with pytest.raises(SchemaError):
        field_from_minpoly([-1, 0, 1])
    with pytest.raises(SchemaError):
        field_from_minpoly([1, 0, 2])
    with pytest.raises(SchemaError):
        field_from_minpoly([1, "x"])


def test_parse_round_trip_matches_builtin():
    s = parse_scenario(doc())
    assert gw_equal(curve_formula_check(s).rhs_ii, -hyperbolic(1))


@pytest.mark.parametrize(
    "changes",
    [
        {"colour": "blue"},
        {"field": "Q(i)"},
        {"relative_dim": 0},
        {"relative_dim": "1"},
        {"points": {}},
        {"points": [{"poly": "x^3 - y^2"}]},
        {"points": [{"poly": "x^3 - y^2", "degree": 6, "extra": 1}]},
        {"points": [{"poly": "x^3 - y^2", "degree": 6, "weights": []}]},
        {"points": [{"poly": "x^3 - y^2", "degree": 6, "factors": "x"}]},
        {"points": [{"poly": 3, "degree": 6}]},
        {"global": {"kind": "torus"}},
        {"global": {"kind": "plane_curve"}},
        {"global": {"kind": "plane_curve", "degree": 3, "genus": 1}},
        {"global": {"kind": "explicit", "chi_eta": "t", "chi_sigma": []}},
        {"global": {"kind": "explicit", "chi_eta": [], "chi_sigma": [{"entry": 0, "multiplicity": 1}]}},
        {"version": 1},
    ],
)
def test_schema_errors(changes):
    with pytest.raises(SchemaError):
        parse_scenario(doc(**changes))


def test_invalid_json_file():
    with pytest.raises(SchemaError):
        load_scenario(DATA / "broken.json")


def test_chi_eta_with_multiplicities():
    d = doc(global_={})
    d.pop("global_")
    d["global"] = {"kind": "explicit", "chi_eta": [["t", 2], "1 + t"], "chi_sigma": [{"entry": 1, "multiplicity": 1}]}
    s = parse_scenario(d)
    assert len(s.global_data.chi_eta) == 2 and s.global_data.chi_eta[0][1] == 2


def test_data_files():
    s = load_scenario(DATA / "empty_points.json")
    rep = conductor_check(s)
    assert rep.equal and rep.lhs.rank == 0
    s = load_scenario(DATA / "wrong_genus.json")
    # sp chi = 2<1>, chi_sigma = <1>: left side has rank 1, right side rank -2
    rep = conductor_check(s)
    assert rep.equal is False and not rep.rank_check
