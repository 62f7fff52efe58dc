"""Reading degeneration scenarios from JSON documents.

A scenario file looks like::

    {
      "version": "1",
      "relative_dim": 1,
      "field": "Q",
      "points": [
        {"name": "cusp", "poly": "x^3 - y^2", "weights": [2, 3], "degree": 6,
         "branches": [[0, 1]]}
      ],
      "global": {"kind": "plane_curve", "degree": 3}
    }

Minimal polynomials are integer lists, constant term first.  Over a residue
field of degree > 1 the symbol ``a`` in ``poly`` is the field generator.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .conductor import DegenerationScenario, GlobalData, SingularPoint
from .errors import GWCError, SchemaError
from .fields import QQ, NumberField, RationalFunction
from .gw import GWClass
from .poly import parse_poly

__all__ = ["load_scenario", "parse_scenario", "builtin_scenarios", "builtin_path", "field_from_minpoly"]

_TOP = {"version", "name", "description", "relative_dim", "field", "points", "global"}
_POINT = {
    "name",
    "residue_field_minpoly",
    "poly",
    "weights",
    "degree",
    "branches",
    "mu",
    "delta",
    "factors",
    "cover_genus",
}
_GLOBAL = {"kind", "degree", "g_generic", "g_normalization", "chi_eta", "chi_sigma"}


def _int(v, what: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(f"{what} must be an integer, got {v!r}")
    return v


def _int_list(v, what: str) -> list[int]:
    if not isinstance(v, list) or not v:
        raise SchemaError(f"{what} must be a nonempty list of integers")
    return [_int(x, what) for x in v]


def _unknown(d: dict, allowed: set, where: str):
    extra = sorted(set(d) - allowed)
    if extra:
        raise SchemaError(f"unknown field(s) in {where}: {', '.join(extra)}")


def field_from_minpoly(coeffs):
    """Q for degree one, otherwise the number field of the given polynomial."""
    if coeffs is None:
        return QQ
    coeffs = _int_list(coeffs, "minimal polynomial")
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) == 2 and coeffs[-1] == 1:
        return QQ
    try:
        return NumberField(coeffs)
    except GWCError as exc:
        raise SchemaError(f"bad minimal polynomial {coeffs}: {exc}") from None


def _parse_point(d: Any, idx: int, n: int) -> SingularPoint:
    if not isinstance(d, dict):
        raise SchemaError(f"point {idx} must be an object")
    _unknown(d, _POINT, f"point {idx}")
    for key in ("poly", "degree"):
        if key not in d:
            raise SchemaError(f"point {idx} is missing {key!r}")
    name = d.get("name", f"p{idx}")
    if not isinstance(name, str):
        raise SchemaError("point name must be a string")
    k = field_from_minpoly(d.get("residue_field_minpoly"))
    if not isinstance(d["poly"], str):
        raise SchemaError(f"point {name}: poly must be a string")
    poly = parse_poly(d["poly"], nvars=n + 1, field=k)
    weights = _int_list(d.get("weights", [1] * (n + 1)), f"point {name} weights")
    branches_raw = d.get("branches", [])
    if not isinstance(branches_raw, list):
        raise SchemaError(f"point {name}: branches must be a list of minimal polynomials")
    branches = [field_from_minpoly(b) for b in branches_raw]
    factors = d.get("factors")
    if factors is not None and (not isinstance(factors, list) or not all(isinstance(f, str) for f in factors)):
        raise SchemaError(f"point {name}: factors must be a list of polynomial strings")
    opt = {}
    for key, attr in (("mu", "supplied_mu"), ("delta", "supplied_delta"), ("cover_genus", "cover_genus")):
        if key in d:
            opt[attr] = _int(d[key], f"point {name} {key}")
    return SingularPoint(
        residue_field=k,
        local_poly=poly,
        weights=tuple(weights),
        degree=_int(d["degree"], f"point {name} degree"),
        branches=branches,
        factors=factors,
        name=name,
        **opt,
    )


def _parse_chi_eta(v) -> list:
    if not isinstance(v, list):
        raise SchemaError("chi_eta must be a list of rational-function strings")
    out = []
    for item in v:
        mult = 1
        if isinstance(item, list):
            if len(item) != 2 or not isinstance(item[0], str):
                raise SchemaError(f"chi_eta entry {item!r} must be a string or [string, multiplicity]")
            item, mult = item[0], _int(item[1], "chi_eta multiplicity")
        if not isinstance(item, str):
            raise SchemaError(f"chi_eta entry {item!r} must be a string")
        out.append((RationalFunction.parse(item), mult))
    return out


def _parse_global(d: Any):
    if d is None:
        return None
    if not isinstance(d, dict):
        raise SchemaError("global must be an object")
    _unknown(d, _GLOBAL, "global")
    kind = d.get("kind")
    if kind not in ("plane_curve", "genus_data", "explicit"):
        raise SchemaError(f"global.kind must be plane_curve, genus_data or explicit, got {kind!r}")
    kw: dict = {"kind": kind}
    for key in ("degree", "g_generic", "g_normalization"):
        if key in d:
            kw[key] = _int(d[key], f"global.{key}")
    if "chi_eta" in d:
        kw["chi_eta"] = _parse_chi_eta(d["chi_eta"])
    if "chi_sigma" in d:
        kw["chi_sigma"] = GWClass.from_json(d["chi_sigma"])
    try:
        return GlobalData(**kw)
    except GWCError as exc:
        raise SchemaError(str(exc)) from None


def parse_scenario(doc: Any) -> DegenerationScenario:
    if not isinstance(doc, dict):
        raise SchemaError("scenario must be a JSON object")
    _unknown(doc, _TOP, "scenario")
    if "relative_dim" not in doc or "points" not in doc:
        raise SchemaError("scenario needs relative_dim and points")
    if doc.get("field", "Q") != "Q":
        raise SchemaError("only the base field Q is supported")
    if "version" in doc and not isinstance(doc["version"], str):
        raise SchemaError("version must be a string")
    n = _int(doc["relative_dim"], "relative_dim")
    if n < 1:
        raise SchemaError("relative_dim must be at least 1")
    if not isinstance(doc["points"], list):
        raise SchemaError("points must be a list")
    points = [_parse_point(p, i, n) for i, p in enumerate(doc["points"])]
    return DegenerationScenario(
        relative_dim=n,
        points=points,
        global_data=_parse_global(doc.get("global")),
        name=str(doc.get("name", "")),
    )


def load_scenario(path) -> DegenerationScenario:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse_scenario(doc)


def builtin_scenarios() -> list[str]:
    root = resources.files("gwc") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def builtin_path(name: str):
    if name not in builtin_scenarios():
        raise SchemaError(f"no built-in scenario named {name!r}")
    return resources.files("gwc") / "scenarios" / f"{name}.json"
