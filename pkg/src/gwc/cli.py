"""Command-line front end: ``gwc <command> ...``.

Exit status: 0 success (or equality holds), 1 an equality/formula check
failed, 2 bad input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .conductor import (
    SingularPoint,
    conductor_check,
    curve_formula_check,
    delta_t_closed_form,
    delta_t_strata_homog,
)
from .errors import GWCError, InputError, InvariantViolation, ParseError
from .fields import QQ, NumberField
from .gw import (
    GWClass,
    gw_equal,
    invariant_profile,
    specialize_sp_t,
    transfer_scharlau,
)
from .local import jacobian_ring, scheja_storch_form
from .parse import parse_rational
from .poly import LEX, DEGREVLEX, parse_poly, variable_names
from .scenario import builtin_path, load_scenario

EXIT_OK, EXIT_UNEQUAL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
_DEFAULTS = {"format": "text", "order": "degrevlex", "timing": False}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _split_top(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    items = [s.strip() for s in out]
    if any(not s for s in items):
        raise ParseError(f"empty entry in {text!r}")
    return items


def _rational_entries(text: str) -> list[Fraction]:
    vals = [parse_rational(s) for s in _split_top(text)]
    if any(v == 0 for v in vals):
        raise ParseError("diagonal entries must be nonzero")
    return vals


def _monomial_text(exp, nvars) -> str:
    names = variable_names(nvars)
    parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, exp) if k]
    return "*".join(parts) or "1"


def _q(x) -> str:
    return str(x)


def _gw_out(g: GWClass) -> dict:
    return {"class": g.to_json(), "text": g.to_text(), "rank": g.rank}


def _order(name: str):
    return LEX if name == "lex" else DEGREVLEX


def _resolve_path(arg: str) -> Path:
    if arg.startswith("builtin:"):
        return Path(str(builtin_path(arg.split(":", 1)[1])))
    return Path(arg)


# ---------------------------------------------------------------------------
# commands; each returns (outputs dict, exit status)


def cmd_milnor(args):
    f = parse_poly(args.poly)
    r = jacobian_ring(f, _order(args.order), local=args.local)
    return {
        "poly": str(f),
        "mu": r.milnor_number,
        "basis": [_monomial_text(m, f.nvars) for m in r.basis],
        "groebner_basis": [str(g) for g in r.jacobian_gb.generators],
        "localized": r.localized,
    }, EXIT_OK


def cmd_ss_form(args):
    f = parse_poly(args.poly)
    r = jacobian_ring(f, _order(args.order), local=args.local)
    ss = scheja_storch_form(r)
    diag = ss.quadratic_form.diagonalize()
    g = diag.gw_class()
    return {
        "poly": str(f),
        "mu": r.milnor_number,
        "basis": [_monomial_text(m, f.nvars) for m in r.basis],
        "ss_element": [_q(c) for c in ss.ss_element_coords],
        "functional": [_q(c) for c in ss.functional],
        "gram": [[_q(c) for c in row] for row in ss.gram],
        "diagonal": [_q(c) for c in diag.entries],
        "gw": _gw_out(g),
        "signature": g.signature,
        "profile": invariant_profile(g).as_dict(),
    }, EXIT_OK


def cmd_gw(args):
    if args.gw_command == "invariants":
        g = GWClass.from_entries(_rational_entries(args.form))
        return {"gw": _gw_out(g), "profile": invariant_profile(g).as_dict()}, EXIT_OK
    if args.gw_command == "equal":
        g1 = GWClass.from_entries(_rational_entries(args.form1))
        g2 = GWClass.from_entries(_rational_entries(args.form2))
        eq = gw_equal(g1, g2)
        return {"left": _gw_out(g1), "right": _gw_out(g2), "equal": eq}, EXIT_OK if eq else EXIT_UNEQUAL
    if args.gw_command == "transfer":
        coeffs = [int(parse_rational(s)) for s in _split_top(args.minpoly)]
        if len(coeffs) == 2 and coeffs[1] == 1:
            k = QQ
            entries = _rational_entries(args.form)
        else:
            k = NumberField(coeffs)
            entries = []
            for s in _split_top(args.form):
                val = parse_poly(s, nvars=1, field=k)
                if not val.is_constant():
                    raise ParseError(f"{s!r} is not a field element (use a for the generator)")
                entries.append(val.constant_term())
        g = transfer_scharlau(k, entries)
        out = {"minpoly": coeffs, "gw": _gw_out(g), "profile": invariant_profile(g).as_dict()}
        if isinstance(k, NumberField) and not k.irreducibility_verified:
            out["warning"] = "irreducibility of the minimal polynomial was not verified"
        return out, EXIT_OK
    if args.gw_command == "specialize":
        g = specialize_sp_t(_split_top(args.form))
        return {"gw": _gw_out(g), "profile": invariant_profile(g).as_dict()}, EXIT_OK
    raise InputError("missing gw subcommand")


def cmd_delta(args):
    weights = tuple(int(parse_rational(s)) for s in _split_top(args.weights)) if args.weights else None
    f = parse_poly(args.poly)
    if weights is None:
        weights = (1,) * f.nvars
    p = SingularPoint(QQ, f, weights, args.degree, [], name="point")
    p.validate()
    closed = delta_t_closed_form(p)
    out = {"poly": str(f), "weights": list(weights), "degree": args.degree, "mu": p.mu, "closed_form": _gw_out(closed)}
    status = EXIT_OK
    if f.nvars == 2:
        factors = _split_top(args.factors) if args.factors else None
        strata = delta_t_strata_homog(p.leading_part, args.degree, weights, factors)
        eq = gw_equal(strata, closed)
        out["strata"] = _gw_out(strata)
        out["equal"] = eq
        status = EXIT_OK if eq else EXIT_UNEQUAL
    return out, status


def cmd_curve_check(args):
    s = load_scenario(_resolve_path(args.scenario))
    rep = curve_formula_check(s)
    out = rep.as_dict()
    out["scenario"] = s.name
    return out, EXIT_OK if rep.equal else EXIT_UNEQUAL


def cmd_conductor(args):
    s = load_scenario(_resolve_path(args.scenario))
    rep = conductor_check(s)
    out = rep.as_dict()
    out["scenario"] = s.name
    ok = rep.rank_check and rep.equal is not False
    return out, EXIT_OK if ok else EXIT_UNEQUAL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a nested subparser from resetting options given earlier
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--order", choices=["degrevlex", "lex"], default=argparse.SUPPRESS)
    common.add_argument(
        "--timing",
        action="store_true",
        default=argparse.SUPPRESS,
        help="include wall-clock timing (breaks byte-identical output)",
    )

    p = _Parser(prog="gwc", description="Quadratic Milnor numbers and conductor-formula checks over Q.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    m = sub.add_parser("milnor", parents=[common], help="Jacobian ring and Milnor number at the origin")
    m.add_argument("poly")
    m.add_argument("--local", action="store_true", help="localize at the origin instead of requiring global support there")
    m.set_defaults(func=cmd_milnor)

    s = sub.add_parser("ss-form", parents=[common], help="Scheja-Storch form (quadratic Milnor number)")
    s.add_argument("poly")
    s.add_argument("--local", action="store_true")
    s.set_defaults(func=cmd_ss_form)

    g = sub.add_parser("gw", parents=[common], help="GW(Q) calculator")
    gsub = g.add_subparsers(dest="gw_command", parser_class=_Parser)
    gsub.required = True
    gi = gsub.add_parser("invariants", parents=[common], help="invariant profile of a diagonal form")
    gi.add_argument("form", help='comma-separated entries, e.g. "2,-2"')
    ge = gsub.add_parser("equal", parents=[common], help="decide equality of two diagonal forms")
    ge.add_argument("form1")
    ge.add_argument("form2")
    gt = gsub.add_parser("transfer", parents=[common], help="Scharlau transfer to Q")
    gt.add_argument("--minpoly", required=True, help='integer coefficients, constant term first, e.g. "1,0,1"')
    gt.add_argument("form", help="comma-separated field elements, generator a")
    gs = gsub.add_parser("specialize", parents=[common], help="sp_t of a diagonal form over Q(t)")
    gs.add_argument("form", help='comma-separated rational functions in t, e.g. "t, 1+t"')
    g.set_defaults(func=cmd_gw)

    d = sub.add_parser("delta", parents=[common], help="Delta_t by the closed form and, for curves, by strata")
    d.add_argument("poly")
    d.add_argument("--weights", default=None, help='e.g. "2,3"')
    d.add_argument("--degree", type=int, required=True)
    d.add_argument("--factors", default=None, help="irreducible factors of H(x, 1), comma-separated")
    d.set_defaults(func=cmd_delta)

    c = sub.add_parser("curve-check", parents=[common], help="both curve identities for a scenario file")
    c.add_argument("scenario", help="path to a scenario file, or builtin:NAME")
    c.set_defaults(func=cmd_curve_check)

    k = sub.add_parser("conductor", parents=[common], help="conductor formula for a scenario file")
    k.add_argument("scenario", help="path to a scenario file, or builtin:NAME")
    k.set_defaults(func=cmd_conductor)
    return p


def _digest(argv: Sequence[str], args) -> str:
    h = hashlib.sha256()
    h.update(json.dumps(list(argv)).encode())
    path = getattr(args, "scenario", None)
    if path:
        try:
            h.update(_resolve_path(path).read_bytes())
        except (OSError, GWCError):
            pass
    return h.hexdigest()


def _text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        if set(value) >= {"class", "text", "rank"}:
            return [pad + f"{value['text']}  (rank {value['rank']})"]
        for key, v in value.items():
            if isinstance(v, (dict, list)) and v and not _is_gw_json(v) and not _flat(v):
                lines.append(f"{pad}{key}:")
                lines += _text(v, indent + 1)
            elif v == [] and key in _GW_KEYS:
                lines.append(f"{pad}{key}: 0")
            else:
                lines.append(f"{pad}{key}: {_inline(v)}")
        return lines
    if isinstance(value, list):
        for v in value:
            if _is_gw_json(v) or not isinstance(v, (dict, list)):
                lines.append(f"{pad}- {_inline(v)}")
                continue
            sub = _text(v, indent + 1)
            if sub:
                sub[0] = pad + "- " + sub[0].lstrip()
            lines += sub
        return lines
    return [pad + _inline(value)]


_GW_KEYS = {
    "lhs",
    "rhs",
    "sp_chi_eta",
    "chi_special",
    "chi_normalization",
    "local_term",
    "branch_term",
    "point_term",
    "witt_sum_stated",
}


def _is_gw_json(v) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(t, dict) and set(t) == {"entry", "multiplicity"} for t in v)


def _flat(v) -> bool:
    if isinstance(v, dict):
        return set(v) >= {"class", "text", "rank"}
    return all(not isinstance(x, (dict, list)) for x in v) or all(
        isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x) for x in v
    )


def _inline(v) -> str:
    if _is_gw_json(v):
        return GWClass.from_json(v).to_text()
    if isinstance(v, dict) and set(v) >= {"class", "text", "rank"}:
        return f"{v['text']}  (rank {v['rank']})"
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "n/a"
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
    lines = [f"command: {' '.join(report['command'])}", f"inputs digest: {report['inputs_digest']}"]
    if "error" in report:
        lines.append(f"error: {report['error']['type']}: {report['error']['message']}")
    else:
        lines += _text(report["outputs"])
    if "timing" in report:
        lines.append(f"timing: {report['timing']['seconds']:.4f} s")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in _DEFAULTS.items():
        if not hasattr(args, name):
            setattr(args, name, default)
    report = {"command": list(argv), "inputs_digest": _digest(argv, args)}
    start = time.perf_counter()
    try:
        outputs, status = args.func(args)
        report["outputs"] = outputs
    except InputError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        status = EXIT_INPUT
    except FileNotFoundError as exc:
        report["error"] = {"type": "FileNotFound", "message": str(exc)}
        status = EXIT_INPUT
    except InvariantViolation as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        status = EXIT_INTERNAL
    if args.timing:
        report["timing"] = {"seconds": time.perf_counter() - start}
    report["exit_status"] = status
    print(render(report, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
