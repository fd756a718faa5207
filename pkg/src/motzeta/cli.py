"""Command line front end: ``motzeta <command> --model FILE ...``.

Exit codes: 0 success or verified, 1 verification mismatch, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import monodromy as mono
from . import series as ser
from .errors import MotzetaError, ParseError, ValidationError
from .grothendieck import MotivicClass, Specialization, render_class, specialize_class
from .io import laurent_to_list, load_model_text, model_from_dict, parse_poly, render_model
from .jets import DEFAULT_BUDGET, count_jets, count_jets_at_origin, verify_point_count
from .model import blow_up_stratum, derive_mu, validate


def _read_model_text(ref: str) -> str:
    path = Path(ref)
    if path.exists():
        return path.read_text()
    bundled = resources.files("motzeta") / "fixtures" / path.name
    if bundled.is_file():
        return bundled.read_text()
    raise ParseError(f"model file not found: {ref}")


def _load(args):
    return load_model_text(_read_model_text(args.model))


def _with_mu(model):
    # derive only when no order was supplied; partial input stays as given
    if all(c.mu is None for c in model.components) and all(c.nu is not None for c in model.components):
        return derive_mu(model)
    return model


def _class_json(c: MotivicClass) -> dict:
    return {s: laurent_to_list(p) for s, p in sorted(c.items())}


def _series_json(series: ser.MotivicSeries) -> list:
    return [{"label": t.label, "coefficient": _class_json(t.coefficient),
             "factors": [list(f) for f in t.factors]} for t in series.terms]


def _frac(x: Fraction):
    return x.numerator if x.denominator == 1 else str(x)


class Output:
    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream

    def emit(self, text: str, data):
        if self.fmt == "json":
            self.stream.write(json.dumps(data, sort_keys=True) + "\n")
        else:
            self.stream.write(text + "\n")


def _chi_specialization(model, tag):
    values = {}
    for s in model.strata:
        v = model.cover_chi(s, tag)
        if v is not None:
            values[s.symbol] = Fraction(v)
    return Specialization(values, Fraction(1))


# ---------------------------------------------------------------- commands

def cmd_validate(args, out):
    model = model_from_dict(json.loads(_read_model_text(args.model)))
    problems = validate(model)
    out.emit("OK" if not problems else "\n".join(problems),
             {"valid": not problems, "violations": problems})
    return 0 if not problems else 2


def cmd_series(kind):
    def run(args, out):
        model = _load(args)
        if kind == "zeta":
            s = ser.motivic_zeta(model)
        elif kind == "volume":
            s = ser.volume_series(_with_mu(model))
        else:
            s = ser.serre_series(model)
        out.emit(ser.render_series(s, model.symbol_order()), {"series": kind, "terms": _series_json(s)})
        return 0
    return run


def _pick_series(model, which):
    if which == "zeta":
        return ser.motivic_zeta(model)
    if which == "serre":
        return ser.serre_series(model)
    return ser.volume_series(_with_mu(model))


def cmd_coeff(args, out):
    model = _load(args)
    c = ser.series_coefficient(_pick_series(model, args.series), args.d)
    out.emit(render_class(c, model.symbol_order()),
             {"series": args.series, "d": args.d, "coefficient": _class_json(c)})
    return 0


def cmd_direct_coeff(args, out):
    model = _with_mu(_load(args))
    c = ser.direct_coefficient(model, args.d)
    out.emit(render_class(c, model.symbol_order()), {"d": args.d, "coefficient": _class_json(c)})
    return 0


def cmd_limit(args, out):
    model = _load(args)
    c = ser.limit_T_infinity(_pick_series(model, args.series))
    out.emit(render_class(c, model.symbol_order()), {"series": args.series, "limit": _class_json(c)})
    return 0


def cmd_class(kind):
    def run(args, out):
        model = _load(args)
        c = ser.motivic_volume(model) if kind == "volume" else ser.nearby_cycles(model)
        data = {kind: _class_json(c)}
        text = render_class(c, model.symbol_order())
        if args.chi:
            chi = specialize_class(c, _chi_specialization(model, args.chi))
            data["chi"] = _frac(chi)
            text += f"\nchi[{args.chi}] = {_frac(chi)}"
        out.emit(text, data)
        return 0
    return run


def cmd_lefschetz(args, out):
    model = _load(args)
    value = mono.lefschetz_number(model, args.support, args.d)
    out.emit(str(value), {"support": args.support, "d": args.d, "lefschetz": value})
    return 0


def cmd_monodromy_zeta(args, out):
    model = _load(args)
    z = mono.monodromy_zeta(model, args.support)
    out.emit(str(z), {"support": args.support, "factors": [list(f) for f in z.factors],
                      "euler_milnor": mono.euler_milnor(model, args.support)})
    return 0


def cmd_verify_trace(args, out):
    model = _load(args)
    r = mono.verify_trace(model, args.support, args.d)
    out.emit(f"lhs={r.lhs} rhs={r.rhs} {'OK' if r.equal else 'MISMATCH'}",
             {"d": r.d, "lhs": r.lhs, "rhs": r.rhs, "equal": r.equal, "cover_source": r.cover_source})
    return 0 if r.equal else 1


def cmd_verify_weil(args, out):
    model = _with_mu(_load(args))
    r = ser.weil_identity_check(model)
    text = "OK" if r.ok else "MISMATCH " + " ".join(f"[{m}]" for m in r.mismatches)
    out.emit(text, {"ok": r.ok, "mismatches": r.mismatches})
    return 0 if r.ok else 1


def cmd_blowup(args, out):
    model = _load(args)
    blown = blow_up_stratum(model, args.J, new_id=args.new_id)
    data = {"model": json.loads(render_model(blown)),
            "rewrite": {s: _class_json(c) for s, c in blown.rewrite.items()}}
    text = render_model(blown)
    status = 0
    if args.check:
        r = ser.blowup_invariance_check(_with_mu(model), args.J, args.dmax, new_id=args.new_id)
        data["check"] = {"ok": r.ok, "mismatches": r.mismatches, "d_max": args.dmax}
        text += "\ncheck: " + ("OK" if r.ok else "MISMATCH " + " ".join(r.mismatches))
        status = 0 if r.ok else 1
    out.emit(text, data)
    return status


def cmd_count_jets(args, out):
    f = parse_poly(args.f)
    if args.origin:
        n = count_jets_at_origin(f, args.d, args.q, args.budget)
    else:
        n = count_jets(f, args.d, args.q, args.budget, workers=args.workers)
    out.emit(str(n), {"f": str(f), "d": args.d, "q": args.q, "origin": args.origin, "count": n})
    return 0


def cmd_verify_point_count(args, out):
    model = _load(args)
    f = parse_poly(args.f, model.ambient_dim)
    r = verify_point_count(model, f, args.d, args.q, args.support, args.budget)
    out.emit(f"formula={_frac(r.formula)} oracle={r.oracle} {'OK' if r.equal else 'MISMATCH'}",
             {"d": r.d, "q": r.q, "support": r.support, "formula": _frac(r.formula),
              "oracle": r.oracle, "equal": r.equal})
    return 0 if r.equal else 1


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    with_model = argparse.ArgumentParser(add_help=False, parents=[common])
    with_model.add_argument("--model", required=True,
                            help="model JSON file, or the name of a bundled fixture")

    parser = argparse.ArgumentParser(prog="motzeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, parent=with_model, **kw):
        p = sub.add_parser(name, parents=[parent], **kw)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, help="check model invariants")
    add("zeta", cmd_series("zeta"), help="motivic zeta function in rational form")
    add("volume-series", cmd_series("volume"), help="volume Poincare series")
    add("serre-series", cmd_series("serre"), help="Serre Poincare series")
    p = add("coeff", cmd_coeff, help="coefficient of T^d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--series", choices=("volume", "zeta", "serre"), default="volume")
    p = add("direct-coeff", cmd_direct_coeff, help="local singular series by direct enumeration")
    p.add_argument("--d", type=int, required=True)
    p = add("limit", cmd_limit, help="limit T -> infinity")
    p.add_argument("--series", choices=("volume", "zeta", "serre"), default="volume")
    p = add("motivic-volume", cmd_class("volume"), help="motivic volume")
    p.add_argument("--chi", metavar="TAG", help="also print the Euler characteristic over TAG")
    p = add("nearby-cycles", cmd_class("nearby_cycles"), help="motivic nearby cycles")
    p.add_argument("--chi", metavar="TAG", help="also print the Euler characteristic over TAG")
    p = add("lefschetz", cmd_lefschetz, help="Lefschetz number of the d-th monodromy power")
    p.add_argument("--support", required=True)
    p.add_argument("--d", type=int, required=True)
    p = add("monodromy-zeta", cmd_monodromy_zeta, help="A'Campo monodromy zeta function")
    p.add_argument("--support", required=True)
    p = add("verify-trace", cmd_verify_trace, help="trace formula at Euler level")
    p.add_argument("--support", required=True)
    p.add_argument("--d", type=int, required=True)
    add("verify-weil", cmd_verify_weil, help="volume series vs L^-(m-1) Z(LT)")
    p = add("blowup", cmd_blowup, help="blow up a stratum")
    p.add_argument("--J", nargs="+", required=True)
    p.add_argument("--new-id")
    p.add_argument("--check", action="store_true")
    p.add_argument("--dmax", type=int, default=12)
    p = add("count-jets", cmd_count_jets, parent=common, help="brute-force jet count over F_q")
    p.add_argument("--f", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--origin", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--workers", type=int, default=None)
    p = add("verify-point-count", cmd_verify_point_count, help="zeta coefficient vs jet count")
    p.add_argument("--f", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--support", default="total")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    out = Output(args.format, stdout)
    try:
        return args.func(args, out)
    except ValidationError as exc:
        stderr.write("invalid model:\n" + "\n".join(f"  {v}" for v in exc.violations) + "\n")
        return 2
    except (MotzetaError, json.JSONDecodeError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
