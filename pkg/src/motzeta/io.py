"""Model files (JSON) and the polynomial input grammar."""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import ParseError, ValidationError
from .grothendieck import LaurentPoly
from .jets import SparsePoly
from .model import Component, ResolutionModel, StratumData, validate

# ---------------------------------------------------------------- polynomials

_TOKEN = re.compile(r"(\d+)|x(\d+)|([-+*^()])")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", position=pos)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), pos))
        elif m.group(2) is not None:
            if int(m.group(2)) < 1:
                raise ParseError("variables are numbered from x1", position=pos)
            tokens.append(("var", int(m.group(2)), pos))
        else:
            tokens.append((m.group(3), None, pos))
        pos = m.end()
    tokens.append(("end", None, pos))
    return tokens


class _PolyParser:
    # expr := ['+'] term (('+'|'-') term)*
    # term := factor ('*' factor)*
    # factor := atom ('^' int)?
    # atom := int | var | '(' expr ')' | '-' factor

    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0
        self.max_var = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", position=tok[2])
        self.i += 1
        return tok

    def expr(self):
        if self.peek()[0] == "+":
            self.take()
        acc = self.term()
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            acc = _padd(acc, self.term(), sign)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = _pmul(acc, self.factor())
        return acc

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError("exponent must be a nonnegative integer literal", position=tok[2])
            self.take()
            out = {(): 1}
            for _ in range(tok[1]):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            return {(): tok[1]} if tok[1] else {}
        if kind == "var":
            self.take()
            self.max_var = max(self.max_var, tok[1])
            return {((tok[1] - 1, 1),): 1}
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            self.take()
            return {k: -v for k, v in self.factor().items()}
        if kind == "end":
            raise ParseError("unexpected end of input", position=tok[2])
        raise ParseError(f"unexpected {kind!r}", position=tok[2])


# monomials are stored as sorted tuples of (var index, exponent)
def _mono_mul(a, b):
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _padd(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _pmul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = _mono_mul(ka, kb)
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def parse_poly(text: str, num_vars: int | None = None) -> SparsePoly:
    """Parse ``x1^2 + x2^3``-style input into canonical sparse form."""
    p = _PolyParser(text)
    if p.peek()[0] == "end":
        raise ParseError("empty polynomial text", position=0)
    terms = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[0]!r}", position=tok[2])
    n = max(p.max_var, 1) if num_vars is None else num_vars
    if n < p.max_var:
        raise ParseError(f"x{p.max_var} used but only {n} variables declared", position=0)
    dense = {}
    for mono, c in terms.items():
        exps = [0] * n
        for v, e in mono:
            exps[v] = e
        dense[tuple(exps)] = c
    return SparsePoly.from_dict(n, dense)


# --------------------------------------------------------------------- models

def _int(value, field):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", field=field)
    return value


def _laurent(value, field) -> LaurentPoly:
    if not isinstance(value, list):
        raise ParseError("expected a list of [exponent, coefficient] pairs", field=field)
    pairs = []
    for k, pair in enumerate(value):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ParseError("expected [exponent, coefficient]", field=f"{field}[{k}]")
        pairs.append((_int(pair[0], f"{field}[{k}][0]"), _int(pair[1], f"{field}[{k}][1]")))
    return LaurentPoly(pairs)


def _tag_map(value, field):
    if not isinstance(value, dict):
        raise ParseError("expected an object mapping support tags to integers", field=field)
    return {str(t): _int(v, f"{field}.{t}") for t, v in value.items()}


def model_from_dict(doc: dict) -> ResolutionModel:
    """Build a model from parsed JSON without validating it."""
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if "rel_dim" not in doc:
        raise ParseError("missing required key", field="rel_dim")
    rel_dim = _int(doc["rel_dim"], "rel_dim")
    ambient = doc.get("ambient_dim")
    ambient = None if ambient is None else _int(ambient, "ambient_dim")
    comps = []
    for k, c in enumerate(doc.get("components", [])):
        if not isinstance(c, dict):
            raise ParseError("component must be an object", field=f"components[{k}]")
        cid = c.get("id")
        where = f"components[{k}]" + (f" ({cid})" if cid is not None else "")
        if cid is None:
            raise ParseError("component is missing 'id'", field=where)
        if "N" not in c:
            raise ParseError(f"component {cid} is missing 'N'", field=f"{where}.N")
        comps.append(Component(
            id=str(cid),
            N=_int(c["N"], f"{where}.N"),
            nu=None if c.get("nu") is None else _int(c["nu"], f"{where}.nu"),
            mu=None if c.get("mu") is None else _int(c["mu"], f"{where}.mu"),
        ))
    if not comps:
        raise ParseError("at least one component is required", field="components")
    order = {c.id: k for k, c in enumerate(comps)}
    strata = []
    for k, s in enumerate(doc.get("strata", [])):
        where = f"strata[{k}]"
        if not isinstance(s, dict) or "J" not in s:
            raise ParseError("stratum needs a 'J' list", field=f"{where}.J")
        if not isinstance(s["J"], list):
            raise ParseError("'J' must be a list of component ids", field=f"{where}.J")
        J = [str(x) for x in s["J"]]
        # known ids in component order, unknown ones after (validate reports them)
        J = tuple(sorted(J, key=lambda x: (order.get(x, len(order)), x)))
        chi = _tag_map(s.get("chi", {}), f"{where}.chi")
        chi_cover = s.get("chi_cover")
        chi_cover = None if chi_cover is None else _tag_map(chi_cover, f"{where}.chi_cover")
        class_L = s.get("class_L")
        if class_L is not None:
            if isinstance(class_L, list):
                class_L = {"total": _laurent(class_L, f"{where}.class_L")}
            elif isinstance(class_L, dict):
                class_L = {str(t): _laurent(v, f"{where}.class_L.{t}") for t, v in class_L.items()}
            else:
                raise ParseError("class_L must be a list or an object of lists", field=f"{where}.class_L")
        m = s.get("m")
        m = None if m is None else _int(m, f"{where}.m")
        strata.append(StratumData(J=J, chi=chi, chi_cover=chi_cover, class_L=class_L, m=m))
    supports = doc.get("supports", ["total"])
    if not isinstance(supports, list):
        raise ParseError("'supports' must be a list of strings", field="supports")
    return ResolutionModel(
        rel_dim=rel_dim,
        components=tuple(comps),
        strata=tuple(strata),
        supports=tuple(str(t) for t in supports),
        ambient_dim=ambient,
        gelfand_leray=bool(doc.get("gelfand_leray", False)),
        name=doc.get("name"),
        notes=doc.get("notes"),
    )


def laurent_to_list(p: LaurentPoly) -> list[list[int]]:
    return [[e, c] for e, c in sorted(p.items(), reverse=True)]


def model_to_dict(model: ResolutionModel) -> dict:
    doc = {}
    if model.name is not None:
        doc["name"] = model.name
    if model.notes is not None:
        doc["notes"] = model.notes
    doc["rel_dim"] = model.rel_dim
    if model.ambient_dim is not None:
        doc["ambient_dim"] = model.ambient_dim
    if model.gelfand_leray:
        doc["gelfand_leray"] = True
    comps = []
    for c in model.components:
        entry = {"id": c.id, "N": c.N}
        if c.nu is not None:
            entry["nu"] = c.nu
        if c.mu is not None:
            entry["mu"] = c.mu
        comps.append(entry)
    doc["components"] = comps
    strata = []
    for s in model.strata:
        entry = {"J": list(s.J), "chi": dict(s.chi)}
        if s.chi_cover is not None:
            entry["chi_cover"] = dict(s.chi_cover)
        if s.class_L is not None:
            entry["class_L"] = {t: laurent_to_list(p) for t, p in s.class_L.items()}
        if s.m is not None:
            entry["m"] = s.m
        strata.append(entry)
    doc["strata"] = strata
    doc["supports"] = list(model.supports)
    return doc


def render_model(model: ResolutionModel) -> str:
    return json.dumps(model_to_dict(model), indent=2)


def load_model_text(text: str) -> ResolutionModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    model = model_from_dict(doc)
    problems = validate(model)
    if problems:
        raise ValidationError(problems)
    return model


def parse_model(path) -> ResolutionModel:
    return load_model_text(Path(path).read_text())
