"""
Rational generating series over the module of stratum classes.

Every series here is a finite sum of terms ``c * prod (L^a T^b / (1 - L^a T^b))``
with ``c`` a MotivicClass and every ``b >= 1``. Series are kept in this factored
form; coefficients are extracted by expanding each factor as a geometric series,
and the limit T -> infinity sends each product of ``k`` factors to ``(-1)^k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .errors import MissingMu, MissingNu
from .grothendieck import (EMPTY, ONE, L, LaurentPoly, MotivicClass, class_sum,
                           render_class, render_laurent, serre_reduce, substitute)
from .model import ResolutionModel, blow_up_stratum

DEFAULT_D_MAX = 64


@dataclass(frozen=True)
class SeriesTerm:
    coefficient: MotivicClass
    factors: tuple[tuple[int, int], ...]
    label: str | None = None

    def __post_init__(self):
        for a, b in self.factors:
            if b < 1:
                raise ValueError(f"factor L^{a}T^{b}/(1-L^{a}T^{b}) needs b >= 1")
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    def coefficient_poly(self, d: int) -> LaurentPoly:
        """Coefficient of T^d in the product of factors, as a polynomial in L."""
        # partial[s] = contribution of the factors seen so far to T^s
        partial = {0: ONE}
        for a, b in self.factors:
            nxt: dict[int, LaurentPoly] = {}
            for s, p in partial.items():
                k = 1
                while s + k * b <= d:
                    t = s + k * b
                    nxt[t] = nxt.get(t, LaurentPoly()) + p * LaurentPoly.monomial(a * k)
                    k += 1
            partial = nxt
        return partial.get(d, LaurentPoly())


@dataclass(frozen=True)
class MotivicSeries:
    terms: tuple[SeriesTerm, ...] = field(default_factory=tuple)

    def coefficient(self, d: int) -> MotivicClass:
        return series_coefficient(self, d)

    def symbol_order(self) -> list[str]:
        order = []
        for t in self.terms:
            for s in t.coefficient.symbols():
                if s not in order:
                    order.append(s)
        return order


def _stratum_series(model: ResolutionModel, exponent, prefactor: LaurentPoly) -> MotivicSeries:
    terms = []
    for s in model.strata:
        coeff = prefactor * (L - 1) ** (s.size - 1)
        factors = tuple((exponent(model.component(cid)), model.component(cid).N) for cid in s.J)
        terms.append(SeriesTerm(MotivicClass.symbol(s.symbol, coeff), factors, s.symbol))
    return MotivicSeries(tuple(terms))


def _require_mu(model: ResolutionModel):
    missing = [c.id for c in model.components if c.mu is None]
    if missing:
        raise MissingMu(f"mu not set for component(s) {', '.join(missing)}")


def _require_nu(model: ResolutionModel):
    missing = [c.id for c in model.components if c.nu is None]
    if missing:
        raise MissingNu(f"nu not set for component(s) {', '.join(missing)}")


def volume_series(model: ResolutionModel) -> MotivicSeries:
    _require_mu(model)
    return _stratum_series(model, lambda c: -c.mu, L ** (-model.rel_dim))


def motivic_zeta(model: ResolutionModel) -> MotivicSeries:
    _require_nu(model)
    return _stratum_series(model, lambda c: -c.nu, ONE)


def serre_series(model: ResolutionModel) -> MotivicSeries:
    terms = []
    for comp, s in model.singletons():
        terms.append(SeriesTerm(MotivicClass.symbol(s.symbol), ((0, comp.N),), s.symbol))
    return MotivicSeries(tuple(terms))


def series_coefficient(series: MotivicSeries, d: int) -> MotivicClass:
    if d < 1:
        raise ValueError("d must be >= 1")
    return class_sum(t.coefficient.scale(t.coefficient_poly(d)) for t in series.terms)


def _k_vectors(Ns: list[int], d: int):
    # all (k_i >= 1) with sum k_i N_i = d, by plain enumeration of bounded boxes
    ranges = [range(1, d // n + 1) for n in Ns]
    for ks in product(*ranges):
        if sum(k * n for k, n in zip(ks, Ns)) == d:
            yield ks


def direct_coefficient(model: ResolutionModel, d: int) -> MotivicClass:
    """The local singular series at d, summed stratum by stratum over k-vectors."""
    _require_mu(model)
    if d < 1:
        raise ValueError("d must be >= 1")
    parts = []
    for s in model.strata:
        comps = [model.component(cid) for cid in s.J]
        inner = LaurentPoly()
        for ks in _k_vectors([c.N for c in comps], d):
            inner = inner + LaurentPoly.monomial(-sum(k * c.mu for k, c in zip(ks, comps)))
        if inner.is_zero():
            continue
        coeff = L ** (-model.rel_dim) * (L - 1) ** (s.size - 1) * inner
        parts.append(MotivicClass.symbol(s.symbol, coeff))
    return class_sum(parts)


def limit_T_infinity(series: MotivicSeries) -> MotivicClass:
    return class_sum(t.coefficient.scale((-1) ** len(t.factors)) for t in series.terms)


def motivic_volume(model: ResolutionModel) -> MotivicClass:
    prefactor = L ** (-model.rel_dim)
    return class_sum(MotivicClass.symbol(s.symbol, prefactor * (1 - L) ** (s.size - 1))
                     for s in model.strata)


def nearby_cycles(model: ResolutionModel) -> MotivicClass:
    return class_sum(MotivicClass.symbol(s.symbol, (1 - L) ** (s.size - 1)) for s in model.strata)


@dataclass
class IdentityReport:
    ok: bool
    mismatches: list[str]
    details: dict = field(default_factory=dict)


def _term_key(t: SeriesTerm):
    return (frozenset(t.coefficient.items()), t.factors)


def weil_identity_check(model: ResolutionModel) -> IdentityReport:
    """
    Compare the volume series of ``omega/df`` with ``L^-(m-1) Z(LT)`` term by term.

    Substituting T -> LT turns L^a T^b into L^(a+b) T^b.
    """
    _require_nu(model)
    _require_mu(model)
    vol = {t.label: t for t in volume_series(model).terms}
    shift = L ** (-model.rel_dim)
    mismatches = []
    for t in motivic_zeta(model).terms:
        shifted = SeriesTerm(t.coefficient.scale(shift),
                             tuple((a + b, b) for a, b in t.factors), t.label)
        other = vol.get(t.label)
        if other is None or _term_key(other) != _term_key(shifted):
            mismatches.append(t.label)
    return IdentityReport(not mismatches, mismatches)


def blowup_invariance_check(model: ResolutionModel, J: Iterable[str], d_max: int = 12,
                            new_id: str | None = None) -> IdentityReport:
    """
    Blow up E_J and check that the local singular series coefficients for
    d <= d_max and the motivic volume are unchanged once the new stratum
    symbols are rewritten in terms of the old ones.
    """
    _require_mu(model)
    blown = blow_up_stratum(model, J, new_id=new_id)
    mismatches = []
    for d in range(1, d_max + 1):
        before = direct_coefficient(model, d)
        after = substitute(direct_coefficient(blown, d), blown.rewrite)
        if before != after:
            mismatches.append(f"d={d}")
    vol_before = motivic_volume(model)
    vol_after = substitute(motivic_volume(blown), blown.rewrite)
    if vol_before != vol_after:
        mismatches.append("motivic_volume")
    return IdentityReport(not mismatches, mismatches, {"model": blown})


def render_series(series: MotivicSeries, order: list[str] | None = None) -> str:
    if not series.terms:
        return "0"
    lines = []
    for t in series.terms:
        facs = []
        for a, b in t.factors:
            mono = _render_LT(a, b)
            facs.append(f"{mono}/(1 - {mono})")
        coeff = render_class(t.coefficient, order)
        if len(t.coefficient) > 1 or " " in coeff:
            coeff = f"({coeff})"
        lines.append(" * ".join([coeff] + facs) if facs else coeff)
    return "\n+ ".join(lines)


def _render_LT(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append(render_laurent(LaurentPoly.monomial(a)))
    parts.append("T" if b == 1 else f"T^{b}")
    return "*".join(parts)


__all__ = [
    "DEFAULT_D_MAX", "SeriesTerm", "MotivicSeries", "IdentityReport", "volume_series",
    "motivic_zeta", "serre_series", "series_coefficient", "direct_coefficient",
    "limit_T_infinity", "motivic_volume", "nearby_cycles", "weil_identity_check",
    "blowup_invariance_check", "render_series", "serre_reduce", "EMPTY",
]
