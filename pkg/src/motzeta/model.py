"""
Combinatorial data of a strict normal crossings resolution.

A model lists components ``E_i`` with multiplicity ``N_i`` (and optionally the
discrepancy ``nu_i`` and gauge-form order ``mu_i``), plus the nonempty strata
``E_J^o``. Strata carry Euler characteristics per named support ("total",
"origin", ...), optionally the Euler characteristics of their degree ``m_J``
etale covers, and optionally their cover class as a Laurent polynomial in L.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import MissingNu, NotAStratum, SingletonCenter, UnknownComponent
from .grothendieck import L, LaurentPoly, MotivicClass


@dataclass(frozen=True)
class Component:
    id: str
    N: int
    nu: int | None = None
    mu: int | None = None


@dataclass(frozen=True)
class StratumData:
    J: tuple[str, ...]
    chi: Mapping[str, int] = field(default_factory=dict)
    chi_cover: Mapping[str, int] | None = None
    # support tag -> class of the cover restricted to that support
    class_L: Mapping[str, LaurentPoly] | None = None
    # explicit cover degree from input; None means derive gcd(N_i)
    m: int | None = None

    @property
    def symbol(self) -> str:
        return ",".join(self.J)

    @property
    def size(self) -> int:
        return len(self.J)


def stratum_symbol(J: Iterable[str]) -> str:
    return ",".join(J)


@dataclass(frozen=True)
class ResolutionModel:
    rel_dim: int
    components: tuple[Component, ...]
    strata: tuple[StratumData, ...]
    supports: tuple[str, ...] = ("total",)
    ambient_dim: int | None = None
    gelfand_leray: bool = False
    name: str | None = None
    notes: str | None = None
    # stratum symbol -> class in the symbols of the model this one was blown up from
    rewrite: Mapping[str, MotivicClass] | None = None

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise UnknownComponent(cid)

    @property
    def component_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.components)

    def ordered(self, J: Iterable[str]) -> tuple[str, ...]:
        """Sort ids into component order; unknown ids raise."""
        pos = {cid: k for k, cid in enumerate(self.component_ids)}
        J = set(J)
        for cid in J:
            if cid not in pos:
                raise UnknownComponent(cid)
        return tuple(sorted(J, key=pos.__getitem__))

    def find_stratum(self, J: Iterable[str]) -> StratumData | None:
        key = frozenset(J)
        for s in self.strata:
            if frozenset(s.J) == key:
                return s
        return None

    def singletons(self) -> list[tuple[Component, StratumData]]:
        out = []
        for s in self.strata:
            if s.size == 1:
                out.append((self.component(s.J[0]), s))
        return out

    def cover_degree(self, stratum: StratumData) -> int:
        return gcd_multiplicity(self, stratum.J)

    def cover_chi(self, stratum: StratumData, tag: str) -> int | None:
        """Euler characteristic of the cover over ``tag``; derived as m*chi if not supplied."""
        if stratum.chi_cover is not None and tag in stratum.chi_cover:
            return stratum.chi_cover[tag]
        if tag in stratum.chi:
            return self.cover_degree(stratum) * stratum.chi[tag]
        return None

    def symbol_order(self) -> list[str]:
        return [s.symbol for s in self.strata]


def validate(model: ResolutionModel) -> list[str]:
    """Return a list of human-readable invariant violations (empty if valid)."""
    problems = []
    if model.rel_dim < 0:
        problems.append(f"rel_dim: must be >= 0, got {model.rel_dim}")
    if model.ambient_dim is not None and model.ambient_dim < 1:
        problems.append(f"ambient_dim: must be >= 1, got {model.ambient_dim}")
    seen = set()
    N_of = {}
    for k, c in enumerate(model.components):
        where = f"components[{k}] ({c.id})"
        if c.id in seen:
            problems.append(f"{where}.id: duplicate component id")
        seen.add(c.id)
        N_of[c.id] = c.N
        if not isinstance(c.N, int) or c.N < 1:
            problems.append(f"{where}.N: multiplicity must be a positive integer, got {c.N}")
        if c.nu is not None and c.nu < 1:
            problems.append(f"{where}.nu: must be >= 1, got {c.nu}")
        if (model.gelfand_leray and c.nu is not None and c.mu is not None
                and c.mu != c.nu - c.N):
            problems.append(f"{where}.mu: expected nu - N = {c.nu - c.N}, got {c.mu}")

    supports = set(model.supports)
    subsets = set()
    for k, s in enumerate(model.strata):
        where = f"strata[{k}] ({s.symbol})"
        if not s.J:
            problems.append(f"{where}.J: stratum index set is empty")
            continue
        if len(set(s.J)) != len(s.J):
            problems.append(f"{where}.J: repeated component id")
        key = frozenset(s.J)
        if key in subsets:
            problems.append(f"{where}.J: duplicate stratum")
        subsets.add(key)
        unknown = [cid for cid in s.J if cid not in N_of]
        if unknown:
            problems.append(f"{where}.J: unknown component id(s) {', '.join(unknown)}")
            continue
        for tag in s.chi:
            if tag not in supports:
                problems.append(f"{where}.chi: support tag {tag!r} not declared in supports")
        for tag in (s.class_L or {}):
            if tag not in supports:
                problems.append(f"{where}.class_L: support tag {tag!r} not declared in supports")
        Ns = [N_of[cid] for cid in s.J]
        if any(not isinstance(n, int) or n < 1 for n in Ns):
            continue
        m = reduce(gcd, Ns)
        if s.m is not None:
            bad = [cid for cid in s.J if s.m < 1 or N_of[cid] % s.m]
            if bad:
                problems.append(f"{where}.m: {s.m} does not divide N of {', '.join(bad)}")
            elif s.m != m:
                problems.append(f"{where}.m: expected gcd of multiplicities {m}, got {s.m}")
        if s.chi_cover is not None:
            for tag, v in s.chi_cover.items():
                if tag not in supports:
                    problems.append(f"{where}.chi_cover: support tag {tag!r} not declared in supports")
                elif tag in s.chi and v != m * s.chi[tag]:
                    problems.append(
                        f"{where}.chi_cover[{tag}]: expected m*chi = {m}*{s.chi[tag]} = "
                        f"{m * s.chi[tag]}, got {v}")
    return problems


def gcd_multiplicity(model: ResolutionModel, J: Iterable[str]) -> int:
    J = list(J)
    if not J:
        raise ValueError("J must be nonempty")
    return reduce(gcd, (model.component(cid).N for cid in J))


def _representable(target: int, coins: Sequence[int]) -> bool:
    # unbounded coin problem: is target a nonnegative combination of coins?
    if target < 0:
        return False
    reach = [False] * (target + 1)
    reach[0] = True
    for c in coins:
        for v in range(c, target + 1):
            if reach[v - c]:
                reach[v] = True
    return reach[target]


def is_J_linear(model: ResolutionModel, J: Iterable[str], d: int) -> bool:
    """True iff d = sum alpha_j N_j with every alpha_j >= 1."""
    J = list(J)
    if not J:
        raise ValueError("J must be nonempty")
    Ns = [model.component(cid).N for cid in J]
    # alpha_j >= 1: subtract one copy of each, then ordinary coin membership
    return _representable(d - sum(Ns), Ns)


def is_Xs_linear(model: ResolutionModel, d: int) -> bool:
    return any(is_J_linear(model, s.J, d) for s in model.strata if s.size > 1)


def derive_mu(model: ResolutionModel) -> ResolutionModel:
    missing = [c.id for c in model.components if c.nu is None]
    if missing:
        raise MissingNu(f"nu not set for component(s) {', '.join(missing)}")
    comps = tuple(replace(c, mu=c.nu - c.N) for c in model.components)
    return replace(model, components=comps, gelfand_leray=True)


def _fresh_id(model: ResolutionModel) -> str:
    taken = set(model.component_ids)
    k = 1
    while f"B{k}" in taken:
        k += 1
    return f"B{k}"


def blow_up_stratum(model: ResolutionModel, J: Iterable[str],
                    new_id: str | None = None) -> ResolutionModel:
    """
    Blow up the closed stratum E_J (|J| > 1) and rewrite the stratification.

    The exceptional component gets N_0 = sum N_j, nu_0 = sum nu_j and
    mu_0 = sum mu_j (each only when known for all of J). Strata not containing
    J are untouched; strata containing J are replaced by the strata K u {0},
    J not inside K, whose classes are (L - 1)^(|J \\ K| - 1) [E~_{J u K}^o].
    ``result.rewrite`` maps each new stratum symbol to that class in the old
    symbols.
    """
    J = set(J)
    for cid in J:
        model.component(cid)
    if len(J) < 2:
        raise SingletonCenter(f"blow-up center must involve at least two components, got {sorted(J)}")
    if model.find_stratum(J) is None:
        raise NotAStratum(f"E_J^o is not listed for J = {{{', '.join(model.ordered(J))}}}")
    new_id = new_id or _fresh_id(model)
    if new_id in model.component_ids:
        raise ValueError(f"component id {new_id!r} already in use")

    Jcomps = [model.component(cid) for cid in J]
    N0 = sum(c.N for c in Jcomps)
    nu0 = sum(c.nu for c in Jcomps) if all(c.nu is not None for c in Jcomps) else None
    mu0 = sum(c.mu for c in Jcomps) if all(c.mu is not None for c in Jcomps) else None
    exceptional = Component(new_id, N0, nu0, mu0)
    components = model.components + (exceptional,)
    N_of = {c.id: c.N for c in components}

    strata = []
    rewrite = {}
    for s in model.strata:
        if not J <= set(s.J):
            strata.append(s)
            rewrite[s.symbol] = MotivicClass.symbol(s.symbol)
    for s in model.strata:
        if not J <= set(s.J):
            continue
        base = set(s.J)
        rest = base - J
        # K runs over subsets of J u K = base with K containing base \ J but not all of J
        for r in range(len(J)):
            for part in combinations(sorted(J), r):
                K = rest | set(part)
                torus_dim = len(J - K) - 1
                Jnew = model.ordered(K) + (new_id,)
                m_new = reduce(gcd, (N_of[cid] for cid in Jnew))
                fiber = (L - 1) ** torus_dim
                # chi of a positive-dimensional torus fiber is 0
                chi = {t: (v if torus_dim == 0 else 0) for t, v in s.chi.items()}
                chi_cover = None
                if s.chi_cover is not None:
                    chi_cover = {t: (v if torus_dim == 0 else 0) for t, v in s.chi_cover.items()}
                class_L = None
                if s.class_L is not None:
                    class_L = {t: fiber * p for t, p in s.class_L.items()}
                new = StratumData(J=Jnew, chi=chi, chi_cover=chi_cover, class_L=class_L,
                                  m=None if s.m is None else m_new)
                strata.append(new)
                rewrite[new.symbol] = MotivicClass.symbol(s.symbol, fiber)

    return replace(model, components=components, strata=tuple(strata),
                   rewrite=rewrite, name=None if model.name is None else f"{model.name}+blowup")
