"""
Brute-force counting of truncated arcs over prime fields.

``count_jets(f, d, q)`` is the number of jets psi(u) in (F_q[u]/u^(d+1))^n with
f(psi(u)) = u^d mod u^(d+1). It serves as an independent oracle for the point
count specialisation of the motivic zeta function.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod

from .errors import (ArityMismatch, BadReduction, BudgetExceeded, EmptyPolynomial,
                     MissingClassL, NonPrimeField)
from .grothendieck import Specialization, specialize_class
from .model import ResolutionModel
from .series import motivic_zeta, series_coefficient

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class SparsePoly:
    num_vars: int
    monomials: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def from_dict(cls, num_vars: int, terms: dict) -> SparsePoly:
        clean = []
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != num_vars:
                raise ArityMismatch(f"exponent vector {exps} does not have {num_vars} entries")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if c:
                clean.append((exps, int(c)))
        return cls(num_vars, tuple(sorted(clean, reverse=True)))

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.monomials)

    def is_zero(self) -> bool:
        return not self.monomials

    def permute(self, perm) -> SparsePoly:
        """Variable i of the result is variable perm[i] of self."""
        return SparsePoly.from_dict(
            self.num_vars, {tuple(e[p] for p in perm): c for e, c in self.monomials})

    def __str__(self):
        if not self.monomials:
            return "0"
        out = []
        for exps, c in self.monomials:
            mono = "*".join(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                            for i, e in enumerate(exps) if e)
            a = abs(c)
            body = mono if (a == 1 and mono) else (f"{a}*{mono}" if mono else str(a))
            sign = "-" if c < 0 else "+"
            out.append(body if not out and c > 0 else (f"-{body}" if not out else f"{sign} {body}"))
        return " ".join(out)


@dataclass(frozen=True)
class JetVector:
    q: int
    d: int
    coords: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for c in self.coords:
            if len(c) != self.d + 1:
                raise ValueError(f"each coordinate needs {self.d + 1} residues")
            if any(not 0 <= r < self.q for r in c):
                raise ValueError(f"residues must lie in [0, {self.q})")


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    k = 2
    while k * k <= q:
        if q % k == 0:
            return False
        k += 1
    return True


def _trunc_mul(a, b, n, q):
    out = [0] * n
    for i, x in enumerate(a):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return [v % q for v in out]


def _trunc_pow(a, e, n, q):
    out = [1] + [0] * (n - 1)
    for _ in range(e):
        out = _trunc_mul(out, a, n, q)
    return out


def _evaluate(monomials, powers, n, q):
    # powers[i][e] is coordinate i raised to e, already truncated
    total = [0] * n
    for exps, c in monomials:
        term = [c % q] + [0] * (n - 1)
        for i, e in enumerate(exps):
            if e:
                term = _trunc_mul(term, powers[i][e], n, q)
        for k in range(n):
            total[k] += term[k]
    return tuple(v % q for v in total)


def eval_jet(f: SparsePoly, psi: JetVector) -> tuple[int, ...]:
    if len(psi.coords) != f.num_vars:
        raise ArityMismatch(f"polynomial has {f.num_vars} variables, jet has {len(psi.coords)}")
    n, q = psi.d + 1, psi.q
    degs = [max((e[i] for e, _ in f.monomials), default=0) for i in range(f.num_vars)]
    powers = [[_trunc_pow(list(psi.coords[i]), e, n, q) for e in range(degs[i] + 1)]
              for i in range(f.num_vars)]
    return _evaluate(f.monomials, powers, n, q)


def _check(f: SparsePoly, d: int, q: int, free_coeffs: int, budget: int):
    if f.is_zero():
        raise EmptyPolynomial("cannot count jets of the zero polynomial")
    if d < 1:
        raise ValueError("d must be >= 1")
    if not is_prime(q):
        raise NonPrimeField(f"q = {q} is not prime")
    size = q ** (f.num_vars * free_coeffs)
    if size > budget:
        raise BudgetExceeded(f"{size} jets to enumerate exceeds budget {budget}")


def _count_block(f: SparsePoly, d: int, q: int, base: tuple[int, ...]) -> int:
    """Jets with psi(0) = base."""
    n = d + 1
    target = tuple([0] * d + [1])
    degs = [max((e[i] for e, _ in f.monomials), default=0) for i in range(f.num_vars)]
    # every coordinate jet with prescribed constant term, with its powers
    tables = []
    for i in range(f.num_vars):
        rows = []
        for tail in product(range(q), repeat=d):
            a = [base[i], *tail]
            rows.append([_trunc_pow(a, e, n, q) for e in range(degs[i] + 1)])
        tables.append(rows)
    count = 0
    for combo in product(*tables):
        if _evaluate(f.monomials, combo, n, q) == target:
            count += 1
    return count


def _block_task(args):
    return _count_block(*args)


def count_jets(f: SparsePoly, d: int, q: int, budget: int = DEFAULT_BUDGET,
               workers: int | None = None) -> int:
    """Exhaustive count, partitioned by the constant terms psi(0)."""
    _check(f, d, q, d + 1, budget)
    blocks = [(f, d, q, base) for base in product(range(q), repeat=f.num_vars)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return sum(ex.map(_block_task, blocks))
    return sum(_block_task(b) for b in blocks)


def count_jets_sequential(f: SparsePoly, d: int, q: int, budget: int = DEFAULT_BUDGET) -> int:
    """Unpartitioned enumeration through eval_jet; slow, kept as a cross-check."""
    _check(f, d, q, d + 1, budget)
    target = tuple([0] * d + [1])
    count = 0
    for flat in product(range(q), repeat=f.num_vars * (d + 1)):
        coords = tuple(flat[i * (d + 1):(i + 1) * (d + 1)] for i in range(f.num_vars))
        if eval_jet(f, JetVector(q, d, coords)) == target:
            count += 1
    return count


def count_jets_at_origin(f: SparsePoly, d: int, q: int, budget: int = DEFAULT_BUDGET) -> int:
    _check(f, d, q, d, budget)
    return _count_block(f, d, q, (0,) * f.num_vars)


@dataclass
class PointCountReport:
    d: int
    q: int
    support: str
    formula: Fraction
    oracle: int
    equal: bool
    details: dict = field(default_factory=dict)


def point_count_specialization(model: ResolutionModel, support: str, q: int) -> Specialization:
    values = {}
    for s in model.strata:
        if s.class_L is not None and support in s.class_L:
            values[s.symbol] = s.class_L[support].evaluate(q)
    return Specialization(values, Fraction(q))


def predicted_jet_count(model: ResolutionModel, d: int, q: int, support: str) -> Fraction:
    """q^(n d) times the supported T^d coefficient of Z(T) under L -> q."""
    if model.ambient_dim is None:
        raise ValueError("model has no ambient_dim; cannot normalise the zeta coefficient")
    coeff = series_coefficient(motivic_zeta(model), d)
    spec = point_count_specialization(model, support, q)
    missing = sorted(coeff.symbols() - set(spec.symbol_values))
    if missing:
        raise MissingClassL(
            f"no class_L for support {support!r} on stratum(s) {', '.join('[' + m + ']' for m in missing)}")
    return specialize_class(coeff, spec) * Fraction(q) ** (model.ambient_dim * d)


def verify_point_count(model: ResolutionModel, f: SparsePoly, d: int, q: int,
                       support: str = "total", budget: int = DEFAULT_BUDGET) -> PointCountReport:
    """
    Compare the jet count of f over F_q with the specialised zeta coefficient.

    Only meaningful when the model is a resolution of f with good reduction at q;
    the caller vouches for that. Supports "total" and "origin" are understood.
    """
    Nprod = prod(c.N for c in model.components)
    if gcd(q, Nprod) != 1:
        raise BadReduction(f"q = {q} divides a multiplicity of the model")
    if model.ambient_dim is not None and model.ambient_dim != f.num_vars:
        raise ArityMismatch(f"model ambient_dim {model.ambient_dim} but f has {f.num_vars} variables")
    if support == "total":
        oracle = count_jets(f, d, q, budget)
    elif support == "origin":
        oracle = count_jets_at_origin(f, d, q, budget)
    else:
        raise ValueError(f"jet counting supports 'total' or 'origin', not {support!r}")
    formula = predicted_jet_count(model, d, q, support)
    return PointCountReport(d, q, support, formula, oracle, formula == oracle)
