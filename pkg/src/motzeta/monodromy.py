"""Lefschetz numbers, A'Campo zeta functions and the trace formula at Euler level."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MissingChi
from .model import ResolutionModel


@dataclass(frozen=True)
class FactoredRational:
    """``prod (T^N - 1)^e`` with distinct N and nonzero e, sorted by N."""

    factors: tuple[tuple[int, int], ...] = ()

    @property
    def degree(self) -> int:
        return sum(N * e for N, e in self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for N, e in self.factors:
            base = "(T - 1)" if N == 1 else f"(T^{N} - 1)"
            parts.append(base if e == 1 else f"{base}^{e}")
        return "*".join(parts)


@dataclass(frozen=True)
class LefschetzReport:
    d: int
    lhs: int
    rhs: int
    equal: bool
    cover_source: str = "derived"


@dataclass(frozen=True)
class LefschetzSeries:
    """Integer series ``sum_i w_i T^{N_i} / (1 - T^{N_i})`` with ``w_i = N_i chi_i``."""

    terms: tuple[tuple[int, int], ...]  # (weight, N)

    def coefficient(self, d: int) -> int:
        return sum(w for w, N in self.terms if d % N == 0)

    def coefficients(self, d_max: int) -> list[int]:
        return [self.coefficient(d) for d in range(1, d_max + 1)]

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for k, (w, N) in enumerate(self.terms):
            t = "T" if N == 1 else f"T^{N}"
            body = f"{abs(w)}*{t}/(1 - {t})" if abs(w) != 1 else f"{t}/(1 - {t})"
            if k == 0:
                out = ("-" if w < 0 else "") + body
            else:
                out += (" - " if w < 0 else " + ") + body
        return out


def singleton_chi(model: ResolutionModel, support: str) -> list[tuple[int, int]]:
    """(N_i, chi(E_i^o over support)) for every listed singleton stratum."""
    out = []
    for comp, s in model.singletons():
        if support not in s.chi:
            raise MissingChi(f"stratum [{s.symbol}] has no chi for support {support!r}")
        out.append((comp.N, s.chi[support]))
    return out


def lefschetz_number(model: ResolutionModel, support: str, d: int) -> int:
    if d < 1:
        raise ValueError("d must be >= 1")
    return sum(N * chi for N, chi in singleton_chi(model, support) if d % N == 0)


def monodromy_zeta(model: ResolutionModel, support: str) -> FactoredRational:
    exps: dict[int, int] = {}
    for N, chi in singleton_chi(model, support):
        exps[N] = exps.get(N, 0) - chi
    return FactoredRational(tuple(sorted((N, e) for N, e in exps.items() if e != 0)))


def lefschetz_series(model: ResolutionModel, support: str) -> LefschetzSeries:
    weights: dict[int, int] = {}
    for N, chi in singleton_chi(model, support):
        weights[N] = weights.get(N, 0) + N * chi
    return LefschetzSeries(tuple((w, N) for N, w in sorted(weights.items()) if w != 0))


def euler_milnor(model: ResolutionModel, support: str) -> int:
    return sum(N * chi for N, chi in singleton_chi(model, support))


def _binomial_series(N: int, e: int, n: int) -> list[int]:
    # (1 - T^N)^e truncated at degree n; e may be negative
    out = [0] * (n + 1)
    c = 1
    for k in range(n // N + 1):
        out[k * N] = c
        # C(e, k+1) (-1)^(k+1) from C(e, k) (-1)^k; the division is exact
        c = -c * (e - k) // (k + 1)
    return out


def _mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(n + 1 - i):
                out[i + j] += x * b[j]
    return out


def log_derivative_coefficients(zeta: FactoredRational, d_max: int) -> list[int]:
    """
    Coefficients 1..d_max of ``T d/dT log zeta_hat`` where zeta_hat replaces
    each ``(T^N - 1)^e`` by ``(1 - T^N)^e``; the two differ by a constant sign,
    which the logarithmic derivative does not see.

    Works with truncated integer power series: zeta_hat has constant term 1,
    so it is invertible over Z[[T]].
    """
    n = d_max
    Z = [1] + [0] * n
    for N, e in zeta.factors:
        Z = _mul(Z, _binomial_series(N, e, n), n)
    dZ = [k * Z[k] for k in range(n + 1)]  # T * Z'(T)
    # solve Z * Q = dZ for Q, using Z[0] = 1
    Q = [0] * (n + 1)
    for k in range(n + 1):
        Q[k] = dZ[k] - sum(Z[j] * Q[k - j] for j in range(1, k + 1))
    return Q[1:]


def verify_trace(model: ResolutionModel, support: str, d: int) -> LefschetzReport:
    """
    Euler characteristic of the Serre-series coefficient at d (sum over N_i | d of
    the cover Euler characteristics) against the Lefschetz number.
    """
    rhs = lefschetz_number(model, support, d)
    lhs = 0
    supplied = False
    for comp, s in model.singletons():
        if d % comp.N:
            continue
        if s.chi_cover is not None and support in s.chi_cover:
            supplied = True
        lhs += model.cover_chi(s, support)
    return LefschetzReport(d, lhs, rhs, lhs == rhs, "supplied" if supplied else "derived")
