"""
Acceptance criteria. Every check is exact (tolerance 0).

Run directly for a one-line-per-criterion summary:

    python tests/test_acceptance.py
"""

import cmath
import random
import sys
import time
from dataclasses import replace
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from motzeta import (L, blowup_invariance_check, blow_up_stratum, derive_mu, direct_coefficient,
                     euler_milnor, lefschetz_number, lefschetz_series, limit_T_infinity,
                     log_derivative_coefficients, monodromy_zeta, motivic_volume, nearby_cycles,
                     parse_poly, series_coefficient, specialize_class, substitute,
                     verify_point_count, volume_series, weil_identity_check)
from motzeta.grothendieck import MotivicClass, Specialization, class_sum

from conftest import load_fixture, random_model

SEED = 20261016
N_RANDOM = 50


def report(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def fixtures():
    return {name: load_fixture(name) for name in ("node", "cusp", "smooth")}


def random_models():
    rng = random.Random(SEED)
    return [random_model(rng, max_components=4, max_N=6, max_mu=3) for _ in range(N_RANDOM)]


def test_criterion_1_jet_count_specialization():
    node = load_fixture("node")
    xy = parse_poly("x1*x2")
    failures = []
    counts = {}
    for d in (1, 2, 3):
        for q in (2, 3, 5):
            start = time.perf_counter()
            r = verify_point_count(node, xy, d, q, "total")
            counts[d, q] = r.oracle
            if not r.equal or time.perf_counter() - start > 30:
                failures.append((d, q, r.formula, r.oracle))
            r0 = verify_point_count(node, xy, d, q, "origin")
            if not r0.equal:
                failures.append((d, q, "origin", r0.formula, r0.oracle))
    ok = not failures and counts[1, 2] == 4 and counts[2, 2] == 12 and counts[2, 3] == 54
    report(1, "jet-count specialization, node x1*x2, (d,q) in {1,2,3}x{2,3,5}", ok,
           f"failures={failures}" if failures else "9 cells exact, total and origin")


def test_criterion_2_trace_formula_and_acampo():
    fx = fixtures()
    cusp, node, smooth = fx["cusp"], fx["node"], fx["smooth"]
    # eigenvalue oracle: 1 - (z^d + conj(z)^d), z = exp(i pi / 3)
    z = cmath.exp(1j * cmath.pi / 3)
    oracle = [round((1 - (z**d + z.conjugate() ** d)).real) for d in range(1, 7)]
    lef = [lefschetz_number(cusp, "origin", d) for d in range(1, 7)]
    ok = (lef == [0, 2, 3, 2, 0, -1] == oracle
          and monodromy_zeta(cusp, "origin").factors == ((2, -1), (3, -1), (6, 1))
          and euler_milnor(cusp, "origin") == -1
          and all(lefschetz_number(node, "origin", d) == 0 for d in range(1, 25))
          and all(lefschetz_number(smooth, "origin", d) == 1 for d in range(1, 25)))
    report(2, "trace formula and A'Campo on cusp/node/smooth", ok, f"cusp Lefschetz {lef}")


def test_criterion_3_coefficient_double_computation():
    start = time.perf_counter()
    models = [derive_mu(m) for m in fixtures().values()] + random_models()
    bad = []
    for k, m in enumerate(models):
        vol = volume_series(m)
        for d in range(1, 21):
            if series_coefficient(vol, d) != direct_coefficient(m, d):
                bad.append((k, d))
    elapsed = time.perf_counter() - start
    report(3, "rational-form coefficients equal direct enumeration, d=1..20",
           not bad and elapsed < 60, f"{len(models)} models, {elapsed:.1f}s, mismatches={bad[:5]}")


def test_criterion_4_blowup_invariance():
    fx = fixtures()
    cases = [("node", ["E1", "E2"]), ("cusp", ["E1", "E3"]), ("cusp", ["E2", "E3"]),
             ("cusp", ["E0", "E3"])]
    bad = []
    for name, J in cases:
        model = derive_mu(fx[name])
        r = blowup_invariance_check(model, J, d_max=12)
        blown = blow_up_stratum(model, J)
        vol_ok = substitute(motivic_volume(blown), blown.rewrite) == motivic_volume(model)
        if not (r.ok and vol_ok):
            bad.append((name, J, r.mismatches))
    report(4, "blow-up invariance of coefficients (d<=12) and motivic volume", not bad,
           f"{len(cases)} centres" if not bad else f"failures={bad}")


def test_criterion_5_limit_and_motivic_volume():
    rng = random.Random(SEED + 5)
    models = [derive_mu(m) for m in fixtures().values()] + random_models()
    bad = []
    for k, m in enumerate(models):
        closed = class_sum(MotivicClass.symbol(s.symbol, L ** -m.rel_dim * (1 - L) ** (s.size - 1))
                           for s in m.strata)
        lim = -limit_T_infinity(volume_series(m))
        other = replace(m, components=tuple(replace(c, mu=rng.randint(-5, 5)) for c in m.components))
        lim_other = -limit_T_infinity(volume_series(other))
        if not (lim == closed == motivic_volume(m) == lim_other):
            bad.append(k)
    report(5, "-lim volume series = closed form, independent of the gauge-form orders", not bad,
           f"{len(models)} models" if not bad else f"failures={bad}")


def test_criterion_6_weil_comparison():
    results = {name: weil_identity_check(derive_mu(m)) for name, m in fixtures().items()}
    ok = all(r.ok for r in results.values())
    report(6, "volume series of omega/df = L^-(m-1) Z(LT)", ok,
           ", ".join(f"{n}={'ok' if r.ok else r.mismatches}" for n, r in results.items()))


def test_criterion_7_nearby_cycles_normalization():
    expected = {"node": 0, "cusp": -1, "smooth": 1}
    bad = []
    chis = {}
    for name, m in fixtures().items():
        if nearby_cycles(m).scale(L ** -m.rel_dim) != motivic_volume(m):
            bad.append(name)
        spec = Specialization({s.symbol: m.cover_chi(s, "origin") for s in m.strata}, 1)
        chis[name] = specialize_class(nearby_cycles(m), spec)
        if chis[name] != expected[name]:
            bad.append(f"{name}: chi={chis[name]}")
    report(7, "L^-rel_dim S_f = motivic volume; chi of Milnor fibres", not bad,
           f"chi={{{', '.join(f'{k}: {v}' for k, v in chis.items())}}}")


def test_criterion_8_generating_identity():
    bad = []
    for name, m in fixtures().items():
        for support in m.supports:
            series = lefschetz_series(m, support).coefficients(24)
            logder = log_derivative_coefficients(monodromy_zeta(m, support), 24)
            direct = [lefschetz_number(m, support, d) for d in range(1, 25)]
            if not series == logder == direct:
                bad.append((name, support))
    report(8, "Lefschetz series = T d/dT log zeta_hat up to d=24", not bad,
           "all fixtures and supports" if not bad else f"failures={bad}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
