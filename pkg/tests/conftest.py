import random
from functools import reduce
from math import gcd
from importlib import resources
from itertools import combinations

import pytest
from hypothesis import strategies as st

from motzeta import Component, ResolutionModel, StratumData, load_model_text


def load_fixture(name):
    return load_model_text((resources.files("motzeta") / "fixtures" / f"{name}.json").read_text())


@pytest.fixture
def node():
    return load_fixture("node")


@pytest.fixture
def cusp():
    return load_fixture("cusp")


@pytest.fixture
def smooth():
    return load_fixture("smooth")


def make_model(Ns, mus, multi_strata, rel_dim=1, nus=None):
    ids = [f"E{k + 1}" for k in range(len(Ns))]
    comps = tuple(Component(i, N, None if nus is None else nus[k], mu)
                  for k, (i, N, mu) in enumerate(zip(ids, Ns, mus)))
    strata = [StratumData((i,), {"total": 0}, {"total": 0}) for i in ids]
    for J in multi_strata:
        m = reduce(gcd, (Ns[k] for k in J))
        strata.append(StratumData(tuple(ids[k] for k in J), {"total": 1}, {"total": m}))
    return ResolutionModel(rel_dim, comps, tuple(strata))


def random_model(rng: random.Random, max_components=4, max_N=6, max_mu=3):
    n = rng.randint(1, max_components)
    Ns = [rng.randint(1, max_N) for _ in range(n)]
    mus = [rng.randint(-max_mu, max_mu) for _ in range(n)]
    candidates = [J for r in range(2, n + 1) for J in combinations(range(n), r)]
    multi = [J for J in candidates if rng.random() < 0.5]
    return make_model(Ns, mus, multi, rel_dim=rng.randint(0, 3))


@st.composite
def models(draw, max_components=4, max_N=6, max_mu=3):
    n = draw(st.integers(1, max_components))
    Ns = draw(st.lists(st.integers(1, max_N), min_size=n, max_size=n))
    mus = draw(st.lists(st.integers(-max_mu, max_mu), min_size=n, max_size=n))
    candidates = [J for r in range(2, n + 1) for J in combinations(range(n), r)]
    multi = [J for J in candidates if draw(st.booleans())]
    rel_dim = draw(st.integers(0, 3))
    nus = [N + mu if N + mu >= 1 else None for N, mu in zip(Ns, mus)]
    if any(v is None for v in nus):
        nus = None
    return make_model(Ns, mus, multi, rel_dim=rel_dim, nus=nus)
