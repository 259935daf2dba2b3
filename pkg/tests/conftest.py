import json
from dataclasses import replace
from fractions import Fraction
from importlib import resources

import pytest

from gman.poly import Poly, monomials_of_weight
from gman.scenario import Scenario, load_scenario


def bundled(name: str) -> Scenario:
    text = resources.files("gman.data").joinpath(name + ".json").read_text()
    return load_scenario(text)


@pytest.fixture(scope="session")
def paper() -> Scenario:
    return bundled("paper_sec4")


@pytest.fixture(scope="session")
def sl2() -> Scenario:
    return bundled("sl2_linear")


@pytest.fixture(scope="session")
def abelian() -> Scenario:
    return bundled("abelian_trivial")


def bundled_doc(name: str) -> dict:
    text = resources.files("gman.data").joinpath(name + ".json").read_text()
    return json.loads(text)


def with_connection(doc: dict, christoffel, shift: int) -> Scenario:
    doc = dict(doc)
    doc["christoffel"] = christoffel
    doc["christoffel_shift"] = shift
    return load_scenario(doc)


def random_connection(s: Scenario, shift: int, rng) -> Scenario:
    """A random torsionfree weight-homogeneous connection for s."""
    n, w = s.n, s.weights
    gamma = {}
    for k in range(n):
        for i in range(n):
            for j in range(i, n):
                want = shift + w[k] - w[i] - w[j]
                monos = monomials_of_weight(n, w, want)
                if not monos:
                    continue
                p = Poly(n, {rng.choice(monos): Fraction(rng.randint(-3, 3))})
                if p.is_zero():
                    continue
                gamma[(k, i, j)] = p
                if i != j:
                    gamma[(k, j, i)] = p
    return replace(s, christoffel=gamma, christoffel_shift=shift)
