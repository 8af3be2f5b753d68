from __future__ import annotations

import pytest

from semistar.algebra import ExtensionField, PrimeField, Rationals
from semistar.operations import pullback_domain, semigroup_domain, valuation_domain


@pytest.fixture(scope="session")
def QQ():
    return Rationals()


@pytest.fixture(scope="session")
def K_quad(QQ):
    """Q[a]/(a^2 - 2)."""
    return ExtensionField(QQ, [-2, 0, 1])


@pytest.fixture(scope="session")
def K_triv(QQ):
    """Degree-1 extension: k = K = Q."""
    return ExtensionField(QQ, [0, 1])


@pytest.fixture(scope="session")
def K_f5():
    return ExtensionField(PrimeField(5), [3, 0, 1])  # a^2 = -3 = 2, not a square mod 5


@pytest.fixture(scope="session")
def dom_345():
    return semigroup_domain([3, 4, 5], "numsgr<3,4,5>")


@pytest.fixture(scope="session")
def dom_pvd(K_quad):
    return pullback_domain(K_quad, "Z", "pvd")


@pytest.fixture(scope="session")
def dom_318(K_quad):
    return pullback_domain(K_quad, "Q", "p318")


@pytest.fixture(scope="session")
def dom_vq(K_triv):
    return valuation_domain(K_triv, "Q", "v-q")


@pytest.fixture(scope="session")
def dom_vz(K_triv):
    return valuation_domain(K_triv, "Z", "v-z")


@pytest.fixture(scope="session")
def dom_lex(K_triv):
    return valuation_domain(K_triv, "ZxZ", "v-lex")
