"""Shared objects of the construction, built once per test session"""

import pytest

from twodist.construction import assemble_point_set, embed_points, find_switching_root
from twodist.gf3codes import dual, ternary_golay
from twodist.maximality import build_m, prepare_dual, translated_set
from twodist.twograph import build_gamma


@pytest.fixture(scope="session")
def golay():
    return ternary_golay()


@pytest.fixture(scope="session")
def y_code(golay):
    return dual(golay)


@pytest.fixture(scope="session")
def gamma(y_code):
    return build_gamma(y_code)


@pytest.fixture(scope="session")
def embedding(gamma):
    return embed_points(gamma)


@pytest.fixture(scope="session")
def root(embedding):
    return find_switching_root(embedding)


@pytest.fixture(scope="session")
def points(embedding, root):
    return assemble_point_set(embedding, root)


@pytest.fixture(scope="session")
def translated(points):
    return translated_set(points)


@pytest.fixture(scope="session")
def m_lattice(translated):
    return build_m(translated)


@pytest.fixture(scope="session")
def dual_lattice_m(m_lattice):
    return prepare_dual(m_lattice)
