import pytest

from schemeforge.geometry import build_hermitian_gq, find_hemisystem
from schemeforge.reconstruct import all_cliques
from schemeforge.relation_scheme import scheme_from_hemisystem
from schemeforge.scheme_params import closed_form_parameters


@pytest.fixture(scope="session")
def params_t3():
    return closed_form_parameters(3)


@pytest.fixture(scope="session")
def hermitian_gq():
    return build_hermitian_gq()


@pytest.fixture(scope="session")
def hemisystem(hermitian_gq):
    return find_hemisystem(hermitian_gq)


@pytest.fixture(scope="session")
def scheme_t3(hermitian_gq, hemisystem):
    return scheme_from_hemisystem(hermitian_gq, hemisystem)


@pytest.fixture(scope="session")
def cliques(scheme_t3):
    return all_cliques(scheme_t3)
