import os

import pytest

from gforge.algebra import GradedAlgebra
from gforge.presentation import normalize

import helpers

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def pytest_runtest_logreport(report):
    # one visible verdict line per acceptance criterion
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    verdict = "PASS" if report.passed else "FAIL"
    print(f"\n[{verdict}] {name}")


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def p_pauli():
    return helpers.build_pauli()


@pytest.fixture(scope="session")
def p_swap_raw():
    return helpers.build_swap_raw()


@pytest.fixture(scope="session")
def p_swap(p_swap_raw):
    return normalize(p_swap_raw)


@pytest.fixture(scope="session")
def p_d6():
    return helpers.build_d6()


@pytest.fixture(scope="session")
def p_mat3():
    return helpers.build_mat3()


@pytest.fixture(scope="session")
def p_inner():
    return helpers.build_inner()


@pytest.fixture(scope="session")
def p_related():
    return helpers.build_related()


@pytest.fixture(scope="session")
def corpus(p_pauli, p_swap, p_d6, p_mat3, p_inner):
    return {"pauli": p_pauli, "swap": p_swap, "d6": p_d6,
            "mat3": p_mat3, "inner": p_inner}


@pytest.fixture(scope="session")
def algebras(corpus):
    return {name: GradedAlgebra(p) for name, p in corpus.items()}
