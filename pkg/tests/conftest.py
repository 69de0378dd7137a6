import pytest

from lieverify.geometry import make_split
from lieverify.model import builtin_erratum_model
from lieverify.reconstruction import make_context


@pytest.fixture(scope="session")
def model():
    return builtin_erratum_model()


@pytest.fixture(scope="session")
def split(model):
    return make_split(model.g, model.l1, model.m_basis)


@pytest.fixture(scope="session")
def ctx(split):
    return make_context(split)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
