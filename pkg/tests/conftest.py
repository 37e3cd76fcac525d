import pytest

from satellite_lab.utils import IrreducibleRational


@pytest.fixture(scope="session")
def zero():
    return IrreducibleRational(0, 1)


@pytest.fixture(scope="session")
def half():
    return IrreducibleRational(1, 2)


@pytest.fixture(scope="session")
def third():
    return IrreducibleRational(1, 3)


@pytest.fixture(autouse=True)
def single_thread(monkeypatch):
    monkeypatch.setenv("SATLAB_THREADS", "1")
