"""Shared example algebras: the ground field, A2, A3 (linear, no relations) and N3 (A3 with ab = 0)."""

from pathlib import Path

import pytest

from taucluster.algebra import load_algebra_json, path_algebra

ALGEBRA_DIR = Path(__file__).resolve().parent.parent / "algebras"


def field():
    return path_algebra([1], [])


def a2():
    return path_algebra([1, 2], [("a", 1, 2)])


def a3():
    return path_algebra([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])


def n3():
    return path_algebra([1, 2, 3], [("a", 1, 2), ("b", 2, 3)], [("a", "b")])


EXAMPLES = {"A2": a2, "A3": a3, "N3": n3}


@pytest.fixture(scope="session")
def A2():
    return a2()


@pytest.fixture(scope="session")
def A3():
    return a3()


@pytest.fixture(scope="session")
def N3():
    return n3()


@pytest.fixture(scope="session")
def K():
    return field()


@pytest.fixture(scope="session")
def algebra_file():
    def pick(name):
        return ALGEBRA_DIR / f"{name}.json"

    return pick


def load_file(name):
    return load_algebra_json((ALGEBRA_DIR / f"{name}.json").read_text())
