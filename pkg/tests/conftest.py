from __future__ import annotations

import pytest

from neckdiag.diagrams import CanonicalMode
from neckdiag.enumeration import iter_valid_words, valid_classes_cached


@pytest.fixture(scope="session")
def valid6():
    return list(iter_valid_words(6))


@pytest.fixture(scope="session")
def sym6():
    return list(valid_classes_cached(6, CanonicalMode.SYMMETRY))


@pytest.fixture(scope="session")
def oriented6():
    return list(valid_classes_cached(6, CanonicalMode.ORIENTED))


@pytest.fixture(scope="session")
def maximal6(sym6):
    return [w for w in sym6 if w.count("C") + w.count("S") == 4]


@pytest.fixture(scope="session")
def raw12():
    return list(iter_valid_words(12))


@pytest.fixture(scope="session")
def sym12():
    return list(valid_classes_cached(12, CanonicalMode.SYMMETRY))


@pytest.fixture(scope="session")
def maximal12(sym12):
    return [w for w in sym12 if w.count("C") + w.count("S") == 10]
