import math

import pytest

from qpsc import CylinderGeometry, PotentialSpec, PotentialTerm


@pytest.fixture
def deg():
    """R = L / pi with L = m = hbar = 1."""
    return CylinderGeometry.degenerate(1.0)


@pytest.fixture
def generic():
    return CylinderGeometry(radius=1.0, length=1.0)


@pytest.fixture
def cosine():
    return PotentialSpec.of(PotentialTerm.cosine(1.0))


@pytest.fixture
def constant():
    return PotentialSpec.of(PotentialTerm.constant(1.0))


PI2 = math.pi**2
