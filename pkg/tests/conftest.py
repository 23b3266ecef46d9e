import numpy as np
import pytest

from spinbeam import (
    BeamSpec,
    Configuration,
    Finite,
    FiniteMethod,
    GaussianSpectrum,
    HalfInt,
    NonDiffractive,
)


@pytest.fixture
def spectrum():
    return GaussianSpectrum(1.0)


@pytest.fixture
def nd_radial():
    return BeamSpec(Configuration.RADIAL, HalfInt(1), 1, 2.0, NonDiffractive(1.0))


@pytest.fixture
def nd_azimuthal():
    return BeamSpec(Configuration.AZIMUTHAL, HalfInt(1), 1, 2.0, NonDiffractive(1.2))


@pytest.fixture
def finite_radial(spectrum):
    return BeamSpec(Configuration.RADIAL, HalfInt(1), 1, 100.0,
                    Finite(spectrum, FiniteMethod.PARAXIAL_CLOSED_FORM))


@pytest.fixture
def finite_azimuthal(spectrum):
    return BeamSpec(Configuration.AZIMUTHAL, HalfInt(1), 1, 100.0,
                    Finite(spectrum, FiniteMethod.QUADRATURE))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
