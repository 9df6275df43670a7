import math

import pytest

import fermi_landauer as fl

# Shared default scenario: unit cavity, unit mass, detector at x0=0.3
# locked on the first mode.  k_1 = 2.028757838110434 was frozen from an
# independent bisection run to 12 digits before the solver was written.
K1_REFERENCE = 2.028757838110434


@pytest.fixture(scope="session")
def cavity():
    return fl.CavityConfig(L=1.0, m=1.0)


@pytest.fixture(scope="session")
def modes(cavity):
    return fl.solve_modes(cavity, 8)


@pytest.fixture(scope="session")
def omega_res(modes):
    return modes[0].omega


@pytest.fixture(scope="session")
def detector_resonant(cavity, omega_res):
    wl = fl.Worldline.static(0.3, cavity)
    return fl.DetectorConfig(omega=omega_res, lam=0.01, T=20.0, worldline=wl, p=0.6)


@pytest.fixture(scope="session")
def beta_ln2_temperature(omega_res):
    # field temperature with beta * omega_B = ln 2
    return omega_res / math.log(2.0)
