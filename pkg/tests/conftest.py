import numpy as np
import pytest

from rhjacobi import (ChebKind, HExpScale, HProduct, HRational, Resolution,
                      SolveContext, WeightSpec, build_green, build_hsystem)

SEED = 20240817


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def spec_u():
    return WeightSpec.single(ChebKind.U)


@pytest.fixture(scope="session")
def spec_two_band():
    return WeightSpec.build([(-1.8, -1.0), (2.0, 3.0)], ["T", "T"])


@pytest.fixture(scope="session")
def spec_symmetric():
    return WeightSpec.build([(-3.0, -2.0), (2.0, 3.0)], ["T", "T"])


def modified_u_h():
    # (exp(x) + 1) / (4 + x^2): positive on [-1, 1], analytic on the 5/4 disk.
    return HProduct((HExpScale(1.0, 1.0), HRational((1.0,), (4.0, 0.0, 1.0))))


@pytest.fixture(scope="session")
def spec_modified_u():
    return WeightSpec.single(ChebKind.U, h=modified_u_h())


@pytest.fixture(scope="session")
def green_two_band(spec_two_band):
    return build_green(spec_two_band)


@pytest.fixture(scope="session")
def hsys_two_band(spec_two_band, green_two_band):
    return build_hsystem(spec_two_band, green_two_band)


@pytest.fixture(scope="session")
def ctx_two_band(spec_two_band, green_two_band, hsys_two_band):
    return SolveContext(spec_two_band, Resolution(16, 10),
                        green=green_two_band, hsys=hsys_two_band)


@pytest.fixture(scope="session")
def ctx_u(spec_u):
    return SolveContext(spec_u, Resolution(16, 10))
