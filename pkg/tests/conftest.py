import random

import pytest

from agbms import GF, CodeSpec, elliptic_curve, hermitian_curve, klein_curve
from agbms import oracle


@pytest.fixture(scope="session")
def gf16():
    return GF(4, 0b10011)


@pytest.fixture(scope="session")
def gf8():
    return GF(3, 0b1011)


@pytest.fixture(scope="session")
def elliptic(gf16):
    return CodeSpec(elliptic_curve(), gf16, m=8)


@pytest.fixture(scope="session")
def klein(gf8):
    return CodeSpec(klein_curve(), gf8, m=15)


@pytest.fixture(scope="session")
def hermitian(gf16):
    return CodeSpec(hermitian_curve(), gf16, m=24)


# the worked three-error / four-error / five-error scenarios, locations given
# as (x_log, y_log) pairs and values as logs
ELLIPTIC_XY = [(3, 7), (9, 11), (14, 4)]
ELLIPTIC_VALS = [6, 8, 11]
KLEIN_XY = [(0, 1), (1, 0), (2, 0), (3, 3)]
KLEIN_VALS = [1, 2, 5, 4]
HERMITIAN_XY = [(-1, 0), (5, 3), (9, 8), (10, 13), (12, 2)]
HERMITIAN_VALS = [11, 13, 2, 12, 9]


def golden(code, xys, vals):
    locs = [code.locate(xy) for xy in xys]
    received = code.inject_errors(code.zero_word(), locs, vals)
    return locs, vals, received


@pytest.fixture(scope="session")
def elliptic_golden(elliptic):
    return golden(elliptic, ELLIPTIC_XY, ELLIPTIC_VALS)


@pytest.fixture(scope="session")
def klein_golden(klein):
    return golden(klein, KLEIN_XY, KLEIN_VALS)


@pytest.fixture(scope="session")
def hermitian_golden(hermitian):
    return golden(hermitian, HERMITIAN_XY, HERMITIAN_VALS)


def affine_indices(code):
    return [j for j, p in enumerate(code.points) if p.special is None]


def random_pattern(code, weight, rng, affine_only=True):
    pool = affine_indices(code) if affine_only else range(code.n)
    locs = rng.sample(list(pool), weight)
    vals = [rng.randrange(code.fld.q - 1) for _ in range(weight)]
    return locs, vals


def random_generic_pattern(code, weight, rng, affine_only=True):
    while True:
        locs, vals = random_pattern(code, weight, rng, affine_only)
        if oracle.is_generic(code, locs).is_generic:
            return locs, vals
