import numpy as np
import pytest

from tenclass import Tensor


def coo(entries, order=3, dim=2):
    return Tensor.from_coo(order, dim, entries)


@pytest.fixture
def almost_e0_tensor():
    # image (x1^2 - x1 x2, -x1 x2); witness (1, 2)
    return coo([((0, 0, 0), 1.0), ((1, 0, 1), -1.0), ((0, 0, 1), -1.0)])


@pytest.fixture
def sbar_tensor():
    # image ((x1 - x2)^2, x2^2 - x1^2); vanishes at (1, 1)
    return coo([((0, 0, 0), 1.0), ((0, 0, 1), -2.0), ((0, 1, 1), 1.0),
                ((1, 0, 0), -1.0), ((1, 1, 1), 1.0)])


@pytest.fixture
def almost_e_tensor():
    # image (x1 (x1 - x2), x2 (x2 - 3 x1)); nonpositive at (1, 1)
    return coo([((0, 0, 0), 1.0), ((0, 0, 1), -1.0), ((1, 0, 1), -3.0),
                ((1, 1, 1), 1.0)])


@pytest.fixture
def balanced_tensor():
    # image (x1^2 - x2^2, x2^2 - x1^2); almost strictly semi-positive and E0
    return coo([((0, 0, 0), 1.0), ((1, 1, 1), 1.0), ((0, 1, 1), -1.0),
                ((1, 0, 0), -1.0)])


@pytest.fixture
def almost_c_tensor():
    # form x1^3 - 2 x1^2 x2 - 3 x1 x2^2 + x2^3; equals -3 at (1, 1)
    return coo([((0, 0, 0), 1.0), ((1, 0, 1), -3.0), ((1, 1, 1), 1.0),
                ((0, 0, 1), -2.0)])


@pytest.fixture
def nonneg_row_tensor():
    # image (x1^2 - 2 x1 x2, 0); row 1 is entirely zero
    return coo([((0, 0, 0), 1.0), ((0, 0, 1), -2.0)])


@pytest.fixture
def dim3_tensor():
    return Tensor.from_coo(3, 3, [
        ((0, 0, 0), 1.0), ((2, 2, 1), 1.0), ((2, 2, 2), 1.0),
        ((0, 0, 1), -2.0), ((2, 2, 0), -2.0), ((1, 1, 2), -1.0),
    ])


@pytest.fixture
def hadamard_pair():
    A = coo([((0, 0, 0), 1.0), ((1, 1, 1), 1.0), ((1, 0, 0), -1.0),
             ((0, 1, 1), -1.0)])
    B = coo([((0, 0, 0), 1.0), ((0, 1, 1), 2.0), ((1, 0, 0), 2.0),
             ((1, 1, 1), 1.0)])
    return A, B


@pytest.fixture
def sum_pair():
    A = coo([((0, 1, 1), -0.5), ((1, 0, 0), -0.5), ((1, 1, 1), 1.0)])
    B = coo([((0, 0, 0), 1.0), ((0, 1, 1), -0.5), ((1, 0, 0), -0.5)])
    return A, B


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
