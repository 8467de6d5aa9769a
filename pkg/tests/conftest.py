import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from maxnumrange import block_diag, build_banded_toeplitz

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


A_2X2 = np.array([[20.0, 9.0], [7.0, 1.0]])
BLOCK_4 = block_diag(np.diag([5.0, 8.0]), np.diag([10.0, 12.0]))
PAIR_BLOCKS = block_diag(A_2X2, np.array([[2.0, 6.0], [5.0, 3.0]]))

D_3 = np.array([[3.0, 2, 4], [5, 7, 8], [2, 3, 6]])
C_3 = np.array([[5.0, 3, 10], [2, 4, 9], [3, 8, 7]])
SIX = block_diag(D_3, C_3)

TOEPLITZ_BANDS = {
    4: (2, 5, 3, 4, 2),
    5: (2, 6, 8, 3, 4, 2, 7),
    6: (1, 9, 8, 2, 4, 7, 6, 3, 5),
}
TOEPLITZ = {n: build_banded_toeplitz(b, n) for n, b in TOEPLITZ_BANDS.items()}

DIAG_TUPLE = np.stack([np.diag([2.0, 4, 5]), np.diag([7.0, 3, 5])])

C_A1 = np.array([[5.0, 2], [7, 4]])
C_A2 = np.array([[3.0, 4], [2, 8]])
C_B2 = np.array([[9.0, 4], [8, 7]])
TRIPLE = np.stack([
    np.array([[2.0, 3, 4], [5, 7, 1], [2, 6, 8]]),
    np.array([[3.0, 4, 5], [0, 5, 2], [1, 7, 2]]),
    np.array([[4.0, 3, 1], [5, 6, 2], [3, 4, 6]]),
])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
