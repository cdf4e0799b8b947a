import numpy as np
import pytest

from qradius import linalg


@pytest.fixture
def a1():
    return np.array([[2.5, -0.5], [-0.5, 2.5]], dtype=complex)


@pytest.fixture
def a2():
    return np.array([[4.0, -3.0], [-3.0, 4.0]], dtype=complex)


@pytest.fixture
def jordan():
    return np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


@pytest.fixture
def matrix_file(tmp_path):
    """Write a matrix to a JSON file and return the path."""

    def write(m, name="matrix.json"):
        path = tmp_path / name
        linalg.save_matrix(m, path)
        return str(path)

    return write
