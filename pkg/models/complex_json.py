"""
JSON encoding of complex scalars, vectors and matrices

Complex numbers are written as [re, im] pairs of Python floats; json writes
floats with repr precision, so decoding reproduces the array bit for bit.
"""
from typing import Any

import numpy as np


def encode_complex(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def decode_complex(pair: Any) -> complex:
    if isinstance(pair, (int, float)):
        return complex(pair)
    re, im = pair
    return complex(float(re), float(im))


def encode_vector(v: np.ndarray) -> list[list[float]]:
    return [encode_complex(z) for z in np.asarray(v).ravel()]


def decode_vector(data: list) -> np.ndarray:
    return np.array([decode_complex(p) for p in data], dtype=complex)


def encode_matrix(a: np.ndarray) -> list[list[list[float]]]:
    a = np.asarray(a)
    return [[encode_complex(z) for z in row] for row in a]


def decode_matrix(data: list) -> np.ndarray:
    if len(data) == 0:
        return np.zeros((0, 0), dtype=complex)
    return np.array([[decode_complex(p) for p in row] for row in data], dtype=complex)
