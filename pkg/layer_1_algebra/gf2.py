"""
Linear algebra over GF(2) for symplectic Pauli vectors
"""
from typing import Optional

import galois
import numpy as np

GF2 = galois.GF(2)


def to_gf2(rows) -> galois.FieldArray:
    return GF2(np.asarray(rows, dtype=np.uint8) & 1)


def rank(rows) -> int:
    rows = np.asarray(rows, dtype=np.uint8)
    if rows.size == 0:
        return 0
    return int(np.linalg.matrix_rank(to_gf2(rows)))


def left_kernel(rows) -> np.ndarray:
    """
    Basis of {c : c @ rows = 0} as the rows of a 0/1 array

    Each kernel vector names a subset of rows whose XOR is zero.
    """
    rows = np.asarray(rows, dtype=np.uint8)
    if rows.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    kernel = to_gf2(rows).left_null_space()
    return np.asarray(kernel, dtype=np.uint8).reshape(-1, rows.shape[0])


def solve(a, b) -> Optional[np.ndarray]:
    """
    One solution x of a @ x = b over GF(2), free variables set to zero

    Returns:
        0/1 vector, or None if the system is inconsistent
    """
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8).reshape(-1, 1)
    ncols = a.shape[1]
    reduced = np.asarray(to_gf2(np.hstack([a, b])).row_reduce(ncols=ncols), dtype=np.uint8)

    x = np.zeros(ncols, dtype=np.uint8)
    for row in reduced:
        pivots = np.flatnonzero(row[:ncols])
        if pivots.size == 0:
            if row[ncols]:
                return None
            continue
        x[pivots[0]] = row[ncols]
    return x


def span_elements(rows):
    """
    Yield (mask, vector) for every GF(2) combination of ``rows`` in Gray-code order

    ``mask`` is the integer whose bit j selects rows[j]; the zero combination
    is skipped.
    """
    rows = np.asarray(rows, dtype=np.uint8)
    k = rows.shape[0]
    current = np.zeros(rows.shape[1], dtype=np.uint8)
    mask = 0
    for step in range(1, 2 ** k):
        flip = (step & -step).bit_length() - 1
        current ^= rows[flip]
        mask ^= 1 << flip
        yield mask, current
