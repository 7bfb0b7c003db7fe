"""
Encoder unitary U: H' -> H_ref (x) (C^2)^m

The reference space is coordinatized by the frame of H_(1,...,1); row
r * 2^m + idx of U is the conjugate of column r of the frame for the
syndrome with index idx. Qubit factor i carries component i of the syndrome,
+1 at index 0, so V_(I) is the identity on H_C.
"""
import numpy as np

from config.settings import settings
from layer_1_algebra.linalg import dagger, max_abs
from layer_2_codes.knill_laflamme import family_images
from models.code import OrthonormalFamily, QuantumCode
from models.synthesis import SyndromeTable, syndrome_index, syndrome_order
from utils.errors import TableInvalid
from utils.logger import get_logger

from .syndrome_table import validate_table

logger = get_logger(__name__)


def build_encoder(table: SyndromeTable, code: QuantumCode, fam: OrthonormalFamily,
                  tol: float = settings.TOLERANCE) -> np.ndarray:
    """
    Assemble U as a (k' 2^m) x N matrix

    Raises:
        TableInvalid: the table fails validation or U is not an isometry on H'
    """
    validate_table(table, code, fam, tol)
    m = table.m
    k_prime = table.space_dim
    u = np.zeros((k_prime * 2 ** m, code.dim), dtype=complex)
    for t in syndrome_order(m):
        u[syndrome_index(t)::2 ** m, :] = dagger(table.entries[t].space.frame)

    check_tol = max(tol, 1e-8)
    if max_abs(u @ dagger(u) - np.eye(u.shape[0])) > check_tol:
        raise TableInvalid("encoder rows are not orthonormal")

    images = family_images(code, fam)
    for idx, t in table.syndrome_map.items():
        got = u @ images[idx]
        expected = np.zeros_like(got)
        target = syndrome_index(t)
        for r in range(code.k):
            expected[r * 2 ** m + target, r] = 1.0
        if max_abs(got - expected) > check_tol:
            raise TableInvalid(f"encoder does not send '{fam.names[idx]}' to its syndrome factor")

    logger.info(f"Encoder built: {u.shape[0]} x {u.shape[1]} (k'={k_prime}, m={m})")
    return u


def encode_state(u: np.ndarray, psi: np.ndarray, m: int) -> np.ndarray:
    """U|psi> reshaped to (k', 2^m): row = reference index, column = syndrome index"""
    out = u @ np.asarray(psi, dtype=complex).ravel()
    return out.reshape(-1, 2 ** m)
