"""
Pauli stabilizer codes, the bit-flip repetition code and generalized
repetition codes for an arbitrary normal single-qubit error
"""
from functools import reduce
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from config.settings import settings
from layer_1_algebra.linalg import dagger, involution_eigensplit, max_abs, orthonormal_basis, require_square
from layer_1_algebra.pauli import (
    comm_signature,
    format_pauli,
    identity,
    parse_pauli,
    single_site,
    subgroup_analysis,
    to_matrix,
)
from models.algebra import PauliOp
from models.code import AmbientSpace, BinaryCode, QuantumCode
from utils.errors import InvalidInput, NotMaximalAbelian, NotNormal, ScalarOperator
from utils.logger import get_logger

logger = get_logger(__name__)

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def stabilizer_code(gens: Sequence[PauliOp], errors: Sequence[PauliOp] = (),
                    name: str = "stabilizer", distance: Optional[int] = None) -> QuantumCode:
    """
    Code space of a Pauli stabilizer code, found by projecting basis vectors

    Columns are the images of the standard basis under prod (I + g)/2, kept
    in ascending order when independent.

    Raises:
        NotMaximalAbelian: the generators anticommute or generate -I
    """
    if not gens:
        raise InvalidInput("a stabilizer code needs at least one generator")
    report = subgroup_analysis(gens)
    if not report['abelian'] or report['contains_minus_I']:
        raise NotMaximalAbelian("stabilizer generators must commute and must not generate -I")
    n = gens[0].n
    if n > settings.MAX_DENSE_QUBITS:
        raise InvalidInput(f"{n} qubits exceeds the dense limit of {settings.MAX_DENSE_QUBITS}")

    dim = 2 ** n
    proj = np.eye(dim, dtype=complex)
    for g in gens:
        proj = proj @ ((np.eye(dim) + to_matrix(g)) / 2)
    frame = orthonormal_basis(proj, tol=settings.SEED_SEARCH_NORM)
    expected = 2 ** (n - report['generator_rank'])
    if frame.dim != expected:
        raise InvalidInput(f"code space has dimension {frame.dim}, expected {expected}")

    return QuantumCode(
        ambient=AmbientSpace.for_qubits(n),
        code_frame=frame,
        declared_errors=tuple(to_matrix(e) for e in errors),
        error_names=tuple(format_pauli(e) for e in errors),
        name=name,
        distance=distance,
    )


def repetition_stabilizers(n: int, letter: str = 'Z') -> list[PauliOp]:
    """letter_i letter_{i+1} for i = 1..n-1"""
    gens = []
    for i in range(n - 1):
        body = ['I'] * n
        body[i] = body[i + 1] = letter
        gens.append(parse_pauli(''.join(body)))
    return gens


def repetition_code(n: int = 3) -> QuantumCode:
    """Bit-flip code span{|0...0>, |1...1>} with declared errors X_1 .. X_n"""
    if n < 2:
        raise InvalidInput("a repetition code needs n >= 2")
    errors = [single_site(n, i, 'X') for i in range(n)]
    return stabilizer_code(repetition_stabilizers(n), errors, name=f"repetition{n}", distance=n)


def repetition_binary_code(n: int = 3) -> BinaryCode:
    """[[n, 1]] bit-flip code with X-bar = X...X and Z-bar = Z_1"""
    return BinaryCode(
        n=n,
        k=1,
        stabilizers=tuple(repetition_stabilizers(n)),
        logical_x=(parse_pauli('X' * n),),
        logical_z=(single_site(n, 0, 'Z'),),
        name=f"repetition{n}",
        distance_bound=1,
    )


def _lex_greater(c1: complex, c2: complex, tol: float) -> bool:
    if abs(c1.real - c2.real) > tol:
        return c1.real > c2.real
    return c1.imag > c2.imag


def normal_decompose(a_mat: np.ndarray, tol: float = settings.TOLERANCE
                     ) -> tuple[complex, complex, Optional[np.ndarray]]:
    """
    Write a normal 2x2 matrix as a I + b V with V a self-adjoint Paulian

    The eigenvalues c1 >= c2 (lexicographic on real then imaginary part) give
    a = (c1 + c2)/2, b = (c1 - c2)/2 and V = |v1><v1| - |v2><v2|. A matrix
    with a single eigenvalue returns (c, 0, None).

    Raises:
        NotNormal: ||A^dagger A - A A^dagger|| > tol
    """
    a_mat = require_square(a_mat, 2, "matrix")
    if max_abs(dagger(a_mat) @ a_mat - a_mat @ dagger(a_mat)) > tol:
        raise NotNormal("matrix is not normal")

    t, z = scipy.linalg.schur(a_mat, output='complex')
    c = [complex(t[0, 0]), complex(t[1, 1])]
    if abs(c[0] - c[1]) <= tol:
        return complex(np.trace(a_mat) / 2), 0j, None

    order = [0, 1] if _lex_greater(c[0], c[1], tol) else [1, 0]
    c1, c2 = c[order[0]], c[order[1]]
    v1, v2 = z[:, order[0]], z[:, order[1]]
    v = np.outer(v1, np.conj(v1)) - np.outer(v2, np.conj(v2))
    return (c1 + c2) / 2, (c1 - c2) / 2, v


def _embed(op: np.ndarray, site: int, n: int) -> np.ndarray:
    factors = [op if j == site else np.eye(2, dtype=complex) for j in range(n)]
    return reduce(np.kron, factors)


def generalized_repetition(e: np.ndarray, n: int = 3,
                           tol: float = settings.TOLERANCE) -> tuple[QuantumCode, list[np.ndarray]]:
    """
    Repetition code adapted to a normal single-qubit error E = aI + bV

    With V = U X U^dagger, the code is U^{(x)n} applied to the bit-flip code,
    the declared errors are E on each site, and the stabilizers are
    (U Z U^dagger)_i (U Z U^dagger)_{i+1}.

    Returns:
        (code, stabilizers as dense matrices)

    Raises:
        ScalarOperator: E is a multiple of the identity
        NotNormal: E is not normal
    """
    if n < 2:
        raise InvalidInput("a repetition code needs n >= 2")
    a, b, v = normal_decompose(e, tol)
    if v is None or abs(b) <= tol:
        raise ScalarOperator("error is proportional to the identity; nothing to correct")

    plus, minus = involution_eigensplit(v, tol)
    w = np.hstack([plus.frame, minus.frame])
    u = w @ _HADAMARD
    u_all = reduce(np.kron, [u] * n)

    base = repetition_code(n)
    frame = orthonormal_basis(u_all @ base.code_frame.frame)
    errors = tuple(_embed(e, site, n) for site in range(n))
    code = QuantumCode(base.ambient, frame, errors,
                       tuple(f"E[{site + 1}]" for site in range(n)), name=f"generalized_repetition{n}")

    z_rot = u @ np.diag([1, -1]).astype(complex) @ dagger(u)
    stabilizers = [_embed(z_rot, i, n) @ _embed(z_rot, i + 1, n) for i in range(n - 1)]
    logger.info(f"Generalized repetition code: a={a:.6g}, b={b:.6g}, n={n}")
    return code, stabilizers


def single_site_syndromes(n: int) -> dict[int, tuple[int, ...]]:
    """Family index -> commutation signature of X_site with the repetition stabilizers"""
    gens = repetition_stabilizers(n)
    mapping = {0: comm_signature(identity(n), gens)}
    for site in range(n):
        mapping[site + 1] = comm_signature(single_site(n, site, 'X'), gens)
    return mapping
