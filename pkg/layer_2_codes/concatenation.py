"""
Concatenation of binary codes

The outer code's n_out qubits are grouped into q = n_out / k_in blocks of
k_in logical qubits; each block is encoded by one copy of the inner code.
Outer operators are rewritten by substituting inner logical operators for
the Pauli letters of each block.
"""
from functools import reduce
from itertools import product
from math import ceil
from typing import Optional, Sequence, Union

import numpy as np

from config.settings import settings
from layer_1_algebra.pauli import format_pauli, mul, parse_pauli, product_of, stabilized_state, to_matrix
from models.algebra import PauliOp
from models.code import BinaryCode, Operator
from utils.errors import InvalidInput, NotDivisible
from utils.logger import get_logger

logger = get_logger(__name__)


def distance_bound(d_out: Optional[int], k_in: int, d_in: Optional[int]) -> Optional[int]:
    """Lower bound ceil(d_out / k_in) * d_in on the concatenated distance"""
    if d_out is None or d_in is None:
        return None
    return ceil(d_out / k_in) * d_in


def _block_count(outer: BinaryCode, inner: BinaryCode) -> int:
    if inner.k < 1 or outer.n % inner.k != 0:
        raise NotDivisible(f"outer length {outer.n} is not a multiple of the inner logical count {inner.k}")
    return outer.n // inner.k


def _as_matrix(op: Operator) -> np.ndarray:
    return to_matrix(op) if isinstance(op, PauliOp) else np.asarray(op, dtype=complex)


def _embed_pauli(p: PauliOp, block: int, blocks: int) -> PauliOp:
    """Place an inner-code Pauli on ``block`` of ``blocks`` copies"""
    pad = (0,) * p.n
    xbits = pad * block + p.xbits + pad * (blocks - block - 1)
    zbits = pad * block + p.zbits + pad * (blocks - block - 1)
    return PauliOp(p.n * blocks, p.phase, xbits, zbits)


def _embed_dense(m: np.ndarray, block: int, blocks: int, inner_dim: int) -> np.ndarray:
    left = np.eye(inner_dim ** block, dtype=complex)
    right = np.eye(inner_dim ** (blocks - block - 1), dtype=complex)
    return np.kron(np.kron(left, m), right)


def _embed(op: Operator, block: int, blocks: int, inner: BinaryCode) -> Operator:
    if isinstance(op, PauliOp):
        return _embed_pauli(op, block, blocks)
    return _embed_dense(np.asarray(op, dtype=complex), block, blocks, 2 ** inner.n)


def _letters_to_pauli(term: PauliOp, inner: BinaryCode, blocks: int) -> PauliOp:
    """Substitute X-bar_j / Z-bar_j for the X / Z factors of a Pauli term"""
    result = PauliOp(inner.n * blocks, term.phase, (0,) * (inner.n * blocks), (0,) * (inner.n * blocks))
    for r in range(term.n):
        block, j = divmod(r, inner.k)
        if term.xbits[r]:
            result = mul(result, _embed_pauli(inner.logical_x[j], block, blocks))
        if term.zbits[r]:
            result = mul(result, _embed_pauli(inner.logical_z[j], block, blocks))
    return result


def _letters_to_dense(term: PauliOp, inner: BinaryCode, blocks: int) -> np.ndarray:
    dim = 2 ** (inner.n * blocks)
    result = np.eye(dim, dtype=complex) * (1j ** term.phase)
    for r in range(term.n):
        block, j = divmod(r, inner.k)
        if term.xbits[r]:
            result = result @ _embed_dense(_as_matrix(inner.logical_x[j]), block, blocks, 2 ** inner.n)
        if term.zbits[r]:
            result = result @ _embed_dense(_as_matrix(inner.logical_z[j]), block, blocks, 2 ** inner.n)
    return result


def pauli_expansion(m: np.ndarray, n: int, tol: float = settings.TOLERANCE) -> list[tuple[complex, PauliOp]]:
    """
    Coefficients c_P = tr(P M) / 2^n over Hermitian Pauli letters P

    Terms with |c_P| <= tol are dropped; order follows I < X < Y < Z on each
    qubit, qubit 1 most significant.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (2 ** n, 2 ** n):
        raise InvalidInput(f"operator of shape {m.shape} does not act on {n} qubits")
    terms = []
    for letters in product('IXYZ', repeat=n):
        p = parse_pauli(''.join(letters))
        coeff = np.trace(to_matrix(p) @ m) / 2 ** n
        if abs(coeff) > tol:
            terms.append((complex(coeff), p))
    return terms


def substitute_logicals(op: Operator, inner: BinaryCode, blocks: int) -> Operator:
    """
    Rewrite an operator on the outer qubits in terms of inner logical operators

    X -> X-bar_j, Z -> Z-bar_j and Y -> i X-bar_j Z-bar_j on block r // k_in,
    logical index r % k_in. Pauli input with Pauli inner logicals stays a
    PauliOp; everything else is expanded in the Pauli basis and returned dense.
    """
    inner_pauli = all(isinstance(o, PauliOp) for o in inner.logical_x + inner.logical_z)
    if isinstance(op, PauliOp):
        if op.n != inner.k * blocks:
            raise InvalidInput("outer operator length does not match the block layout")
        if inner_pauli:
            return _letters_to_pauli(op, inner, blocks)
        return _letters_to_dense(op, inner, blocks)

    terms = pauli_expansion(op, inner.k * blocks)
    dim = 2 ** (inner.n * blocks)
    result = np.zeros((dim, dim), dtype=complex)
    for coeff, term in terms:
        if inner_pauli:
            result = result + coeff * to_matrix(_letters_to_pauli(term, inner, blocks))
        else:
            result = result + coeff * _letters_to_dense(term, inner, blocks)
    return result


def concat(outer: BinaryCode, inner: BinaryCode) -> BinaryCode:
    """
    Concatenate ``outer`` over ``inner``

    Returns:
        [[n_in * q, k_out]] code whose generators are the inner stabilizers on
        every block followed by the substituted outer stabilizers

    Raises:
        NotDivisible: n_out is not a multiple of k_in
    """
    blocks = _block_count(outer, inner)
    n_plus = inner.n * blocks
    if not (outer.all_pauli and inner.all_pauli) and n_plus > settings.MAX_DENSE_QUBITS:
        raise InvalidInput(f"dense concatenation on {n_plus} qubits exceeds the dense limit")

    inner_layer = [_embed(s, b, blocks, inner) for b in range(blocks) for s in inner.stabilizers]
    outer_layer = [substitute_logicals(s, inner, blocks) for s in outer.stabilizers]
    logical_x = tuple(substitute_logicals(x, inner, blocks) for x in outer.logical_x)
    logical_z = tuple(substitute_logicals(z, inner, blocks) for z in outer.logical_z)

    bound = distance_bound(outer.distance_bound, inner.k, inner.distance_bound)
    logger.info(f"Concatenated {outer.name} over {inner.name}: n={n_plus}, k={outer.k}, "
                f"{len(inner_layer) + len(outer_layer)} generators, distance >= {bound}")
    return BinaryCode(
        n=n_plus,
        k=outer.k,
        stabilizers=tuple(inner_layer + outer_layer),
        logical_x=logical_x,
        logical_z=logical_z,
        name=f"{outer.name}o{inner.name}",
        distance_bound=bound,
    )


def logical_basis(code: BinaryCode) -> np.ndarray:
    """
    Columns |l> for l = 0 .. 2^k - 1, logical qubit 1 most significant

    |0...0> is the state stabilized by the stabilizers and every Z-bar_j;
    the others are X-bar^l applied to it.
    """
    if not code.all_pauli:
        raise InvalidInput("logical_basis needs Pauli stabilizers and logical operators")
    base = stabilized_state(list(code.stabilizers) + list(code.logical_z))
    columns = []
    for index in range(2 ** code.k):
        bits = [(index >> (code.k - 1 - j)) & 1 for j in range(code.k)]
        chosen = [code.logical_x[j] for j in range(code.k) if bits[j]]
        op = product_of(chosen, code.n)
        columns.append(to_matrix(op) @ base)
    return np.column_stack(columns)


def concat_codewords(outer_state: np.ndarray, inner: BinaryCode,
                     inner_basis: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Encode an outer state (amplitudes on the 2^n_out computational basis) blockwise

    Each group of k_in outer bits selects the matching inner logical basis state.
    """
    outer_state = np.asarray(outer_state, dtype=complex).ravel()
    n_out = int(round(np.log2(outer_state.size)))
    if 2 ** n_out != outer_state.size or n_out % inner.k:
        raise NotDivisible("outer state length must be 2^(q k_in)")
    blocks = n_out // inner.k
    basis = logical_basis(inner) if inner_basis is None else inner_basis

    result = np.zeros((2 ** inner.n) ** blocks, dtype=complex)
    for index in np.flatnonzero(np.abs(outer_state) > 0):
        pieces = []
        for b in range(blocks):
            shift = inner.k * (blocks - b - 1)
            pieces.append(basis[:, (int(index) >> shift) & (2 ** inner.k - 1)])
        result = result + outer_state[index] * reduce(np.kron, pieces)
    return result


def binary_code_from_strings(stabilizers: Sequence[str], logical_x: Sequence[str],
                             logical_z: Sequence[str], name: str = "binary",
                             distance: Optional[int] = None) -> BinaryCode:
    stabs = tuple(parse_pauli(s) for s in stabilizers)
    if not stabs:
        raise InvalidInput("a binary code needs at least one stabilizer")
    return BinaryCode(
        n=stabs[0].n,
        k=len(logical_x),
        stabilizers=stabs,
        logical_x=tuple(parse_pauli(s) for s in logical_x),
        logical_z=tuple(parse_pauli(s) for s in logical_z),
        name=name,
        distance_bound=distance,
    )


def operator_text(op: Union[PauliOp, np.ndarray]) -> Union[str, np.ndarray]:
    """Pauli string when possible, else the dense matrix"""
    return format_pauli(op) if isinstance(op, PauliOp) else op
