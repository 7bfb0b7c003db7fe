"""
Codeword stabilized codes

A word stabilizer g (n independent commuting Paulis, -I not generated)
fixes a unique state |s>; the codewords are W_j|s> for the word operators
W_j. Every Pauli maps |s> into a one-dimensional simultaneous eigenspace of
g, labelled by its commutation signature with g.
"""
from typing import Optional, Sequence

import numpy as np

from config.settings import settings
from layer_1_algebra import gf2
from layer_1_algebra.linalg import dagger, max_abs
from layer_1_algebra.pauli import (
    comm_signature,
    commutes,
    format_pauli,
    generator_matrix,
    is_maximal_abelian,
    parse_pauli,
    phaseless_weights,
    product_of,
    stabilized_state,
    to_matrix,
)
from models.algebra import PauliOp, SignatureTuple, Subspace
from models.code import AmbientSpace, CwsCode, QuantumCode
from utils.errors import InvalidInput, LengthMismatch, NonOrthogonalCodewords, NotMaximalAbelian
from utils.logger import get_logger

logger = get_logger(__name__)


def build_cws_code(g: Sequence[PauliOp], words: Sequence[PauliOp], name: str = "cws",
                   distance: Optional[int] = None, tol: float = settings.TOLERANCE) -> CwsCode:
    """
    Construct the code spanned by W_j|s>

    Args:
        g: Word stabilizer generators
        words: Word operators, in codeword order
        name: Code name used in reports
        distance: Declared distance (metadata only)

    Raises:
        NotMaximalAbelian: g is not a maximal independent abelian generating set
        NonOrthogonalCodewords: the codeword Gram matrix is not the identity
    """
    g = tuple(g)
    words = tuple(words)
    if not words:
        raise InvalidInput("at least one word operator is required")
    n = g[0].n if g else 0
    if any(p.n != n for p in g + words):
        raise LengthMismatch("word stabilizer and word operators act on different qubit counts")
    if not is_maximal_abelian(g):
        raise NotMaximalAbelian("word stabilizer is not maximal independent abelian")

    s = stabilized_state(g)
    codewords = np.column_stack([to_matrix(w) @ s for w in words])
    gram = dagger(codewords) @ codewords
    deviation = max_abs(gram - np.eye(len(words)))
    if deviation > tol:
        raise NonOrthogonalCodewords(
            f"codeword Gram matrix deviates from the identity by {deviation:.3g}",
            {'word_signatures': [list(comm_signature(w, g)) for w in words]},
        )

    code = QuantumCode(
        ambient=AmbientSpace.for_qubits(n),
        code_frame=Subspace(2 ** n, codewords),
        declared_errors=(),
        name=name,
        distance=distance,
    )
    logger.info(f"CWS code '{name}': n={n}, dim={len(words)}")
    return CwsCode(n=n, word_stabilizer=g, word_operators=words, base_state=s, code=code)


def cws_from_strings(g: Sequence[str], words: Sequence[str], name: str = "cws",
                     distance: Optional[int] = None) -> CwsCode:
    return build_cws_code([parse_pauli(t) for t in g], [parse_pauli(t) for t in words], name, distance)


def word_signatures(cws: CwsCode) -> list[SignatureTuple]:
    """Signature of each codeword W_j|s> under the word stabilizer"""
    return [comm_signature(w, cws.word_stabilizer) for w in cws.word_operators]


def nondegeneracy_check(cws: CwsCode, d: int) -> bool:
    """
    True iff every non-identity word-stabilizer element has weight >= d

    Enumerates the 2^n - 1 GF(2) combinations of g and stops at the first
    element lighter than d.
    """
    if d < 1:
        raise InvalidInput("declared distance must be >= 1")
    for w in phaseless_weights(cws.word_stabilizer):
        if w < d:
            logger.info(f"Word stabilizer of '{cws.code.name}' has an element of weight {w} < {d}")
            return False
    return True


def word_stabilizer_factor(cws: CwsCode, p: PauliOp) -> Optional[complex]:
    """
    The scalar c with P = c * S for some product S of generators, or None

    P lies in the word stabilizer up to phase exactly when it commutes with
    every generator.
    """
    g = cws.word_stabilizer
    if not all(commutes(p, gen) for gen in g):
        return None
    coeffs = gf2.solve(generator_matrix(g).T, p.symplectic)
    if coeffs is None:
        return None
    s = product_of([gen for gen, bit in zip(g, coeffs) if bit], cws.n)
    return 1j ** ((p.phase - s.phase) % 4)


def stabilizes_code(cws: CwsCode, p: PauliOp) -> bool:
    """
    True iff P acts as the identity on the code space

    Either P is in the word stabilizer and commutes with every word operator,
    or P is in minus the word stabilizer and anticommutes with all of them.
    """
    factor = word_stabilizer_factor(cws, p)
    if factor is None:
        return False
    relations = {commutes(p, w) for w in cws.word_operators}
    if len(relations) != 1:
        return False
    sign = 1 if relations.pop() else -1
    return abs(factor * sign - 1) < 1e-12


def acts_as_scalar(cws: CwsCode, p: PauliOp) -> bool:
    """P restricted to the code space is a multiple of the identity"""
    if word_stabilizer_factor(cws, p) is None:
        return False
    return len({commutes(p, w) for w in cws.word_operators}) == 1


def describe(cws: CwsCode) -> dict:
    return {
        'n': cws.n,
        'dim': len(cws.word_operators),
        'word_stabilizer': [format_pauli(gen) for gen in cws.word_stabilizer],
        'word_operators': [format_pauli(w) for w in cws.word_operators],
        'word_signatures': [list(sig) for sig in word_signatures(cws)],
    }
