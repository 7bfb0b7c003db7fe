"""
Symplectic n-qubit Pauli algebra

Pauli operators are (phase, x, z) triples with operator i^phase X^x Z^z.
Products, commutation and subgroup diagnostics are exact integer/GF(2)
computations; dense matrices are only built on request (to_matrix,
stabilized_state).
"""
from functools import reduce
from itertools import combinations, product
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from config.settings import settings
from layer_1_algebra import gf2
from models.algebra import PauliOp, SignatureTuple, make_signature
from utils.errors import (
    InvalidInput,
    LengthMismatch,
    NotMaximalAbelian,
    ParseError,
    ZeroProjection,
)
from utils.logger import get_logger

logger = get_logger(__name__)

_PREFIXES = {'': 0, '+': 0, '+i': 1, 'i': 1, '-': 2, '-i': 3}
_PHASE_TEXT = {0: '', 1: '+i', 2: '-', 3: '-i'}
_LETTER_BITS = {'I': (0, 0), 'X': (1, 0), 'Y': (1, 1), 'Z': (0, 1)}

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I2 = np.eye(2, dtype=complex)


def parse_pauli(text: str) -> PauliOp:
    """
    Parse a Pauli string such as "ZXZII", "-iY" or "+XZ"

    The optional prefix is one of +, -, +i, -i (also "i"), followed by one or
    more letters from {I, X, Y, Z}. The unicode minus sign is accepted.

    Raises:
        ParseError: empty body or any other character
    """
    if not isinstance(text, str):
        raise ParseError(f"Pauli string expected, got {type(text).__name__}")
    s = text.strip().replace('−', '-')
    split = 0
    while split < len(s) and s[split] in '+-i':
        split += 1
    prefix, body = s[:split], s[split:]
    if prefix not in _PREFIXES:
        raise ParseError(f"invalid phase prefix '{prefix}' in '{text}'")
    if not body:
        raise ParseError(f"no Pauli letters in '{text}'")

    phase = _PREFIXES[prefix]
    xbits, zbits = [], []
    for pos, letter in enumerate(body):
        if letter not in _LETTER_BITS:
            raise ParseError(f"invalid character '{letter}' at position {pos + split} in '{text}'")
        x, z = _LETTER_BITS[letter]
        xbits.append(x)
        zbits.append(z)
        if letter == 'Y':
            phase += 1
    return PauliOp(n=len(body), phase=phase, xbits=tuple(xbits), zbits=tuple(zbits))


def format_pauli(p: PauliOp) -> str:
    """Inverse of parse_pauli"""
    letters = []
    y_count = 0
    for x, z in zip(p.xbits, p.zbits):
        if x and z:
            letters.append('Y')
            y_count += 1
        elif x:
            letters.append('X')
        elif z:
            letters.append('Z')
        else:
            letters.append('I')
    return _PHASE_TEXT[(p.phase - y_count) % 4] + ''.join(letters)


def identity(n: int) -> PauliOp:
    return PauliOp(n, 0, (0,) * n, (0,) * n)


def single_site(n: int, site: int, letter: str) -> PauliOp:
    """Pauli with ``letter`` on qubit ``site`` (0-based) and I elsewhere"""
    if not 0 <= site < n:
        raise InvalidInput(f"site {site} outside 0..{n - 1}")
    body = ['I'] * n
    body[site] = letter
    return parse_pauli(''.join(body))


def weight(p: PauliOp) -> int:
    return p.weight


def _check_lengths(*ops: PauliOp):
    sizes = {op.n for op in ops}
    if len(sizes) > 1:
        raise LengthMismatch(f"Pauli operators act on different qubit counts {sorted(sizes)}")


def mul(p: PauliOp, q: PauliOp) -> PauliOp:
    """Group product p*q with exact phase: Z^a X^b = (-1)^(a.b) X^b Z^a"""
    _check_lengths(p, q)
    swap = sum(zp & xq for zp, xq in zip(p.zbits, q.xbits))
    return PauliOp(
        n=p.n,
        phase=p.phase + q.phase + 2 * swap,
        xbits=tuple(a ^ b for a, b in zip(p.xbits, q.xbits)),
        zbits=tuple(a ^ b for a, b in zip(p.zbits, q.zbits)),
    )


def product_of(ops: Sequence[PauliOp], n: Optional[int] = None) -> PauliOp:
    if not ops:
        if n is None:
            raise InvalidInput("product of an empty list needs n")
        return identity(n)
    return reduce(mul, ops)


def symplectic_form(p: PauliOp, q: PauliOp) -> int:
    """0 if p and q commute, 1 if they anticommute"""
    _check_lengths(p, q)
    return (sum(a & b for a, b in zip(p.xbits, q.zbits)) + sum(a & b for a, b in zip(p.zbits, q.xbits))) % 2


def commutes(p: PauliOp, q: PauliOp) -> bool:
    return symplectic_form(p, q) == 0


def is_hermitian(p: PauliOp) -> bool:
    """P^2 = i^(2 phase) (-1)^(x.z) I, so P is Hermitian iff phase + x.z is even"""
    xz = sum(x & z for x, z in zip(p.xbits, p.zbits))
    return (p.phase + xz) % 2 == 0


def comm_signature(p: PauliOp, gens: Sequence[PauliOp]) -> SignatureTuple:
    """+1 where p commutes with gens[j], -1 where it anticommutes"""
    _check_lengths(p, *gens)
    return make_signature(1 - 2 * symplectic_form(p, g) for g in gens)


def signature_product(a: SignatureTuple, b: SignatureTuple) -> SignatureTuple:
    """Componentwise product of two +-1 tuples"""
    if len(a) != len(b):
        raise LengthMismatch(f"signatures have lengths {len(a)} and {len(b)}")
    return make_signature(x * y for x, y in zip(a, b))


def to_matrix(p: PauliOp) -> np.ndarray:
    """Dense 2^n x 2^n realization, qubit 1 as the most significant tensor factor"""
    factors = []
    for x, z in zip(p.xbits, p.zbits):
        factors.append((_X if x else _I2) @ (_Z if z else _I2))
    mat = reduce(np.kron, factors, np.eye(1, dtype=complex))
    return (1j ** p.phase) * mat


def generator_matrix(gens: Sequence[PauliOp]) -> np.ndarray:
    """Rows are the (x | z) vectors of the generators"""
    if not gens:
        return np.zeros((0, 0), dtype=np.uint8)
    return np.vstack([g.symplectic for g in gens])


def subgroup_analysis(gens: Sequence[PauliOp]) -> dict:
    """
    Diagnose the subgroup generated by ``gens``

    -I is in the group when two generators anticommute (their commutator is
    -I), when a generator squares to -I, or when a GF(2) relation among the
    commuting involutory generators multiplies out to -I. The group is
    linearly independent exactly when -I is absent.

    Returns:
        dict with contains_minus_I, linearly_independent, abelian,
        phaseless_order and generator_rank
    """
    if not gens:
        return {
            'contains_minus_I': False,
            'linearly_independent': True,
            'abelian': True,
            'phaseless_order': 1,
            'generator_rank': 0,
        }
    _check_lengths(*gens)
    n = gens[0].n
    abelian = all(commutes(a, b) for a, b in combinations(gens, 2))
    hermitian = all(is_hermitian(g) for g in gens)
    rows = generator_matrix(gens)
    r = gf2.rank(rows)

    contains_minus = not (abelian and hermitian)
    if not contains_minus:
        for relation in gf2.left_kernel(rows):
            chosen = [g for g, bit in zip(gens, relation) if bit]
            scalar = product_of(chosen, n)
            if scalar.phase != 0:
                contains_minus = True
                break

    return {
        'contains_minus_I': contains_minus,
        'linearly_independent': not contains_minus,
        'abelian': abelian,
        'phaseless_order': 2 ** r,
        'generator_rank': r,
    }


def is_maximal_abelian(gens: Sequence[PauliOp]) -> bool:
    """n independent commuting Hermitian generators with -I not generated"""
    if not gens:
        return False
    report = subgroup_analysis(gens)
    return (report['abelian'] and report['linearly_independent']
            and report['generator_rank'] == len(gens) == gens[0].n)


def stabilized_state(gens: Sequence[PauliOp]) -> np.ndarray:
    """
    Unique +1 simultaneous eigenvector of a maximal independent abelian group

    Applies prod_j (I + g_j)/2 to standard basis vectors in ascending order
    until the image norm reaches settings.SEED_SEARCH_NORM, normalizes, and
    makes the first nonzero amplitude real positive.

    Raises:
        NotMaximalAbelian: generators anticommute, are dependent, or generate -I
        ZeroProjection: no basis seed survives the projection
    """
    if not is_maximal_abelian(gens):
        raise NotMaximalAbelian("generators do not form a maximal independent abelian group")
    n = gens[0].n
    if n > settings.MAX_DENSE_QUBITS:
        raise InvalidInput(f"{n} qubits exceeds the dense limit of {settings.MAX_DENSE_QUBITS}")
    dim = 2 ** n
    proj = np.eye(dim, dtype=complex)
    for g in gens:
        proj = proj @ ((np.eye(dim) + to_matrix(g)) / 2)

    for j in range(dim):
        v = proj[:, j]
        norm = np.linalg.norm(v)
        if norm >= settings.SEED_SEARCH_NORM:
            v = v / norm
            lead = v[np.flatnonzero(np.abs(v) > settings.TOLERANCE)[0]]
            return v * (abs(lead) / lead)
    raise ZeroProjection("all standard basis seeds vanish under the stabilizer projector")


def enumerate_paulis(n: int, max_weight: int, min_weight: int = 0) -> Iterator[PauliOp]:
    """
    Hermitian Paulis of weight min_weight..max_weight

    Order: by weight, then by support (lexicographic site tuples), then by
    letters with X < Y < Z on each site.
    """
    for w in range(min_weight, max_weight + 1):
        for support in combinations(range(n), w):
            for letters in product('XYZ', repeat=w):
                body = ['I'] * n
                for site, letter in zip(support, letters):
                    body[site] = letter
                yield parse_pauli(''.join(body))


def count_low_weight(n: int, max_weight: int) -> int:
    """sum_{j <= max_weight} C(n, j) 3^j"""
    from math import comb
    return sum(comb(n, j) * 3 ** j for j in range(max_weight + 1))


def solve_signature(gens: Sequence[PauliOp], signature: SignatureTuple) -> Optional[PauliOp]:
    """
    A Pauli P with comm_signature(P, gens) == signature

    Solves (z_g | x_g) @ (x_P | z_P) = bits over GF(2) with free variables zero,
    so the representative is deterministic.
    """
    if len(signature) != len(gens):
        raise LengthMismatch("signature and generator list differ in length")
    n = gens[0].n
    rows = np.vstack([np.array(g.zbits + g.xbits, dtype=np.uint8) for g in gens])
    bits = np.array([(1 - s) // 2 for s in signature], dtype=np.uint8)
    sol = gf2.solve(rows, bits)
    if sol is None:
        return None
    return PauliOp(n, 0, tuple(int(b) for b in sol[:n]), tuple(int(b) for b in sol[n:]))


def group_elements(gens: Sequence[PauliOp]) -> Iterator[tuple[int, PauliOp]]:
    """Yield (mask, element) for every non-identity product of a generator subset"""
    n = gens[0].n
    rows = generator_matrix(gens)
    for mask, _ in gf2.span_elements(rows):
        chosen = [g for j, g in enumerate(gens) if mask >> j & 1]
        yield mask, product_of(chosen, n)


def phaseless_weights(gens: Sequence[PauliOp]) -> Iterable[int]:
    """Weights of every non-identity GF(2) combination of the generators"""
    n = gens[0].n
    rows = generator_matrix(gens)
    for _, vec in gf2.span_elements(rows):
        yield int(np.count_nonzero(vec[:n] | vec[n:]))
