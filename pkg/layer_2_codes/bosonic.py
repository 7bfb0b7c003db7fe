"""
Truncated bosonic modes: ladder, number and parity operators, and the
binomial and two-mode photon-loss codes

Multi-mode basis states |n_1, ..., n_M> are ordered with mode 1 as the most
significant digit in base (cutoff + 1).
"""
import re
from functools import reduce

import numpy as np

from config.settings import settings
from models.algebra import Subspace
from models.code import AmbientSpace, FockSpace, QuantumCode
from utils.errors import CutoffTooSmall, IndexOutOfRange, InvalidInput
from utils.logger import get_logger

logger = get_logger(__name__)

_KINDS = ('annihilation', 'creation', 'number', 'parity')
_NAMED = re.compile(r'^(a|adag|n|parity)(?:\[(\d+)\])?$')
_NAME_KINDS = {'a': 'annihilation', 'adag': 'creation', 'n': 'number', 'parity': 'parity'}


def _single_mode(kind: str, cutoff: int) -> np.ndarray:
    levels = cutoff + 1
    if kind == 'annihilation':
        return np.diag(np.sqrt(np.arange(1, levels)), k=1).astype(complex)
    if kind == 'creation':
        return np.diag(np.sqrt(np.arange(1, levels)), k=-1).astype(complex)
    if kind == 'number':
        return np.diag(np.arange(levels)).astype(complex)
    return np.diag([(-1.0) ** j for j in range(levels)]).astype(complex)


def fock_operator(kind: str, space: FockSpace, mode: int = 0) -> np.ndarray:
    """
    Truncated single-mode operator embedded in the multi-mode space

    Args:
        kind: annihilation, creation, number or parity
        space: Fock ambient descriptor
        mode: 0-based mode index

    Returns:
        Dense matrix on the (cutoff + 1)^modes dimensional space
    """
    if space.kind != 'fock':
        raise InvalidInput("fock_operator needs a Fock ambient space")
    if kind not in _KINDS:
        raise InvalidInput(f"unknown Fock operator kind '{kind}'")
    if not 0 <= mode < space.modes:
        raise IndexOutOfRange(f"mode {mode} outside 0..{space.modes - 1}")
    eye = np.eye(space.cutoff + 1, dtype=complex)
    factors = [_single_mode(kind, space.cutoff) if j == mode else eye for j in range(space.modes)]
    return reduce(np.kron, factors)


def named_operator(name: str, space: FockSpace) -> np.ndarray:
    """
    Resolve code-file operator names: I, a, a[2], adag[1], n[1], parity[2]

    Mode indices in names are 1-based; a bare name means mode 1.
    """
    name = name.strip()
    if name == 'I':
        return np.eye(space.dim, dtype=complex)
    match = _NAMED.match(name)
    if not match:
        raise InvalidInput(f"unknown bosonic operator name '{name}'")
    kind = _NAME_KINDS[match.group(1)]
    mode = int(match.group(2) or 1) - 1
    return fock_operator(kind, space, mode)


def parity_observables(space: FockSpace) -> list[np.ndarray]:
    """exp(i pi N_j) for every mode"""
    return [fock_operator('parity', space, j) for j in range(space.modes)]


def fock_state(space: FockSpace, occupations: tuple[int, ...]) -> np.ndarray:
    """Basis vector |n_1, ..., n_M>"""
    if len(occupations) != space.modes:
        raise InvalidInput("one occupation number per mode is required")
    index = 0
    for n in occupations:
        if not 0 <= n <= space.cutoff:
            raise CutoffTooSmall(f"occupation {n} exceeds the cutoff {space.cutoff}")
        index = index * (space.cutoff + 1) + n
    v = np.zeros(space.dim, dtype=complex)
    v[index] = 1.0
    return v


def _require(space: FockSpace, modes: int):
    if space.kind != 'fock' or space.modes != modes:
        raise InvalidInput(f"expected a {modes}-mode Fock space")
    if space.cutoff < 4:
        raise CutoffTooSmall(f"cutoff {space.cutoff} cannot hold the 4-photon codewords")


def binomial_code(space: FockSpace = None) -> QuantumCode:
    """
    Single-mode binomial code {|2>, (|4> + |0>)/sqrt(2)} protecting against one photon loss

    Declared errors are {I, a}.
    """
    space = space or AmbientSpace.for_fock(1, settings.FOCK_CUTOFF)
    _require(space, 1)
    zero = fock_state(space, (2,))
    one = (fock_state(space, (4,)) + fock_state(space, (0,))) / np.sqrt(2)
    frame = Subspace(space.dim, np.column_stack([zero, one]))
    errors = (np.eye(space.dim, dtype=complex), fock_operator('annihilation', space, 0))
    logger.info(f"Binomial code on Fock cutoff {space.cutoff}")
    return QuantumCode(space, frame, errors, ('I', 'a'), name='binomial')


def two_mode_code(space: FockSpace = None) -> QuantumCode:
    """
    Two-mode code {|2,2>, (|4,0> + |0,4>)/sqrt(2)} with errors {I, a[1], a[2]}

    Its natural stabilizers are the per-mode parities.
    """
    space = space or AmbientSpace.for_fock(2, settings.FOCK_CUTOFF)
    _require(space, 2)
    zero = fock_state(space, (2, 2))
    one = (fock_state(space, (4, 0)) + fock_state(space, (0, 4))) / np.sqrt(2)
    frame = Subspace(space.dim, np.column_stack([zero, one]))
    errors = (
        np.eye(space.dim, dtype=complex),
        fock_operator('annihilation', space, 0),
        fock_operator('annihilation', space, 1),
    )
    logger.info(f"Two-mode code on Fock cutoff {space.cutoff}")
    return QuantumCode(space, frame, errors, ('I', 'a[1]', 'a[2]'), name='two_mode')


def two_mode_syndromes() -> dict[int, tuple[int, ...]]:
    """Family index -> syndrome matching the per-mode parities: I, a[1], a[2]"""
    return {0: (1, 1), 1: (-1, 1), 2: (1, -1)}
