"""
Syndrome extraction and recovery

A stabilizer is measured by preparing the ancilla in |1>, applying the
generalized CNOT and reading Z_A. Outcomes whose probability is within tol
of 0 or 1 are taken deterministically; the rest are Born-sampled.
"""
from typing import Optional, Union

import numpy as np

from config.settings import settings
from layer_1_algebra.linalg import dagger, projector, unitary_extend
from layer_2_codes.knill_laflamme import family_images
from models.algebra import SignatureTuple, Subspace
from models.code import OrthonormalFamily, QuantumCode
from models.measurement import AncillaCircuit
from models.synthesis import PaulianGroup, SyndromeTable, format_signature
from utils.errors import DimensionMismatch, StateOutsideDomain, UncorrectableSyndrome
from utils.logger import get_logger

from .circuits import gcnot_build

logger = get_logger(__name__)

RngLike = Union[None, int, np.random.Generator]


def _rng(rng: RngLike) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(settings.MC_SEED if rng is None else rng)


def _require_in_domain(state: np.ndarray, domain: Subspace, tol: float) -> np.ndarray:
    state = np.asarray(state, dtype=complex).ravel()
    if state.shape[0] != domain.ambient_dim:
        raise DimensionMismatch(f"state of length {state.shape[0]} in dimension {domain.ambient_dim}")
    outside = state - domain.frame @ (dagger(domain.frame) @ state)
    if np.linalg.norm(outside) > max(tol, 1e-8) * 10:
        raise StateOutsideDomain(f"state has weight {np.linalg.norm(outside):.3g} outside the domain")
    return state


def _choose(p_plus: float, rng: np.random.Generator, tol: float) -> int:
    if p_plus > 1 - tol:
        return 1
    if p_plus < tol:
        return -1
    return 1 if rng.random() < p_plus else -1


def measure_stabilizer(state: np.ndarray, p: np.ndarray, domain: Subspace, rng: RngLike = None,
                       circuit: Optional[AncillaCircuit] = None,
                       tol: float = settings.TOLERANCE) -> tuple[int, np.ndarray]:
    """
    Measure P through an ancilla

    Args:
        state: Unit vector in the domain
        p: Paulian involution
        domain: Domain of P
        rng: Generator or seed used when the outcome is not deterministic
        circuit: Prebuilt generalized CNOT for P

    Returns:
        (outcome, normalized post-measurement system state)

    Raises:
        StateOutsideDomain: the state leaves the domain
    """
    state = _require_in_domain(state, domain, tol)
    circuit = circuit or gcnot_build(p, domain, tol)
    joint = circuit.coupling @ np.kron(state, np.array([1, 0], dtype=complex))
    branches = joint.reshape(-1, 2)
    p_plus = float(np.linalg.norm(branches[:, 0]) ** 2)
    outcome = _choose(p_plus, _rng(rng), tol)
    post = branches[:, 0] if outcome == 1 else branches[:, 1]
    return outcome, post / np.linalg.norm(post)


def direct_measurement(state: np.ndarray, p: np.ndarray, domain: Subspace, rng: RngLike = None,
                       tol: float = settings.TOLERANCE) -> tuple[int, np.ndarray, float]:
    """
    Projective measurement of P without an ancilla

    Returns:
        (outcome, normalized post-measurement state, probability of +1)
    """
    state = _require_in_domain(state, domain, tol)
    pi_d = projector(domain)
    plus = (pi_d + pi_d @ p @ pi_d) / 2
    branch_plus = plus @ state
    p_plus = float(np.linalg.norm(branch_plus) ** 2)
    outcome = _choose(p_plus, _rng(rng), tol)
    post = branch_plus if outcome == 1 else state - branch_plus
    return outcome, post / np.linalg.norm(post), p_plus


def extract_syndrome(state: np.ndarray, group: PaulianGroup, rng: RngLike = None,
                     circuits: Optional[list[AncillaCircuit]] = None,
                     tol: float = settings.TOLERANCE) -> tuple[SignatureTuple, np.ndarray]:
    """Measure every Z_i^S in order; returns the syndrome and the collapsed state"""
    rng = _rng(rng)
    outcomes = []
    for i, z in enumerate(group.z_gens):
        circuit = circuits[i] if circuits else None
        outcome, state = measure_stabilizer(state, z, group.domain, rng, circuit, tol)
        outcomes.append(outcome)
    return tuple(outcomes), state


def recovery_operator(table: SyndromeTable, fam: OrthonormalFamily, code: QuantumCode,
                      syndrome: SignatureTuple, tol: float = settings.TOLERANCE) -> np.ndarray:
    """
    Unitary R_(t) sending the polar isometry of F_(t) C back onto C

    Raises:
        UncorrectableSyndrome: (t) is an excess syndrome
    """
    idx = table.error_for(syndrome)
    if idx is None:
        raise UncorrectableSyndrome(f"syndrome {format_signature(syndrome)} has no assigned error")
    image = family_images(code, fam)[idx]
    c = code.code_frame.frame
    return unitary_extend(c @ dagger(image), Subspace(code.dim, image), max(tol, 1e-8))


def recover(state: np.ndarray, syndrome: SignatureTuple, table: SyndromeTable, fam: OrthonormalFamily,
            code: QuantumCode, tol: float = settings.TOLERANCE) -> np.ndarray:
    r = recovery_operator(table, fam, code, syndrome, tol)
    out = r @ np.asarray(state, dtype=complex).ravel()
    return out / np.linalg.norm(out)


class SyndromeDecoder:
    """Measure-and-recover with circuits and recovery unitaries built once"""

    def __init__(self, code: QuantumCode, fam: OrthonormalFamily, table: SyndromeTable,
                 group: PaulianGroup, tol: float = settings.TOLERANCE):
        self.code = code
        self.fam = fam
        self.table = table
        self.group = group
        self.tol = tol
        self.circuits = [gcnot_build(z, group.domain, tol) for z in group.z_gens]
        self._recoveries = {
            t: recovery_operator(table, fam, code, t, tol) for t in table.syndrome_map.values()
        }

    def extract(self, state: np.ndarray, rng: RngLike = None) -> tuple[SignatureTuple, np.ndarray]:
        return extract_syndrome(state, self.group, rng, self.circuits, self.tol)

    def recover(self, state: np.ndarray, syndrome: SignatureTuple) -> np.ndarray:
        if syndrome not in self._recoveries:
            raise UncorrectableSyndrome(f"syndrome {format_signature(syndrome)} has no assigned error")
        out = self._recoveries[syndrome] @ state
        return out / np.linalg.norm(out)
