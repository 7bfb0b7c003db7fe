"""
Ancilla couplings for measuring Paulian operators

The ancilla qubit is the last tensor factor with |1> at index 0 (the +1
eigenstate of Z_A) and |-1> at index 1. Outside the domain every coupling
acts as the identity.
"""
import numpy as np

from config.settings import settings
from layer_1_algebra.linalg import is_unitary, max_abs, projector
from layer_1_algebra.pauli import single_site, to_matrix
from layer_3_synthesis.paulian import verify_paulian
from models.algebra import Subspace
from models.measurement import AncillaCircuit
from utils.errors import InvalidInput, NotPaulian, NotUnitary
from utils.logger import get_logger

logger = get_logger(__name__)

X_A = np.array([[0, 1], [1, 0]], dtype=complex)
H_A = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
KET_PLUS = np.array([[1, 1], [1, 1]], dtype=complex) / 2
KET_MINUS = np.array([[1, -1], [-1, 1]], dtype=complex) / 2
ONE = np.array([[1, 0], [0, 0]], dtype=complex)
MINUS_ONE = np.array([[0, 0], [0, 1]], dtype=complex)


def _pieces(p: np.ndarray, domain: Subspace, tol: float):
    """(Pi_D, P on the domain, Pi_complement) after checking P is a Paulian involution"""
    report = verify_paulian(p, domain, tol)
    if report.kind != 'involution' or not report.paulian:
        raise NotPaulian(f"operator is not a Paulian involution on its domain ({report.kind}, dims {report.eig_dims})")
    pi_d = projector(domain)
    p_dom = pi_d @ p @ pi_d
    pi_comp = np.eye(domain.ambient_dim) - pi_d
    return pi_d, p_dom, pi_comp


def gcnot_build(p: np.ndarray, domain: Subspace, tol: float = settings.TOLERANCE) -> AncillaCircuit:
    """
    Generalized CNOT: Pi_- (x) X_A + Pi_+ (x) I_A on the domain, identity elsewhere

    The equivalent form Pi_D (x) |+><+| + P (x) |-><-| is built as well and
    the two must agree.

    Raises:
        NotPaulian: P is not a Paulian involution on the domain
    """
    pi_d, p_dom, pi_comp = _pieces(p, domain, tol)
    plus = (pi_d + p_dom) / 2
    minus = (pi_d - p_dom) / 2
    coupling = np.kron(minus, X_A) + np.kron(plus, np.eye(2)) + np.kron(pi_comp, np.eye(2))

    alternative = np.kron(pi_d, KET_PLUS) + np.kron(p_dom, KET_MINUS) + np.kron(pi_comp, np.eye(2))
    check_tol = max(tol, 1e-8)
    if max_abs(coupling - alternative) > check_tol:
        raise NotPaulian("projector and |+-> forms of the generalized CNOT disagree")
    if not is_unitary(coupling, check_tol):
        raise NotUnitary("generalized CNOT is not unitary")
    return AncillaCircuit(system_dim=domain.ambient_dim, coupling=coupling, readout='Z')


def controlled_stabilizer(p: np.ndarray, domain: Subspace, tol: float = settings.TOLERANCE) -> AncillaCircuit:
    """
    Controlled-P: P (x) |-1><-1| + I (x) |1><1| on the domain

    Conjugating by a Hadamard on the ancilla gives the generalized CNOT, so
    this circuit is read out in the X basis.
    """
    pi_d, p_dom, pi_comp = _pieces(p, domain, tol)
    coupling = np.kron(p_dom, MINUS_ONE) + np.kron(pi_d, ONE) + np.kron(pi_comp, np.eye(2))
    if not is_unitary(coupling, max(tol, 1e-8)):
        raise NotUnitary("controlled stabilizer is not unitary")
    return AncillaCircuit(system_dim=domain.ambient_dim, coupling=coupling, readout='X')


def hadamard_conjugate(circuit: AncillaCircuit) -> np.ndarray:
    """(I (x) H_A) C (I (x) H_A)"""
    h = np.kron(np.eye(circuit.system_dim), H_A)
    return h @ circuit.coupling @ h


def chain_cnot(n: int, j: int) -> AncillaCircuit:
    """Composition of CNOTs from qubits 1..j onto the ancilla: the GCNOT of Z_1 ... Z_j"""
    if not 1 <= j <= n:
        raise InvalidInput(f"chain length {j} outside 1..{n}")
    dim = 2 ** n
    full = Subspace(dim, np.eye(dim, dtype=complex))
    coupling = np.eye(2 * dim, dtype=complex)
    for q in range(j):
        z = to_matrix(single_site(n, q, 'Z'))
        coupling = gcnot_build(z, full).coupling @ coupling
    return AncillaCircuit(system_dim=dim, coupling=coupling, readout='Z')
