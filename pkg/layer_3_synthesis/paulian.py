"""
Paulian stabilizer generators and their certification

Z_i^S and X_i^S are computed by conjugating Z_i and X_i on the syndrome
qubits with the encoder, and Z_i^S is cross-checked against the signed sum
of syndrome-space projectors.
"""
from typing import Optional, Sequence

import numpy as np

from config.settings import settings
from layer_1_algebra.linalg import dagger, is_invariant, max_abs, projector, restrict
from layer_1_algebra.pauli import format_pauli, to_matrix
from models.algebra import PauliOp, Subspace
from models.code import QuantumCode
from models.synthesis import PaulianGroup, PaulianReport, SyndromeTable, format_signature
from utils.errors import NotInvariant, NotUnitary, TableInvalid
from utils.logger import get_logger

from .syndrome_table import domain_of, signed_projector

logger = get_logger(__name__)


def verify_paulian(p: np.ndarray, domain: Subspace, tol: float = settings.TOLERANCE,
                   truncation_proxy: bool = False) -> PaulianReport:
    """
    Classify P restricted to ``domain``

    An involution or counterinvolution that is unitary on the domain is
    Paulian when its two eigenspaces have equal dimension, or when only one
    of them is present.

    Raises:
        NotInvariant: P maps part of the domain outside it
    """
    p = np.asarray(p, dtype=complex)
    if not is_invariant(p, domain, max(tol, 1e-8)):
        raise NotInvariant("operator does not preserve its domain")
    r = restrict(p, domain)
    dim = domain.dim
    eye = np.eye(dim)
    unitary = max_abs(dagger(r) @ r - eye) <= tol

    if max_abs(r @ r - eye) <= tol:
        kind, trace = 'involution', np.trace(r).real
    elif max_abs(r @ r + eye) <= tol:
        kind, trace = 'counterinvolution', np.trace(-1j * r).real
    else:
        kind, trace = 'neither', None

    if trace is None:
        dims = (0, 0)
    else:
        plus = int(round((dim + trace) / 2))
        dims = (plus, dim - plus)
    isomorphic = kind != 'neither' and (dims[0] == dims[1] or 0 in dims)
    return PaulianReport(kind, unitary, dims, isomorphic, truncation_proxy)


def pauli_form(mat: np.ndarray, n: int, tol: float = settings.TOLERANCE) -> Optional[PauliOp]:
    """
    The Pauli operator equal to ``mat``, or None

    A Pauli i^p X^x Z^z sends |r> to i^p (-1)^(z.r) |r xor x>, so x and the
    phase are read from column 0 and z from the single-bit columns.
    """
    dim = 2 ** n
    if mat.shape != (dim, dim):
        return None
    col0 = mat[:, 0]
    hits = np.flatnonzero(np.abs(col0) > 0.5)
    if len(hits) != 1:
        return None
    x = int(hits[0])
    c = col0[x]
    phase = int(round(np.angle(c) / (np.pi / 2))) % 4
    if abs(c - 1j ** phase) > tol:
        return None

    z = 0
    for q in range(n):
        bit = 1 << q
        value = mat[bit ^ x, bit]
        if abs(value + c) <= tol:
            z |= bit
        elif abs(value - c) > tol:
            return None

    xbits = tuple((x >> (n - 1 - q)) & 1 for q in range(n))
    zbits = tuple((z >> (n - 1 - q)) & 1 for q in range(n))
    candidate = PauliOp(n, phase, xbits, zbits)
    if max_abs(to_matrix(candidate) - mat) > tol:
        return None
    return candidate


def check_group_relations(z_gens: Sequence[np.ndarray], x_gens: Sequence[np.ndarray],
                          domain: Subspace, code: Optional[QuantumCode] = None,
                          tol: float = settings.TOLERANCE) -> dict:
    """
    Relations of the m-qubit Pauli group on the domain

    Returns:
        dict of booleans (squares, anticommute, commute, stabilizes_code)
        and the largest deviation seen
    """
    dom = domain.frame
    zr = [restrict(z, domain) for z in z_gens]
    xr = [restrict(x, domain) for x in x_gens]
    eye = np.eye(domain.dim)
    worst = {'squares': 0.0, 'anticommute': 0.0, 'commute': 0.0, 'stabilizes_code': 0.0}

    for a in zr + xr:
        worst['squares'] = max(worst['squares'], max_abs(a @ a - eye))
    for i, (z, x) in enumerate(zip(zr, xr)):
        worst['anticommute'] = max(worst['anticommute'], max_abs(x @ z + z @ x))
        for j in range(len(zr)):
            if j == i:
                continue
            for a, b in ((z, zr[j]), (x, xr[j]), (z, xr[j])):
                worst['commute'] = max(worst['commute'], max_abs(a @ b - b @ a))
    if code is not None:
        c = code.code_frame.frame
        for z in z_gens:
            worst['stabilizes_code'] = max(worst['stabilizes_code'], max_abs(z @ c - c))

    check_tol = max(tol, 1e-8)
    relations = {key: bool(value <= check_tol) for key, value in worst.items()}
    relations['max_deviation'] = float(max(worst.values()))
    relations['domain_dim'] = int(dom.shape[1])
    return relations


def derive_generators(u: np.ndarray, table: SyndromeTable, code: Optional[QuantumCode] = None,
                      tol: float = settings.TOLERANCE) -> PaulianGroup:
    """
    Z_i^S = U^dagger Z_i U and X_i^S = U^dagger X_i U

    Both are zero outside the domain H'. Qubit i of the syndrome register is
    bit m-1-i of the row index modulo 2^m.

    Raises:
        NotUnitary: U is not an isometry from H'
        TableInvalid: the conjugated Z_i^S disagrees with the projector sum
    """
    m = table.m
    rows = u.shape[0]
    check_tol = max(tol, 1e-8)
    if max_abs(u @ dagger(u) - np.eye(rows)) > check_tol:
        raise NotUnitary("encoder is not unitary onto its image")

    index = np.arange(rows) % 2 ** m
    base = np.arange(rows) - index
    z_gens, x_gens = [], []
    for i in range(m):
        bit = 1 << (m - 1 - i)
        z = np.where(index & bit, -1.0, 1.0)
        z_gens.append(dagger(u) @ (z[:, None] * u))
        perm = base + (index ^ bit)
        x_gens.append(dagger(u) @ u[perm])

        deviation = max_abs(z_gens[i] - signed_projector(table, i))
        if deviation > check_tol:
            raise TableInvalid(f"Z_{i + 1}^S from the encoder differs from the projector sum by {deviation:.3g}")

    domain = domain_of(table)
    certification = tuple(
        verify_paulian(z, domain, check_tol, table.truncation_proxy) for z in z_gens
    )
    relations = check_group_relations(z_gens, x_gens, domain, code, tol)

    pauli_forms: tuple = ()
    if code is not None and code.ambient.kind == 'qubits':
        forms = [pauli_form(z, code.ambient.qubits, check_tol) for z in z_gens]
        pauli_forms = tuple(format_pauli(f) if f is not None else None for f in forms)

    for i, report in enumerate(certification):
        logger.info(f"Z_{i + 1}^S: {report.kind}, eig dims {report.eig_dims}, "
                    f"paulian={report.paulian}")
    if not all(relations[k] for k in ('squares', 'anticommute', 'commute', 'stabilizes_code')):
        logger.warning(f"Group relations fail on the domain: {relations}")

    return PaulianGroup(
        domain=domain,
        z_gens=tuple(z_gens),
        x_gens=tuple(x_gens),
        encoder=u,
        certification=certification,
        pauli_forms=pauli_forms,
        relations=relations,
    )


def detectable_report(group: PaulianGroup, table: SyndromeTable, code: QuantumCode,
                      paulis: Sequence[PauliOp], tol: float = settings.TOLERANCE) -> list[dict]:
    """
    For each Pauli P, whether P H_C leaves H_(1,...,1)

    P is detected when P H_C has no component in the trivial syndrome space.
    Partial overlap is reported as ``partial``.
    """
    trivial = (1,) * table.m
    trivial_proj = projector(table.entries[trivial].space)
    c = code.code_frame.frame
    rows = []
    for p in paulis:
        image = to_matrix(p) @ c
        inside = np.linalg.norm(trivial_proj @ image) ** 2 / code.k
        if inside <= tol:
            status = 'detected'
        elif inside >= 1 - tol:
            status = 'undetected'
        else:
            status = 'partial'
        rows.append({
            'pauli': format_pauli(p),
            'weight_in_trivial_space': float(inside),
            'status': status,
            'trivial_syndrome': format_signature(trivial),
        })
    return rows
