"""
Paulian stabilizers for codeword stabilized codes

Every vector P|s> is a simultaneous eigenvector of the word stabilizer with
eigenvalues comm_signature(P, g), so syndrome spaces are assembled from
signatures: each family member owns the signatures of its codeword images,
and the unused ("spare") signatures pad the spaces.
"""
from dataclasses import replace
from itertools import product
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from config.settings import settings
from layer_1_algebra.linalg import max_abs
from layer_1_algebra.pauli import (
    comm_signature,
    enumerate_paulis,
    format_pauli,
    identity,
    mul,
    product_of,
    signature_product,
    single_site,
    solve_signature,
    to_matrix,
)
from layer_2_codes.cws_code import acts_as_scalar, word_signatures
from models.algebra import PauliOp, SignatureTuple, Subspace, make_signature
from models.code import CwsCode, OrthonormalFamily
from models.synthesis import PaulianGroup, SignaturePlan, SyndromeTable, format_signature, syndrome_order
from utils.errors import (
    CapacityExceeded,
    InsufficientSpares,
    InvalidInput,
    NotCorrectable,
    SignatureCollision,
    TableInvalid,
)
from utils.logger import get_logger

from .capacity import ceil_log2
from .encoder import build_encoder
from .paulian import derive_generators
from .syndrome_table import table_from_spaces

logger = get_logger(__name__)


def candidate_paulis(n: int, d: int, site: Optional[int], target: str) -> list[PauliOp]:
    if site is not None:
        return [identity(n)] + [single_site(n, site, letter) for letter in 'XYZ']
    if target == 'correct':
        limit = (d - 1) // 2
    elif target == 'detect':
        limit = d - 1
    else:
        raise InvalidInput(f"unknown target '{target}'")
    return list(enumerate_paulis(n, limit))


def select_orthonormal_paulis(cws: CwsCode, d: int, site: Optional[int] = None,
                              target: str = 'correct') -> OrthonormalFamily:
    """
    Low-weight Paulis forming an orthonormal family on the code

    Candidates come in enumeration order: identity, then weight 1 by site
    and letter (X < Y < Z), then weight 2 and so on. Two candidates with the
    same commutation signature differ by a word-stabilizer element; when
    that element acts as a scalar on the code they are the same error up to
    phase and the later one is merged into the earlier.

    Args:
        cws: The code
        d: Declared distance
        site: Restrict to {I, X_site, Y_site, Z_site} (0-based qubit)
        target: "correct" for weight <= (d-1)//2, "detect" for weight <= d-1

    Raises:
        CapacityExceeded: 2^ceil(log2 |F|) dim(H_C) > 2^n
        NotCorrectable: two candidates share a signature without acting alike
    """
    if d < 1:
        raise InvalidInput("declared distance must be >= 1")
    g = cws.word_stabilizer
    k = len(cws.word_operators)

    reps: list[PauliOp] = []
    provenance: dict[int, list[int]] = {}
    by_signature: dict[SignatureTuple, int] = {}
    for idx, p in enumerate(candidate_paulis(cws.n, d, site, target)):
        sig = comm_signature(p, g)
        if sig in by_signature:
            j = by_signature[sig]
            if not acts_as_scalar(cws, mul(reps[j], p)):
                raise NotCorrectable(
                    f"{format_pauli(p)} and {format_pauli(reps[j])} overlap on the code without acting alike"
                )
            provenance[j].append(idx)
            logger.info(f"{format_pauli(p)} acts like {format_pauli(reps[j])} on the code; merged (degenerate)")
            continue
        by_signature[sig] = len(reps)
        provenance[len(reps)] = [idx]
        reps.append(p)

    size = len(reps)
    # same floor of one generator as capacity_plan
    m = max(1, ceil_log2(size))
    if 2 ** m * k > 2 ** cws.n:
        raise CapacityExceeded(
            f"{size} errors need 2^{m} x {k} = {2 ** m * k} dimensions, only {2 ** cws.n} available",
            {'family_size': size, 'm': m, 'dim_code': k, 'dim_ambient': 2 ** cws.n},
        )

    logger.info(f"Selected {size} orthonormal Paulis for '{cws.code.name}' (d={d}, target={target})")
    return OrthonormalFamily(
        members=tuple(to_matrix(p) for p in reps),
        names=tuple(format_pauli(p) for p in reps),
        provenance={i: tuple(v) for i, v in provenance.items()},
        paulis=tuple(reps),
    )


def signature_decompose(cws: CwsCode, fam: OrthonormalFamily) -> SignaturePlan:
    """
    Signatures owned by each member and the spare signatures

    Member F owns sig(W_j) * sig(F) for every word operator W_j. Spares are
    the remaining 2^n signatures, sorted with -1 before +1.

    Raises:
        SignatureCollision: two members own a common signature
    """
    if fam.paulis is None:
        raise InvalidInput("signature decomposition needs a Pauli family")
    g = cws.word_stabilizer
    words = word_signatures(cws)
    owners: dict[SignatureTuple, int] = {}
    member_signatures: dict[int, list[SignatureTuple]] = {}
    for idx, p in enumerate(fam.paulis):
        sig_f = comm_signature(p, g)
        sigs = [signature_product(w, sig_f) for w in words]
        for s in sigs:
            if s in owners:
                raise SignatureCollision(
                    f"'{fam.names[idx]}' and '{fam.names[owners[s]]}' share signature {format_signature(s)}",
                    {'signature': list(s), 'members': [owners[s], idx]},
                )
            owners[s] = idx
        member_signatures[idx] = sigs

    spares = sorted(make_signature(s) for s in product((-1, 1), repeat=cws.n) if s not in owners)
    logger.info(f"Signature plan: {len(owners)} owned, {len(spares)} spare")
    return SignaturePlan(member_signatures=member_signatures, spares=spares)


def signature_vector(cws: CwsCode, sig: SignatureTuple) -> np.ndarray:
    """Normalized P|s> for the GF(2)-solved Pauli P with signature ``sig``"""
    p = solve_signature(cws.word_stabilizer, sig)
    if p is None:
        raise InvalidInput(f"no Pauli has signature {format_signature(sig)}")
    v = to_matrix(p) @ cws.base_state
    return v / np.linalg.norm(v)


def fill_syndrome_spaces(cws: CwsCode, fam: OrthonormalFamily, plan: SignaturePlan,
                         syndrome_map: dict[int, SignatureTuple], m: int,
                         mode: str = settings.DEFAULT_MODE,
                         allocation: Optional[dict[SignatureTuple, Sequence[SignatureTuple]]] = None,
                         tol: float = settings.TOLERANCE) -> tuple[SignaturePlan, SyndromeTable]:
    """
    Distribute spares over the syndromes and build the syndrome table

    Each syndrome receives dim(H_C) signatures in minimal mode and 2^(n-m)
    in extended_full mode. Explicit ``allocation`` entries are honored
    first; the rest of the spares are dealt in ascending order to the
    syndromes in binary-counting order.

    Raises:
        InsufficientSpares: the spare pool runs out
    """
    k = len(cws.word_operators)
    if mode == 'minimal':
        target = k
    elif mode == 'extended_full':
        if cws.n < m:
            raise InsufficientSpares(f"{2 ** m} syndromes cannot share {2 ** cws.n} signatures")
        target = 2 ** (cws.n - m)
    else:
        raise InvalidInput(f"unknown table mode '{mode}'")
    if target < k:
        raise InsufficientSpares(f"syndrome spaces of dimension {target} cannot hold {k} codewords")

    owners = {t: idx for idx, t in syndrome_map.items()}
    spare_set = set(plan.spares)
    taken: set[SignatureTuple] = set()
    allotment: dict[SignatureTuple, list[SignatureTuple]] = {}

    for t, sigs in (allocation or {}).items():
        t = make_signature(t)
        picked = [make_signature(s) for s in sigs]
        for s in picked:
            if s not in spare_set or s in taken:
                raise InvalidInput(f"allocated signature {format_signature(s)} is not an unused spare")
            taken.add(s)
        allotment[t] = picked

    pool = [s for s in plan.spares if s not in taken]
    fills: dict[SignatureTuple, list[SignatureTuple]] = {}
    for t in syndrome_order(m):
        own = plan.member_signatures[owners[t]] if t in owners else []
        chosen = allotment.get(t, [])
        need = target - len(own) - len(chosen)
        if need < 0:
            raise InvalidInput(f"syndrome {format_signature(t)} was allocated too many spares")
        if need > len(pool):
            raise InsufficientSpares(
                f"syndrome {format_signature(t)} needs {need} more spares, {len(pool)} left"
            )
        chosen = chosen + pool[:need]
        pool = pool[need:]
        allotment[t] = chosen
        fills[t] = list(own) + chosen

    spaces = {
        t: Subspace(2 ** cws.n, np.column_stack([signature_vector(cws, s) for s in sigs]))
        for t, sigs in fills.items()
    }
    labels = {t: [format_signature(s) for s in allotment[t]] for t in fills}
    table = table_from_spaces(cws.code, fam, syndrome_map, m, spaces, mode, False, labels, tol)

    plan = replace(plan, fills=fills, spare_allotment={t: allotment[t] for t in syndrome_order(m)})
    logger.info(f"Filled {2 ** m} syndrome spaces with {target} signatures each; {len(pool)} spares unused")
    return plan, table


def word_stabilizer_expansion(cws: CwsCode, table: SyndromeTable, plan: SignaturePlan,
                              i: int, tol: float = settings.TOLERANCE) -> Optional[PauliOp]:
    """
    Z_i^S as +-(product of word-stabilizer generators), when it is one

    On a full-domain table Z_i^S = sum over signatures of t_i |s><s|, and
    |s><s| = prod_j (I + s_j g_j) / 2, so the coefficient of prod_{j in S} g_j
    is the Walsh-Hadamard transform of t_i at S divided by 2^n.
    """
    n = cws.n
    values = np.zeros(2 ** n)
    covered = 0
    for t, sigs in plan.fills.items():
        for s in sigs:
            index = sum(1 << (n - 1 - j) for j, c in enumerate(s) if c == -1)
            values[index] = t[i]
            covered += 1
    if covered != 2 ** n:
        return None

    coeffs = scipy.linalg.hadamard(2 ** n) @ values / 2 ** n
    support = np.flatnonzero(np.abs(coeffs) > tol)
    if len(support) != 1 or abs(abs(coeffs[support[0]]) - 1) > tol:
        return None
    mask = int(support[0])
    chosen = [gen for j, gen in enumerate(cws.word_stabilizer) if mask >> (n - 1 - j) & 1]
    op = product_of(chosen, n)
    if coeffs[mask] < 0:
        op = PauliOp(n, op.phase + 2, op.xbits, op.zbits)
    return op


def cws_stabilizers(cws: CwsCode, fam: OrthonormalFamily, table: SyndromeTable,
                    plan: Optional[SignaturePlan] = None,
                    tol: float = settings.TOLERANCE) -> PaulianGroup:
    """
    Paulian stabilizers from a signature-built table

    Generators that are Pauli operators are reported in string form; on a
    full-domain table their word-stabilizer expansion is cross-checked.
    """
    u = build_encoder(table, cws.code, fam, tol)
    group = derive_generators(u, table, cws.code, tol)
    if plan is None or not plan.fills:
        return group

    forms = list(group.pauli_forms) or [None] * table.m
    for i in range(table.m):
        expansion = word_stabilizer_expansion(cws, table, plan, i, tol)
        if expansion is None:
            continue
        if max_abs(to_matrix(expansion) - group.z_gens[i]) > max(tol, 1e-8):
            raise TableInvalid(f"word-stabilizer expansion of Z_{i + 1}^S does not match")
        forms[i] = format_pauli(expansion)
        logger.info(f"Z_{i + 1}^S = {forms[i]} (a word-stabilizer element)")
    return replace(group, pauli_forms=tuple(forms))
