"""
Syndrome map and syndrome spaces

Every family member F gets a syndrome (t); the syndrome space H_(t) holds
F H_C as its first dim(H_C) frame columns, followed by padding directions.
All 2^m spaces are mutually orthogonal and share one dimension k'.
"""
from typing import Optional, Sequence

import numpy as np

from config.settings import settings
from layer_1_algebra.linalg import (
    complement_vectors,
    dagger,
    direct_sum,
    involution_eigensplit,
    is_invariant,
    max_abs,
    projector,
    restrict,
)
from layer_2_codes.knill_laflamme import family_images
from models.algebra import SignatureTuple, Subspace, make_signature
from models.code import OrthonormalFamily, QuantumCode
from models.synthesis import SyndromeEntry, SyndromeTable, format_signature, syndrome_order
from utils.errors import (
    InsufficientSpace,
    InvalidInput,
    NotCorrectable,
    NotDivisible,
    NotInvariant,
    TableInvalid,
    TooManyErrors,
)
from utils.logger import get_logger

logger = get_logger(__name__)


def assign_syndromes(fam: OrthonormalFamily, m: int,
                     preferred: Optional[dict[int, SignatureTuple]] = None) -> dict[int, SignatureTuple]:
    """
    Injective map from family members to syndromes

    The identity gets (1, ..., 1). ``preferred`` entries are honored next;
    the remaining members, in family order, take the unused tuples in
    binary-counting order.

    Raises:
        TooManyErrors: |F| > 2^m
        InvalidInput: a preferred tuple has the wrong length, repeats, or
            moves the identity off (1, ..., 1)
    """
    size = len(fam)
    if size > 2 ** m:
        raise TooManyErrors(f"{size} family members cannot share {2 ** m} syndromes")

    trivial = (1,) * m
    mapping: dict[int, SignatureTuple] = {0: trivial}
    for idx, t in (preferred or {}).items():
        if not 0 <= idx < size:
            raise InvalidInput(f"preferred syndrome for unknown member {idx}")
        t = make_signature(t)
        if len(t) != m:
            raise InvalidInput(f"preferred syndrome {t} does not have length {m}")
        if idx == 0 and t != trivial:
            raise InvalidInput("the identity must carry the trivial syndrome")
        if t in mapping.values() and mapping.get(idx) != t:
            raise InvalidInput(f"syndrome {format_signature(t)} assigned twice")
        mapping[idx] = t

    pool = (t for t in syndrome_order(m) if t != trivial and t not in mapping.values())
    for idx in range(1, size):
        if idx not in mapping:
            mapping[idx] = next(pool)
    return dict(sorted(mapping.items()))


def joint_eigenspaces(observables: Sequence[np.ndarray], ambient_dim: int,
                      tol: float = settings.TOLERANCE) -> dict[SignatureTuple, Subspace]:
    """Simultaneous eigenspaces of commuting self-adjoint involutions, keyed by eigenvalue tuple"""
    spaces: dict[SignatureTuple, Subspace] = {(): Subspace(ambient_dim, np.eye(ambient_dim, dtype=complex))}
    for p in observables:
        refined: dict[SignatureTuple, Subspace] = {}
        for t, s in spaces.items():
            if s.dim == 0:
                refined[t + (1,)] = s
                refined[t + (-1,)] = s
                continue
            if not is_invariant(p, s, tol):
                raise NotInvariant("observables do not commute")
            plus, minus = involution_eigensplit(restrict(p, s), tol)
            refined[t + (1,)] = Subspace(ambient_dim, s.frame @ plus.frame)
            refined[t + (-1,)] = Subspace(ambient_dim, s.frame @ minus.frame)
        spaces = refined
    return spaces


def _contains_columns(space_frame: np.ndarray, vectors: np.ndarray, tol: float) -> bool:
    residual = vectors - space_frame @ (dagger(space_frame) @ vectors)
    return max_abs(residual) <= tol


def _anchored(images: np.ndarray, space: Subspace, tol: float) -> np.ndarray:
    """Re-frame ``space`` so the columns of ``images`` come first"""
    if not _contains_columns(space.frame, images, tol):
        raise TableInvalid("an error image is not contained in its syndrome space")
    extra = complement_vectors(Subspace(space.ambient_dim, images),
                               count=space.dim - images.shape[1], candidates=space)
    if len(extra) != space.dim - images.shape[1]:
        raise TableInvalid("syndrome space could not be re-framed around its error image")
    return np.column_stack([images] + extra) if extra else images


def _finish(code: QuantumCode, fam: OrthonormalFamily, syndrome_map: dict[int, SignatureTuple], m: int,
            frames: dict[SignatureTuple, np.ndarray], mode: str, truncation_proxy: bool,
            labels: Optional[dict[SignatureTuple, list[str]]], tol: float) -> SyndromeTable:
    owners = {t: idx for idx, t in syndrome_map.items()}
    entries = {
        t: SyndromeEntry(Subspace(code.dim, frames[t]), owners.get(t))
        for t in syndrome_order(m)
    }
    default_labels = {t: [fam.names[owners[t]]] for t in owners}
    for t, extra in (labels or {}).items():
        default_labels.setdefault(t, [])
        default_labels[t] = default_labels[t] + list(extra)
    table = SyndromeTable(
        m=m,
        entries=entries,
        syndrome_map=dict(syndrome_map),
        mode=mode,
        code_dim=code.k,
        truncation_proxy=truncation_proxy,
        labels=default_labels,
    )
    validate_table(table, code, fam, tol)
    return table


def build_syndrome_table(code: QuantumCode, fam: OrthonormalFamily,
                         syndrome_map: dict[int, SignatureTuple], m: int,
                         mode: str = settings.DEFAULT_MODE,
                         padding_observables: Optional[Sequence[np.ndarray]] = None,
                         tol: float = settings.TOLERANCE) -> SyndromeTable:
    """
    Assemble H_(t) for all 2^m syndromes

    minimal: assigned spaces are exactly F H_C; excess syndromes get
    dim(H_C)-dimensional spaces from the complement of the error span.
    extended_full: every space is padded to dim(H) / 2^m. Padding vectors
    come from the standard basis in ascending order.

    With ``padding_observables`` (one commuting self-adjoint involution per
    generator, e.g. per-mode parity), padding for (t) is drawn from the joint
    eigenspace with eigenvalues (t), and extended spaces are padded to the
    smallest joint eigenspace dimension.

    Raises:
        InsufficientSpace: the complement is too small
        NotDivisible: extended_full with dim(H) not divisible by 2^m
    """
    if mode not in ('minimal', 'extended_full'):
        raise InvalidInput(f"unknown table mode '{mode}'")
    if padding_observables is not None and len(padding_observables) != m:
        raise InvalidInput(f"need {m} padding observables, got {len(padding_observables)}")

    k = code.k
    n_dim = code.dim
    images = family_images(code, fam)
    owners = {t: idx for idx, t in syndrome_map.items()}
    used = [images[idx] for idx in sorted(syndrome_map)]
    occupied = direct_sum([Subspace(n_dim, img) for img in used])
    gram = dagger(occupied.frame) @ occupied.frame
    if max_abs(gram - np.eye(occupied.dim)) > max(tol, 1e-8):
        raise NotCorrectable("family images of the code space are not orthonormal")

    if padding_observables is not None:
        return _table_with_observables(code, fam, syndrome_map, m, mode, padding_observables,
                                       images, owners, tol)

    if mode == 'extended_full':
        if n_dim % 2 ** m:
            raise NotDivisible(f"dimension {n_dim} is not divisible by 2^{m}")
        target = n_dim // 2 ** m
    else:
        target = k
    if target < k:
        raise InsufficientSpace(f"syndrome spaces of dimension {target} cannot hold the code dimension {k}")

    needs = {t: target - (k if t in owners else 0) for t in syndrome_order(m)}
    total = sum(needs.values())
    padding = complement_vectors(occupied, count=total)
    if len(padding) < total:
        raise InsufficientSpace(f"complement supplies {len(padding)} of {total} padding directions")

    frames = {}
    cursor = 0
    for t in syndrome_order(m):
        cols = [images[owners[t]]] if t in owners else []
        chunk = padding[cursor:cursor + needs[t]]
        cursor += needs[t]
        if chunk:
            cols.append(np.column_stack(chunk))
        frames[t] = np.hstack(cols)

    logger.info(f"Syndrome table ({mode}): {2 ** m} spaces of dimension {target}, "
                f"{2 ** m - len(syndrome_map)} excess")
    return _finish(code, fam, syndrome_map, m, frames, mode, code.ambient.truncated, None, tol)


def _table_with_observables(code, fam, syndrome_map, m, mode, observables, images, owners, tol):
    k = code.k
    sectors = joint_eigenspaces(observables, code.dim, tol)
    for t, idx in owners.items():
        if not _contains_columns(sectors[t].frame, images[idx], tol):
            raise NotCorrectable(
                f"image of '{fam.names[idx]}' is not an eigenspace of the padding observables with {format_signature(t)}"
            )

    sizes = {t: sectors[t].dim for t in syndrome_order(m)}
    target = min(sizes.values()) if mode == 'extended_full' else k
    if target < k:
        raise InsufficientSpace(f"smallest joint eigenspace has dimension {target} < {k}")
    if len(set(sizes.values())) > 1 and mode == 'extended_full':
        leftover = sum(sizes.values()) - target * 2 ** m
        logger.warning(f"Joint eigenspaces have unequal dimensions {sorted(set(sizes.values()))}; "
                       f"{leftover} directions stay outside the domain (truncation proxy)")

    frames = {}
    for t in syndrome_order(m):
        others = [sectors[u] for u in syndrome_order(m) if u != t and sectors[u].dim]
        own = [Subspace(code.dim, images[owners[t]])] if t in owners else []
        blocked = direct_sum(others + own) if others + own else Subspace(code.dim, np.zeros((code.dim, 0)))
        need = target - (k if t in owners else 0)
        chunk = complement_vectors(blocked, count=need)
        if len(chunk) < need:
            raise InsufficientSpace(f"sector {format_signature(t)} supplies {len(chunk)} of {need} directions")
        cols = ([images[owners[t]]] if t in owners else []) + ([np.column_stack(chunk)] if chunk else [])
        frames[t] = np.hstack(cols)

    logger.info(f"Syndrome table ({mode}, observable padding): {2 ** m} spaces of dimension {target}")
    return _finish(code, fam, syndrome_map, m, frames, mode, code.ambient.truncated, None, tol)


def table_from_spaces(code: QuantumCode, fam: OrthonormalFamily, syndrome_map: dict[int, SignatureTuple],
                      m: int, spaces: dict[SignatureTuple, Subspace], mode: str,
                      truncation_proxy: bool = False,
                      labels: Optional[dict[SignatureTuple, list[str]]] = None,
                      tol: float = settings.TOLERANCE) -> SyndromeTable:
    """Wrap externally built syndrome spaces, re-framed so F_(t) H_C comes first"""
    images = family_images(code, fam)
    owners = {t: idx for idx, t in syndrome_map.items()}
    frames = {}
    for t in syndrome_order(m):
        if t not in spaces:
            raise TableInvalid(f"no space given for syndrome {format_signature(t)}")
        if t in owners:
            frames[t] = _anchored(images[owners[t]], spaces[t], max(tol, 1e-8))
        else:
            frames[t] = spaces[t].frame
    return _finish(code, fam, syndrome_map, m, frames, mode, truncation_proxy, labels, tol)


def table_from_stabilizers(code: QuantumCode, fam: OrthonormalFamily, stabilizers: Sequence[np.ndarray],
                           tol: float = settings.TOLERANCE) -> SyndromeTable:
    """
    Syndrome table whose spaces are the joint eigenspaces of given stabilizers

    Each member's syndrome is read off from how the stabilizers act on
    F H_C; a member without a definite syndrome, or two members sharing one,
    is rejected.
    """
    m = len(stabilizers)
    syndrome_map = syndromes_from_observables(code, fam, stabilizers, tol)
    spaces = joint_eigenspaces(stabilizers, code.dim, tol)
    dims = {s.dim for s in spaces.values()}
    mode = 'extended_full' if len(dims) == 1 and sum(s.dim for s in spaces.values()) == code.dim else 'minimal'
    return table_from_spaces(code, fam, syndrome_map, m, spaces, mode, code.ambient.truncated, None, tol)


def syndromes_from_observables(code: QuantumCode, fam: OrthonormalFamily, observables: Sequence[np.ndarray],
                               tol: float = settings.TOLERANCE) -> dict[int, SignatureTuple]:
    """
    Syndrome of each member read off from how the observables act on F H_C

    Raises:
        NotCorrectable: a member has no definite syndrome, or two members share one
    """
    images = family_images(code, fam)
    syndrome_map: dict[int, SignatureTuple] = {}
    for idx, img in enumerate(images):
        t = []
        for s in observables:
            value = np.trace(dagger(img) @ s @ img).real / code.k
            sign = 1 if value > 0 else -1
            if max_abs(s @ img - sign * img) > max(tol, 1e-8):
                raise NotCorrectable(f"'{fam.names[idx]}' does not carry a definite syndrome")
            t.append(sign)
        t = tuple(t)
        if t in syndrome_map.values():
            raise NotCorrectable(f"'{fam.names[idx]}' shares syndrome {format_signature(t)}")
        syndrome_map[idx] = t
    return syndrome_map


def validate_table(table: SyndromeTable, code: QuantumCode, fam: OrthonormalFamily,
                   tol: float = settings.TOLERANCE) -> None:
    """
    Check completeness, orthogonality, equal dimensions and containment

    Raises:
        TableInvalid: naming the first violated property
    """
    order = syndrome_order(table.m)
    if set(table.entries) != set(order):
        raise TableInvalid("syndrome table does not cover every tuple")
    dims = {table.entries[t].space.dim for t in order}
    if len(dims) != 1:
        raise TableInvalid(f"syndrome spaces have unequal dimensions {sorted(dims)}")
    check_tol = max(tol, 1e-8)
    frame = np.hstack([table.entries[t].space.frame for t in order])
    if max_abs(dagger(frame) @ frame - np.eye(frame.shape[1])) > check_tol:
        raise TableInvalid("syndrome spaces are not orthonormal and mutually orthogonal")

    c = code.code_frame.frame
    trivial = (1,) * table.m
    if not _contains_columns(table.entries[trivial].space.frame, c, check_tol):
        raise TableInvalid("code space is not inside H_(1,...,1)")
    for idx, t in table.syndrome_map.items():
        img = fam.members[idx] @ c
        if not _contains_columns(table.entries[t].space.frame, img, check_tol):
            raise TableInvalid(f"F H_C for '{fam.names[idx]}' is not inside H{format_signature(t)}")


def domain_of(table: SyndromeTable) -> Subspace:
    """H' as the concatenation of all syndrome frames in binary-counting order"""
    frames = [table.entries[t].space.frame for t in syndrome_order(table.m)]
    return Subspace(frames[0].shape[0], np.hstack(frames))


def signed_projector(table: SyndromeTable, i: int) -> np.ndarray:
    """sum_t t_i Pi(H_(t))"""
    result = None
    for t in syndrome_order(table.m):
        p = t[i] * projector(table.entries[t].space)
        result = p if result is None else result + p
    return result
