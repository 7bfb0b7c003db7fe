"""
Dense complex matrix arithmetic and subspace calculus

Every construction here is deterministic: spans are built in input order and
complements are completed in ascending standard-basis order, so repeated runs
produce identical frames.
"""
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from config.settings import settings
from models.algebra import Subspace
from utils.errors import (
    DimensionMismatch,
    InvalidInput,
    NotAnInvolution,
    NotIsometry,
    NotSelfAdjoint,
)
from utils.logger import get_logger

logger = get_logger(__name__)


def max_abs(a: np.ndarray) -> float:
    """Max-entry norm; 0 for empty arrays"""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def require_finite(a: np.ndarray, what: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(a)):
        raise InvalidInput(f"{what} contains NaN or Inf entries")
    return a


def require_square(a: np.ndarray, dim: Optional[int] = None, what: str = "operator") -> np.ndarray:
    a = require_finite(a, what)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{what} must be square, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise DimensionMismatch(f"{what} acts on dimension {a.shape[0]}, expected {dim}")
    return a


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def is_unitary(a: np.ndarray, tol: float = settings.TOLERANCE) -> bool:
    a = np.asarray(a)
    return max_abs(dagger(a) @ a - np.eye(a.shape[1])) <= tol


def operator_norm(a: np.ndarray) -> float:
    a = np.asarray(a)
    return float(np.linalg.norm(a, 2)) if a.size else 0.0


def orthonormal_basis(vectors: Sequence[np.ndarray], tol: float = settings.TOLERANCE,
                      ambient_dim: Optional[int] = None) -> Subspace:
    """
    Orthonormal frame for the span of ``vectors``

    Modified Gram-Schmidt in input order with one re-orthogonalization pass;
    a vector whose residual norm falls below ``tol`` is treated as dependent.

    Args:
        vectors: Ambient vectors (1-d arrays) or the columns of a 2-d array
        tol: Residual threshold, must be positive
        ambient_dim: Required when ``vectors`` is empty

    Returns:
        Subspace spanned by the inputs
    """
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        vectors = [vectors[:, j] for j in range(vectors.shape[1])]
    vectors = [require_finite(v, "vector").ravel() for v in vectors]

    if not vectors:
        if ambient_dim is None:
            raise InvalidInput("ambient_dim is required for an empty vector list")
        return Subspace(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex))

    dims = {v.shape[0] for v in vectors}
    if len(dims) != 1 or (ambient_dim is not None and dims != {ambient_dim}):
        raise DimensionMismatch(f"vectors have inconsistent dimensions {sorted(dims)}")
    n = dims.pop()

    basis: list[np.ndarray] = []
    for v in vectors:
        w = v.copy()
        for _ in range(2):
            for b in basis:
                w = w - (np.vdot(b, w)) * b
        norm = np.linalg.norm(w)
        if norm >= tol:
            basis.append(w / norm)

    frame = np.column_stack(basis) if basis else np.zeros((n, 0), dtype=complex)
    return Subspace(n, frame)


def projector(s: Subspace) -> np.ndarray:
    """Orthogonal projector frame * frame^dagger"""
    return s.frame @ dagger(s.frame)


def direct_sum(spaces: Sequence[Subspace]) -> Subspace:
    """Concatenate frames of mutually orthogonal subspaces"""
    if not spaces:
        raise InvalidInput("direct_sum needs at least one subspace")
    n = spaces[0].ambient_dim
    if any(s.ambient_dim != n for s in spaces):
        raise DimensionMismatch("subspaces live in different ambient spaces")
    return Subspace(n, np.hstack([s.frame for s in spaces]))


def contains(outer: Subspace, inner: Subspace, tol: float = settings.TOLERANCE) -> bool:
    """True when every column of inner lies in outer"""
    if inner.dim == 0:
        return True
    residual = inner.frame - projector(outer) @ inner.frame
    return max_abs(residual) <= tol


def same_subspace(a: Subspace, b: Subspace, tol: float = settings.TOLERANCE) -> bool:
    return a.dim == b.dim and max_abs(projector(a) - projector(b)) <= tol


def complement_vectors(occupied: Subspace, count: Optional[int] = None,
                       candidates: Optional[Subspace] = None) -> list[np.ndarray]:
    """
    Orthonormal vectors orthogonal to ``occupied``

    Candidates (standard basis vectors by default, else the columns of
    ``candidates``) are projected off the current span in ascending order and
    accepted while their residual is at least 0.5/sqrt(N). That threshold
    guarantees the accepted vectors span the whole complement.

    Args:
        occupied: Subspace to avoid
        count: Stop after this many vectors (all of the complement when None)
        candidates: Restrict the search to this subspace

    Returns:
        List of orthonormal ambient vectors
    """
    n = occupied.ambient_dim
    threshold = 0.5 / np.sqrt(n)
    span = np.zeros((n, n), dtype=complex)
    r = occupied.dim
    span[:, :r] = occupied.frame
    found: list[np.ndarray] = []

    if candidates is None:
        pool = (np.eye(n, dtype=complex)[:, j] for j in range(n))
    else:
        pool = (candidates.frame[:, j] for j in range(candidates.dim))

    for v in pool:
        if (count is not None and len(found) >= count) or r >= n:
            break
        basis = span[:, :r]
        w = v - basis @ (dagger(basis) @ v)
        w = w - basis @ (dagger(basis) @ w)
        norm = np.linalg.norm(w)
        if norm >= threshold:
            w = w / norm
            span[:, r] = w
            r += 1
            found.append(w)
    return found


def complement(occupied: Subspace) -> Subspace:
    vecs = complement_vectors(occupied)
    return orthonormal_basis(vecs, ambient_dim=occupied.ambient_dim)


def involution_kind(p: np.ndarray, tol: float = settings.TOLERANCE) -> dict:
    """
    Classify an operator against the involution properties

    For an involution, being normal, self-adjoint and unitary are equivalent;
    the report lets callers check that equivalence on arbitrary input.
    """
    p = require_square(p)
    eye = np.eye(p.shape[0])
    return {
        'involution': max_abs(p @ p - eye) <= tol,
        'counterinvolution': max_abs(p @ p + eye) <= tol,
        'normal': max_abs(dagger(p) @ p - p @ dagger(p)) <= tol,
        'self_adjoint': max_abs(p - dagger(p)) <= tol,
        'unitary': max_abs(dagger(p) @ p - eye) <= tol,
    }


def _range_frame(m: np.ndarray, rank: int) -> np.ndarray:
    """Orthonormal basis of range(m) by column-pivoted QR truncated at ``rank``"""
    n = m.shape[0]
    if rank == 0:
        return np.zeros((n, 0), dtype=complex)
    q, _, _ = scipy.linalg.qr(m, pivoting=True, mode='economic')
    return q[:, :rank]


def involution_eigensplit(p: np.ndarray, tol: float = settings.TOLERANCE) -> tuple[Subspace, Subspace]:
    """
    Split a self-adjoint involution into its +1 and -1 eigenspaces

    The ranges of (I+P)/2 and (I-P)/2 are orthonormalized with a rank-revealing
    QR whose rank is the (integer) trace of each projector.

    Raises:
        NotSelfAdjoint: ||P - P^dagger|| > tol
        NotAnInvolution: ||P^2 - I|| > tol
    """
    p = require_square(p)
    n = p.shape[0]
    if max_abs(p - dagger(p)) > tol:
        raise NotSelfAdjoint("operator is not self-adjoint")
    if max_abs(p @ p - np.eye(n)) > tol:
        raise NotAnInvolution("operator does not square to the identity")

    plus_proj = (np.eye(n) + p) / 2
    minus_proj = (np.eye(n) - p) / 2
    r_plus = int(round(float(np.trace(plus_proj).real)))
    r_plus = min(max(r_plus, 0), n)
    plus = Subspace(n, _range_frame(plus_proj, r_plus))
    minus = Subspace(n, _range_frame(minus_proj, n - r_plus))
    return plus, minus


def unitary_extend(partial: np.ndarray, domain: Subspace, tol: float = settings.TOLERANCE) -> np.ndarray:
    """
    Extend an isometry on ``domain`` to a unitary on the ambient space

    The complement of the domain and the complement of the image are each
    enumerated in ascending standard-basis order and matched in order.

    Args:
        partial: Ambient matrix whose action on the domain frame is the isometry
        domain: Subspace on which ``partial`` is defined

    Returns:
        Unitary U with U @ domain.frame == partial @ domain.frame

    Raises:
        DimensionMismatch: shapes disagree or the image is smaller than the domain
        NotIsometry: partial is not norm-preserving on the domain
    """
    partial = require_square(partial, domain.ambient_dim, "partial map")
    image = partial @ domain.frame
    gram = dagger(image) @ image
    rank = np.linalg.matrix_rank(image, tol=max(tol, 1e-12)) if image.size else 0
    if rank != domain.dim:
        raise DimensionMismatch(f"image dimension {rank} differs from domain dimension {domain.dim}")
    if max_abs(gram - np.eye(domain.dim)) > tol:
        raise NotIsometry("partial map is not an isometry on its domain")

    n = domain.ambient_dim
    image_space = Subspace(n, image)
    dom_c = complement_vectors(domain)
    img_c = complement_vectors(image_space)
    u = image @ dagger(domain.frame)
    for a, b in zip(dom_c, img_c):
        u = u + np.outer(b, np.conj(a))
    return u


def restrict(op: np.ndarray, domain: Subspace) -> np.ndarray:
    """Matrix of op compressed to domain: frame^dagger op frame"""
    return dagger(domain.frame) @ op @ domain.frame


def is_invariant(op: np.ndarray, domain: Subspace, tol: float = settings.TOLERANCE) -> bool:
    """True when op maps domain into itself"""
    image = op @ domain.frame
    return max_abs(image - projector(domain) @ image) <= tol


def polar_isometry(a: np.ndarray) -> np.ndarray:
    """Unitary factor of the polar decomposition a = u p"""
    u, _ = scipy.linalg.polar(a, side='right')
    return u
