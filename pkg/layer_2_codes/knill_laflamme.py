"""
Knill-Laflamme correctability, detectability classes and orthonormal error families

All inner products are taken in the code metric
    <E, F> = tr(Pi_C E^dagger F Pi_C) / dim(H_C)
computed on the code frame C as tr(C^dagger E^dagger F C) / k.
"""
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from config.settings import settings
from layer_1_algebra.linalg import dagger, is_unitary, max_abs, operator_norm, require_square
from models.algebra import Subspace
from models.code import OrthonormalFamily, QuantumCode
from utils.errors import DimensionMismatch, NotCorrectable, NotUnitary
from utils.logger import get_logger

logger = get_logger(__name__)


def normalize_errors(errors: Sequence[np.ndarray], names: Sequence[str]) -> list[np.ndarray]:
    """Rescale errors whose spectral norm exceeds settings.MAX_OPERATOR_NORM to unit norm"""
    scaled = []
    for e, name in zip(errors, names):
        norm = operator_norm(e)
        if norm > settings.MAX_OPERATOR_NORM:
            logger.warning(f"Error '{name}' has operator norm {norm:.4g}; rescaled to 1")
            e = e / norm
        scaled.append(e)
    return scaled


def kl_matrix(code: QuantumCode, errors: Sequence[np.ndarray],
              tol: float = settings.TOLERANCE) -> tuple[np.ndarray, bool]:
    """
    Test Pi_C E^dagger F Pi_C = alpha_EF Pi_C for every pair of errors

    Args:
        code: The code whose frame defines Pi_C
        errors: Operators on the ambient space (need not be unitary)
        tol: Max-entry tolerance on each k x k block

    Returns:
        (alpha, correctable); alpha is the Hermitian matrix of block traces / k,
        returned even when the condition fails
    """
    c = code.code_frame.frame
    k = code.k
    images = []
    for e in errors:
        e = require_square(e, code.dim, "error")
        images.append(e @ c)

    size = len(images)
    alpha = np.zeros((size, size), dtype=complex)
    correctable = True
    for i in range(size):
        for j in range(i, size):
            block = dagger(images[i]) @ images[j]
            a = np.trace(block) / k
            alpha[i, j] = a
            alpha[j, i] = np.conj(a)
            if max_abs(block - a * np.eye(k)) > tol:
                correctable = False
    alpha = (alpha + dagger(alpha)) / 2
    return alpha, correctable


def detect_classify(code: QuantumCode, e: np.ndarray, tol: float = settings.TOLERANCE) -> dict:
    """
    Classify a unitary error by Pi_C E Pi_C = a Pi_C

    Returns:
        dict with ``category`` one of orthogonal_image, identity_on_code,
        oblique, undetectable; ``a`` as [re, im]; ``theta`` = arg(a) for
        identity_on_code

    Raises:
        NotUnitary: E is not unitary within tol
    """
    e = require_square(e, code.dim, "error")
    if not is_unitary(e, tol):
        raise NotUnitary("detect_classify needs a unitary operator")
    c = code.code_frame.frame
    block = dagger(c) @ e @ c
    a = np.trace(block) / code.k
    result = {'a': [float(a.real), float(a.imag)], 'theta': None}

    if max_abs(block - a * np.eye(code.k)) > tol:
        result['category'] = 'undetectable'
    elif abs(a) <= tol:
        result['category'] = 'orthogonal_image'
    elif abs(abs(a) - 1) <= tol:
        result['category'] = 'identity_on_code'
        result['theta'] = float(np.angle(a))
    else:
        result['category'] = 'oblique'
    return result


def orthonormalize_errors(code: QuantumCode, tol: float = settings.TOLERANCE) -> OrthonormalFamily:
    """
    Build the orthonormal family F from the declared errors

    The identity comes first. Declared errors are then processed in order by
    Gram-Schmidt in the code metric; an error whose residual norm is below
    tol * dim(H_C) is merged into the existing members it overlaps, the
    earliest member staying the representative.

    Raises:
        NotCorrectable: Knill-Laflamme fails on {I} plus the declared errors
    """
    identity = np.eye(code.dim, dtype=complex)
    errors = normalize_errors(code.declared_errors, code.error_names)
    _, correctable = kl_matrix(code, [identity] + list(errors), tol)
    if not correctable:
        raise NotCorrectable(
            f"Knill-Laflamme condition fails for the declared errors of '{code.name}'"
        )

    c = code.code_frame.frame
    k = code.k
    threshold = tol * k * settings.DEGENERACY_SCALE

    members = [identity]
    images = [c.copy()]
    names = ['I']
    provenance: dict[int, list[int]] = {0: []}

    for idx, (e, name) in enumerate(zip(errors, code.error_names)):
        residual_op = e.copy()
        residual_img = e @ c
        overlaps = []
        for f, f_img in zip(members, images):
            coeff = np.trace(dagger(f_img) @ residual_img) / k
            overlaps.append(coeff)
            residual_op = residual_op - coeff * f
            residual_img = residual_img - coeff * f_img
        norm = np.sqrt(max(np.trace(dagger(residual_img) @ residual_img).real / k, 0.0))

        if norm < threshold:
            targets = [j for j, ov in enumerate(overlaps) if abs(ov) > tol] or [0]
            for j in targets:
                provenance[j].append(idx)
            logger.info(f"Error '{name}' acts within the span of existing members {targets}; merged")
            continue

        members.append(residual_op / norm)
        images.append(residual_img / norm)
        names.append(name)
        provenance[len(members) - 1] = [idx]

    logger.info(f"Orthonormal family for '{code.name}': {len(members)} members from {len(errors)} errors")
    return OrthonormalFamily(
        members=tuple(members),
        names=tuple(names),
        provenance={i: tuple(v) for i, v in provenance.items()},
    )


def family_images(code: QuantumCode, fam: OrthonormalFamily) -> list[np.ndarray]:
    """F C for every member, polished to exact isometries by polar decomposition"""
    c = code.code_frame.frame
    images = []
    for f in fam.members:
        img = f @ c
        u, _ = scipy.linalg.polar(img, side='right')
        images.append(u)
    return images


def error_span_space(code: QuantumCode, fam: OrthonormalFamily) -> Subspace:
    """The orthogonal direct sum of F H_C over the family; dimension |F| dim(H_C)"""
    frame = np.hstack(family_images(code, fam))
    return Subspace(code.dim, frame)


def check_family(code: QuantumCode, fam: OrthonormalFamily, tol: float = settings.TOLERANCE) -> bool:
    """Pi_C F^dagger G Pi_C = delta_FG Pi_C for all members"""
    alpha, correctable = kl_matrix(code, fam.members, tol)
    return correctable and max_abs(alpha - np.eye(len(fam))) <= tol


def transform_code(code: QuantumCode, v: np.ndarray, name: Optional[str] = None) -> QuantumCode:
    """
    The code V H_C with errors V E V^dagger

    Its Paulian stabilizers are the V-conjugates of those of ``code``.
    """
    v = require_square(v, code.dim, "transform")
    if not is_unitary(v):
        raise NotUnitary("transform_code needs a unitary")
    if v.shape[0] != code.code_frame.ambient_dim:
        raise DimensionMismatch("transform does not act on the code's ambient space")
    frame = Subspace(code.dim, v @ code.code_frame.frame)
    errors = tuple(v @ e @ dagger(v) for e in code.declared_errors)
    return QuantumCode(code.ambient, frame, errors, code.error_names,
                       name or f"{code.name}-transformed", code.distance)
