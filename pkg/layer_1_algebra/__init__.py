"""
Layer 1: Algebra
- Dense subspace calculus (orthonormal bases, projectors, eigensplits, unitary completion)
- GF(2) linear algebra for symplectic vectors
- n-qubit Pauli algebra with exact phases
"""
from .linalg import (
    involution_eigensplit,
    involution_kind,
    orthonormal_basis,
    projector,
    unitary_extend,
)
from .pauli import (
    comm_signature,
    format_pauli,
    mul,
    parse_pauli,
    signature_product,
    stabilized_state,
    subgroup_analysis,
    to_matrix,
    weight,
)

__all__ = [
    'involution_eigensplit',
    'involution_kind',
    'orthonormal_basis',
    'projector',
    'unitary_extend',
    'comm_signature',
    'format_pauli',
    'mul',
    'parse_pauli',
    'signature_product',
    'stabilized_state',
    'subgroup_analysis',
    'to_matrix',
    'weight',
]
