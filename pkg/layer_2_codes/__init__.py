"""
Layer 2: Codes (Knill-Laflamme analysis, bosonic, repetition, concatenated and CWS codes).
"""
from .knill_laflamme import (
    detect_classify,
    error_span_space,
    kl_matrix,
    orthonormalize_errors,
    transform_code,
)
from .bosonic import binomial_code, fock_operator, two_mode_code
from .repetition import generalized_repetition, normal_decompose, repetition_code, stabilizer_code
from .concatenation import concat, concat_codewords, substitute_logicals
from .cws_code import build_cws_code, nondegeneracy_check, stabilizes_code

__all__ = [
    'detect_classify',
    'error_span_space',
    'kl_matrix',
    'orthonormalize_errors',
    'transform_code',
    'binomial_code',
    'fock_operator',
    'two_mode_code',
    'generalized_repetition',
    'normal_decompose',
    'repetition_code',
    'stabilizer_code',
    'concat',
    'concat_codewords',
    'substitute_logicals',
    'build_cws_code',
    'nondegeneracy_check',
    'stabilizes_code',
]
