"""
Layer 3: Synthesis (capacity, syndrome spaces, encoder, Paulian generators, CWS pipeline).
"""
from .capacity import capacity_plan
from .syndrome_table import assign_syndromes, build_syndrome_table, table_from_spaces, table_from_stabilizers, validate_table
from .encoder import build_encoder
from .paulian import check_group_relations, derive_generators, detectable_report, pauli_form, verify_paulian
from .cws_pipeline import cws_stabilizers, fill_syndrome_spaces, select_orthonormal_paulis, signature_decompose
from .synthesize import PaulianSynthesizer

__all__ = [
    'capacity_plan',
    'assign_syndromes',
    'build_syndrome_table',
    'table_from_spaces',
    'table_from_stabilizers',
    'validate_table',
    'build_encoder',
    'check_group_relations',
    'derive_generators',
    'detectable_report',
    'pauli_form',
    'verify_paulian',
    'cws_stabilizers',
    'fill_syndrome_spaces',
    'select_orthonormal_paulis',
    'signature_decompose',
    'PaulianSynthesizer',
]
