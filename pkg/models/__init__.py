"""
Data models and schemas
"""
from .algebra import PauliGroup, PauliOp, SignatureTuple, Subspace, make_signature
from .code import AmbientSpace, BinaryCode, CwsCode, FockSpace, OrthonormalFamily, QuantumCode
from .measurement import AncillaCircuit, MonteCarloStats, TrialRecord
from .synthesis import (
    CapacityPlan,
    PaulianGroup,
    PaulianReport,
    SignaturePlan,
    SyndromeEntry,
    SyndromeTable,
    format_signature,
    syndrome_index,
    syndrome_order,
)

__all__ = [
    'PauliGroup',
    'PauliOp',
    'SignatureTuple',
    'Subspace',
    'make_signature',
    'AmbientSpace',
    'BinaryCode',
    'CwsCode',
    'FockSpace',
    'OrthonormalFamily',
    'QuantumCode',
    'AncillaCircuit',
    'MonteCarloStats',
    'TrialRecord',
    'CapacityPlan',
    'PaulianGroup',
    'PaulianReport',
    'SignaturePlan',
    'SyndromeEntry',
    'SyndromeTable',
    'format_signature',
    'syndrome_index',
    'syndrome_order',
]
