"""
Synthesis results: capacity plans, syndrome tables, Paulian groups and
word-stabilizer signature plans
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from models.algebra import SignatureTuple, Subspace
from models.code import OrthonormalFamily
from models.complex_json import encode_matrix


def syndrome_order(m: int) -> list[SignatureTuple]:
    """
    All 2^m tuples in binary-counting order

    Component 1 is the most significant bit and +1 encodes 0, so the list
    starts at (1, ..., 1) and ends at (-1, ..., -1).
    """
    tuples = []
    for b in range(2 ** m):
        tuples.append(tuple(1 if (b >> (m - 1 - i)) & 1 == 0 else -1 for i in range(m)))
    return tuples


def syndrome_index(t: SignatureTuple) -> int:
    """Position of ``t`` in syndrome_order(len(t))"""
    index = 0
    for c in t:
        index = (index << 1) | (1 if c == -1 else 0)
    return index


def format_signature(t: SignatureTuple) -> str:
    return '(' + ','.join('1' if c == 1 else '-1' for c in t) + ')'


@dataclass(frozen=True)
class CapacityPlan:
    family_size: int
    m: int
    mode: str  # "floor" | "ceil"
    feasible_full: bool
    dim_code: int
    dim_ambient: Optional[int]
    bound_fcos: Optional[int] = None

    @property
    def used_family_size(self) -> int:
        """|F'|: every member in ceil mode, the first 2^m in floor mode"""
        return self.family_size if self.mode == 'ceil' else 2 ** self.m

    @property
    def excess_syndromes(self) -> int:
        return 2 ** self.m - self.used_family_size

    def to_dict(self) -> dict:
        return {
            'family_size': self.family_size,
            'm': self.m,
            'mode': self.mode,
            'feasible_full': self.feasible_full,
            'dim_code': self.dim_code,
            'dim_ambient': self.dim_ambient,
            'bound_fcos': self.bound_fcos,
            'used_family_size': self.used_family_size,
            'excess_syndromes': self.excess_syndromes,
        }


@dataclass(frozen=True, eq=False)
class SyndromeEntry:
    space: Subspace
    error_index: Optional[int] = None


@dataclass(frozen=True, eq=False)
class SyndromeTable:
    """
    Bijection from syndromes (t) to syndrome spaces H_(t)

    For an assigned syndrome the first dim(H_C) frame columns are
    F_(t) applied to the code frame, in code-frame order; padding follows.
    """

    m: int
    entries: dict[SignatureTuple, SyndromeEntry]
    syndrome_map: dict[int, SignatureTuple]
    mode: str
    code_dim: int
    truncation_proxy: bool = False
    labels: dict[SignatureTuple, list[str]] = field(default_factory=dict)

    @property
    def syndromes(self) -> list[SignatureTuple]:
        return syndrome_order(self.m)

    @property
    def space_dim(self) -> int:
        """k': the common dimension of every syndrome space"""
        return self.entries[self.syndromes[0]].space.dim

    @property
    def excess(self) -> list[SignatureTuple]:
        return [t for t in self.syndromes if self.entries[t].error_index is None]

    def error_for(self, t: SignatureTuple) -> Optional[int]:
        return self.entries[t].error_index

    def to_dict(self, names: Optional[tuple[str, ...]] = None) -> dict:
        rows = []
        for t in self.syndromes:
            entry = self.entries[t]
            error = None
            if entry.error_index is not None:
                error = names[entry.error_index] if names else entry.error_index
            rows.append({
                'syndrome': list(t),
                'dim': entry.space.dim,
                'error': error,
                'labels': self.labels.get(t, []),
            })
        return {
            'm': self.m,
            'mode': self.mode,
            'space_dim': self.space_dim,
            'truncation_proxy': self.truncation_proxy,
            'syndromes': rows,
        }


@dataclass(frozen=True)
class PaulianReport:
    kind: str  # "involution" | "counterinvolution" | "neither"
    unitary: bool
    eig_dims: tuple[int, int]
    isomorphic: bool
    truncation_proxy: bool = False

    @property
    def paulian(self) -> bool:
        return self.kind != 'neither' and self.unitary and self.isomorphic

    def to_dict(self) -> dict:
        return {
            'kind': self.kind,
            'unitary': self.unitary,
            'eig_dims': list(self.eig_dims),
            'isomorphic': self.isomorphic,
            'paulian': self.paulian,
            'truncation_proxy': self.truncation_proxy,
        }


@dataclass(frozen=True, eq=False)
class PaulianGroup:
    """
    Generators Z_i^S, X_i^S as ambient matrices (zero outside the domain H')

    ``encoder`` is U: H' -> H_ref (x) (C^2)^m written as a (k' 2^m) x N matrix.
    """

    domain: Subspace
    z_gens: tuple[np.ndarray, ...]
    x_gens: tuple[np.ndarray, ...]
    encoder: np.ndarray
    certification: tuple[PaulianReport, ...] = ()
    pauli_forms: tuple[Optional[str], ...] = ()
    relations: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.z_gens)

    def to_dict(self, include_matrices: bool = False) -> dict:
        data = {
            'm': self.m,
            'domain_dim': self.domain.dim,
            'certification': [r.to_dict() for r in self.certification],
            'pauli_forms': list(self.pauli_forms),
            'relations': self.relations,
        }
        if include_matrices:
            data['z_gens'] = [encode_matrix(z) for z in self.z_gens]
            data['x_gens'] = [encode_matrix(x) for x in self.x_gens]
        return data


@dataclass(eq=False)
class SignaturePlan:
    """
    Word-stabilizer signatures: W_F per family member, spares W_perp and the
    per-syndrome fills W_(t)
    """

    member_signatures: dict[int, list[SignatureTuple]]
    spares: list[SignatureTuple]
    fills: dict[SignatureTuple, list[SignatureTuple]] = field(default_factory=dict)
    spare_allotment: dict[SignatureTuple, list[SignatureTuple]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'member_signatures': {str(i): [list(s) for s in sigs] for i, sigs in self.member_signatures.items()},
            'spares': [list(s) for s in self.spares],
            'spare_allotment': {format_signature(t): [list(s) for s in sigs]
                                for t, sigs in self.spare_allotment.items()},
        }


@dataclass(eq=False)
class SynthesisResult:
    """Everything one synthesis run produced, in pipeline order"""

    code_name: str
    family: OrthonormalFamily
    plan: CapacityPlan
    table: SyndromeTable
    group: PaulianGroup
    signature_plan: Optional[SignaturePlan] = None
    degenerate: bool = False
    detectable: list[dict] = field(default_factory=list)

    @property
    def family_names(self) -> tuple[str, ...]:
        return tuple(self.family.names)

    @property
    def provenance(self) -> dict:
        return self.family.provenance

    @property
    def certified(self) -> bool:
        relations = self.group.relations
        return (all(r.paulian for r in self.group.certification)
                and all(relations.get(k, False) for k in ('squares', 'anticommute', 'commute', 'stabilizes_code')))

    def to_dict(self, include_matrices: bool = False) -> dict:
        data = {
            'code': self.code_name,
            'family': list(self.family_names),
            'provenance': {str(i): list(v) for i, v in self.provenance.items()},
            'degenerate': self.degenerate,
            'capacity': self.plan.to_dict(),
            'syndrome_table': self.table.to_dict(self.family_names),
            'group': self.group.to_dict(include_matrices),
            'certified': self.certified,
        }
        if self.signature_plan is not None:
            data['signatures'] = self.signature_plan.to_dict()
        if self.detectable:
            data['detectable'] = self.detectable
        return data
