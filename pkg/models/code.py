"""
Code descriptors: ambient spaces, quantum codes, orthonormal error families,
binary (stabilizer-like) codes and codeword stabilized codes
"""
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from models.algebra import PauliOp, Subspace
from models.complex_json import decode_matrix, encode_matrix, encode_vector


@dataclass(frozen=True)
class AmbientSpace:
    """Either n qubits, or ``modes`` bosonic modes truncated at ``cutoff`` photons each"""

    kind: str  # "qubits" | "fock"
    qubits: int = 0
    modes: int = 0
    cutoff: int = 0

    def __post_init__(self):
        if self.kind not in ('qubits', 'fock'):
            raise ValueError(f"unknown ambient kind '{self.kind}'")
        if self.kind == 'qubits' and self.qubits < 1:
            raise ValueError("qubit ambient needs qubits >= 1")
        if self.kind == 'fock' and (self.modes < 1 or self.cutoff < 0):
            raise ValueError("fock ambient needs modes >= 1 and cutoff >= 0")

    @property
    def dim(self) -> int:
        if self.kind == 'qubits':
            return 2 ** self.qubits
        return (self.cutoff + 1) ** self.modes

    @property
    def truncated(self) -> bool:
        """True when the matrices stand in for an infinite-dimensional space"""
        return self.kind == 'fock'

    @classmethod
    def for_qubits(cls, n: int) -> 'AmbientSpace':
        return cls(kind='qubits', qubits=n)

    @classmethod
    def for_fock(cls, modes: int, cutoff: int) -> 'AmbientSpace':
        return cls(kind='fock', modes=modes, cutoff=cutoff)

    def to_dict(self) -> dict:
        if self.kind == 'qubits':
            return {'kind': 'qubits', 'qubits': self.qubits}
        return {'kind': 'fock', 'modes': self.modes, 'cutoff': self.cutoff}

    @classmethod
    def from_dict(cls, data: dict) -> 'AmbientSpace':
        return cls(**data)


# FockSpace is the bosonic ambient descriptor
FockSpace = AmbientSpace


@dataclass(frozen=True, eq=False)
class QuantumCode:
    """Ambient space, code space H_C, and the declared error operators"""

    ambient: AmbientSpace
    code_frame: Subspace
    declared_errors: tuple[np.ndarray, ...]
    error_names: tuple[str, ...] = ()
    name: str = "code"
    distance: Optional[int] = None

    def __post_init__(self):
        if self.code_frame.dim < 1:
            raise ValueError("code space must have dimension >= 1")
        if self.code_frame.ambient_dim != self.ambient.dim:
            raise ValueError("code frame does not live in the ambient space")
        errors = tuple(np.asarray(e, dtype=complex) for e in self.declared_errors)
        for e in errors:
            if e.shape != (self.ambient.dim, self.ambient.dim):
                raise ValueError(f"error of shape {e.shape} does not act on dimension {self.ambient.dim}")
        object.__setattr__(self, 'declared_errors', errors)
        names = tuple(self.error_names) or tuple(f"E{j}" for j in range(len(errors)))
        if len(names) != len(errors):
            raise ValueError("error_names must match declared_errors")
        object.__setattr__(self, 'error_names', names)

    @property
    def dim(self) -> int:
        return self.ambient.dim

    @property
    def k(self) -> int:
        return self.code_frame.dim

    def with_errors(self, errors, names) -> 'QuantumCode':
        return QuantumCode(self.ambient, self.code_frame, tuple(errors), tuple(names), self.name, self.distance)

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'ambient': self.ambient.to_dict(),
            'code_frame': self.code_frame.to_dict(),
            'declared_errors': [encode_matrix(e) for e in self.declared_errors],
            'error_names': list(self.error_names),
            'distance': self.distance,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'QuantumCode':
        return cls(
            ambient=AmbientSpace.from_dict(data['ambient']),
            code_frame=Subspace.from_dict(data['code_frame']),
            declared_errors=tuple(decode_matrix(e) for e in data['declared_errors']),
            error_names=tuple(data['error_names']),
            name=data.get('name', 'code'),
            distance=data.get('distance'),
        )


@dataclass(frozen=True, eq=False)
class OrthonormalFamily:
    """
    The family F: identity first, Pi_C F^dagger G Pi_C = delta_FG Pi_C

    ``provenance`` maps each member index to the declared-error indices it
    represents (several when degenerate errors were merged).
    """

    members: tuple[np.ndarray, ...]
    names: tuple[str, ...]
    provenance: dict[int, tuple[int, ...]] = field(default_factory=dict)
    paulis: Optional[tuple[PauliOp, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'members', tuple(np.asarray(m, dtype=complex) for m in self.members))
        object.__setattr__(self, 'names', tuple(self.names))
        if len(self.names) != len(self.members):
            raise ValueError("names must match members")

    def __len__(self) -> int:
        return len(self.members)

    def truncated(self, size: int) -> 'OrthonormalFamily':
        """First ``size`` members (the F' subset used in floor mode)"""
        paulis = self.paulis[:size] if self.paulis is not None else None
        prov = {i: v for i, v in self.provenance.items() if i < size}
        return OrthonormalFamily(self.members[:size], self.names[:size], prov, paulis)

    def to_dict(self) -> dict:
        return {
            'names': list(self.names),
            'provenance': {str(i): list(v) for i, v in self.provenance.items()},
            'members': [encode_matrix(m) for m in self.members],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'OrthonormalFamily':
        return cls(
            members=tuple(decode_matrix(m) for m in data['members']),
            names=tuple(data['names']),
            provenance={int(i): tuple(v) for i, v in data.get('provenance', {}).items()},
        )


Operator = Union[PauliOp, np.ndarray]


@dataclass(frozen=True, eq=False)
class BinaryCode:
    """
    [[n, k]] code given by n - k commuting Paulian stabilizers and k logical pairs

    Operators are PauliOp when they are Pauli operators and dense matrices
    otherwise. ``distance_bound`` is a declared lower bound, never computed.
    """

    n: int
    k: int
    stabilizers: tuple[Operator, ...]
    logical_x: tuple[Operator, ...]
    logical_z: tuple[Operator, ...]
    name: str = "binary"
    distance_bound: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'stabilizers', tuple(self.stabilizers))
        object.__setattr__(self, 'logical_x', tuple(self.logical_x))
        object.__setattr__(self, 'logical_z', tuple(self.logical_z))
        if len(self.logical_x) != self.k or len(self.logical_z) != self.k:
            raise ValueError("need one X and one Z logical operator per logical qubit")

    @property
    def all_pauli(self) -> bool:
        ops = self.stabilizers + self.logical_x + self.logical_z
        return all(isinstance(op, PauliOp) for op in ops)


@dataclass(frozen=True, eq=False)
class CwsCode:
    """Codeword stabilized code: word stabilizer g, word operators W, base state |s>"""

    n: int
    word_stabilizer: tuple[PauliOp, ...]
    word_operators: tuple[PauliOp, ...]
    base_state: np.ndarray
    code: QuantumCode

    def to_dict(self) -> dict:
        from layer_1_algebra.pauli import format_pauli
        return {
            'n': self.n,
            'word_stabilizer': [format_pauli(g) for g in self.word_stabilizer],
            'word_operators': [format_pauli(w) for w in self.word_operators],
            'base_state': encode_vector(self.base_state),
        }
